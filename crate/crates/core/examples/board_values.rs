//! Exact values of narrow rectangles, and multiples of them.
//!
//! cargo run --release --example board_values -- 15

use domineering::solver::Solver;
use domineering::{GameStore, GameValue, Position};

fn main() {
    let height: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(11);
    let store = GameStore::new();
    let mut solver = Solver::new(&store);

    let v = solver.value_of_position(&Position::rect(height, 2).unwrap()).unwrap();
    println!("|G({height},2)| = {}", store.display(v));
    for k in 2..=9 {
        let kv = store.multiply_int(k, v).unwrap();
        println!("{k} * |G({height},2)| = {:<32} {} 0", store.display(kv), store.compare(kv, GameValue::ZERO));
    }

    let board = Position::from_ascii("..#\n...\n#..\n").unwrap();
    let bv = solver.value_of_position(&board).unwrap();
    println!("\n{}= {}", board.to_ascii(), store.display(bv));
}
