//! Outcome classes by search, for rectangles and for sums.
//!
//! cargo run --release --example outcome_search -- 5 10

use domineering::solver::{Solver, SumPosition};
use domineering::{GameStore, Position};

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let (m, n) = match args[..] {
        [m, n] => (m, n),
        _ => (7, 7),
    };
    let store = GameStore::new();
    let mut solver = Solver::new(&store);

    let class = solver.solve_rect_outcome(m, n).unwrap();
    let stats = solver.stats();
    println!("{m}x{n}: {class}  ({} nodes, {} table hits, {:.2?})", stats.nodes, stats.tt_hits, stats.elapsed);

    // a board plus a game: 2x2 is {1|-1}, so adding 1 leaves a first-player win
    let one = store.integer(1).unwrap();
    let sum = SumPosition::board(Position::rect(2, 2).unwrap()).with_game(one);
    println!("2x2 + 1: {}", solver.outcome_class(&sum).unwrap());
}
