//! Proving `board <= game` by searching the difference.

use domineering::solver::{Relation, Solver};
use domineering::workbench::verify::gadget_board;
use domineering::{GameStore, Position};

fn main() {
    let store = GameStore::new();
    let mut solver = Solver::new(&store);
    let one = store.integer(1).unwrap();

    let domino = Position::rect(2, 1).unwrap();
    for rel in [Relation::Le, Relation::Ge] {
        println!("2x1 {rel} 1: {}", solver.prove_relation(&domino.clone().into(), one, rel).unwrap());
    }

    let half = store.parse("1/2").unwrap();
    let four = Position::rect(4, 4).unwrap();
    println!("4x4 <= 1/2: {}", solver.prove_relation(&four.into(), half, Relation::Le).unwrap());

    // a bound as a board: 9x7 beside a slot worth -1. Proving it <= 0 is
    // the same as proving 9x7 <= 1, but takes hours, so only print it.
    let g = gadget_board();
    println!("\n{}", g.to_ascii());
}
