//! The outcome table derived from the shipped facts, checked against the
//! published one.
//!
//! cargo run --release --example outcome_table -- 12 32

use domineering::rules::Schedule;
use domineering::solver::Solver;
use domineering::workbench::verify::{known_table, shipped_bounds, shipped_facts};
use domineering::workbench::{derive_table, render_table};
use domineering::GameStore;

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let (max_m, max_n) = match args[..] {
        [m, n] => (m, n),
        _ => (10, 31),
    };
    let store = GameStore::new();
    let mut solver = Solver::new(&store);
    let bounds = shipped_bounds(&store);
    let t = derive_table(&mut solver, &shipped_facts(), &bounds, max_m, max_n, &Schedule::default()).unwrap();

    let mut report = render_table(&t, max_m, max_n);
    report.compare(&t, &known_table());
    print!("{}", report.tsv);
    println!("{} cells differ from the published table", report.mismatches.len());
    for m in report.mismatches.iter().take(10) {
        println!("  {}x{}: published {:?}, derived {:?}", m.cell.0, m.cell.1, m.expected, m.found);
    }
}
