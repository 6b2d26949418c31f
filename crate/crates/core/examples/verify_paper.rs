//! Every golden check, with timings. Pass `--deep` for the slow ones.

use domineering::workbench::verify_paper;

fn main() {
    let deep = std::env::args().any(|a| a == "--deep");
    let report = verify_paper(deep);
    print!("{report}");
    std::process::exit(if report.passed() { 0 } else { 1 });
}
