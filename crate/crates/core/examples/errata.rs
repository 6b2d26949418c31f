//! The three corrections to older outcome tables.

use domineering::workbench::errata_suite;

fn main() {
    let report = errata_suite();
    for c in &report.checks {
        println!("{} {}\n    {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
    }
}
