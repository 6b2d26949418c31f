//! Outcome constraints spread by the composition rules.

use domineering::rules::{propagate, Fact, FactTable, OutcomeConstraint, Provenance};

fn main() {
    let mut base = FactTable::new();
    let imported = |tag: &str| Provenance::Imported(tag.into());
    base.insert(Fact::new(6, 4, OutcomeConstraint::FIRST, imported("example"))).unwrap();
    base.insert(Fact::new(6, 8, OutcomeConstraint::H, imported("example"))).unwrap();
    base.insert(Fact::new(2, 13, OutcomeConstraint::SECOND, imported("example"))).unwrap();

    let t = propagate(&base, 8, 40).unwrap();
    for (m, n) in [(6, 12), (4, 6), (2, 27), (2, 39)] {
        println!("{m}x{n}: {:<3}", t.get(m, n).code());
        for f in t.history(m, n) {
            println!("    {} by {}", f.constraint, f.provenance);
        }
    }

    // conflicting facts are an error, not a silent overwrite
    let mut bad = t.clone();
    let clash = bad.insert(Fact::new(6, 12, OutcomeConstraint::V, imported("wrong")));
    println!("\n{}", clash.unwrap_err());
}
