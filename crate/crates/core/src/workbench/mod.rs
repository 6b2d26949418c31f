//! Files, tables and golden checks on top of the solver and rules.

pub mod derive;
pub mod facts;
pub mod table;
pub mod verify;

pub use derive::value_facts;
pub use facts::{load_bounds, load_facts, parse_bounds, parse_facts, write_facts, BoundFact, FactsError};
pub use table::{mismatches, parse_table, render_table, Mismatch, TableReport};
pub use verify::{derive_table, errata_suite, verify_paper, Check, DeriveError, Report};

/// Data shipped with the crate.
pub mod data {
    /// The published table of outcome classes, as a TSV grid.
    pub const KNOWN_TABLE: &str = include_str!("../../data/known_table.tsv");
    /// Outcome classes found by exhaustive search in earlier work.
    pub const FACTS: &str = include_str!("../../data/facts.csv");
    /// The same facts with 4x13 as the older table recorded it.
    pub const ERRONEOUS_FACTS: &str = include_str!("../../data/facts_erroneous.csv");
    /// Upper bounds on values of a few rectangles.
    pub const BOUNDS: &str = include_str!("../../data/bounds.csv");
    /// 9x7 next to a -1 gadget.
    pub const GADGET: &str = include_str!("../../data/gadget_9x7.txt");
}
