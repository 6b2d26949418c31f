//! Golden checks: exact values, outcome classes, derived table entries,
//! bound proofs and the corrections to older tables.

use std::fmt;
use std::time::{Duration, Instant};

use crate::board::Position;
use crate::cgt::{Comparison, GameStore, GameValue};
use crate::rules::{
    propagate_with, Contradiction, Fact, FactTable, OutcomeConstraint, Provenance, RuleKind,
    Schedule,
};
use crate::solver::{Relation, Solver, SolverError, SumPosition};

use super::data;
use super::derive::{value_facts, VALUE_HEIGHTS};
use super::facts::{parse_bounds, parse_facts, BoundFact};
use super::table::parse_table;

/// One line of a report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn suite(&self, suite: &str) -> impl Iterator<Item = &Check> + '_ {
        let suite = suite.to_string();
        self.checks.iter().filter(move |c| c.suite == suite)
    }

    /// The report without timings, for comparing runs.
    pub fn verdicts(&self) -> Vec<(&'static str, String, bool, String)> {
        self.checks
            .iter()
            .map(|c| (c.suite, c.name.clone(), c.passed, c.detail.clone()))
            .collect()
    }

    fn run(&mut self, suite: &'static str, name: impl Into<String>, f: impl FnOnce() -> Result<(bool, String), String>) {
        let start = Instant::now();
        let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(Check {
            suite,
            name: name.into(),
            passed,
            detail,
            elapsed: start.elapsed(),
        });
    }

    fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "{verdict}\t{}\t{}\t{}\t{:.3}s",
                c.suite,
                c.name,
                c.detail,
                c.elapsed.as_secs_f64()
            )?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

/// Why a derived table could not be built.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeriveError {
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Contradiction(#[from] Contradiction),
}

pub fn shipped_facts() -> FactTable {
    parse_facts(data::FACTS).expect("shipped facts parse")
}

/// The older table with the 4x13 entry as it was first transcribed.
pub fn erroneous_facts() -> FactTable {
    parse_facts(data::ERRONEOUS_FACTS).expect("shipped facts parse")
}

pub fn shipped_bounds(store: &GameStore) -> Vec<BoundFact> {
    parse_bounds(data::BOUNDS, store).expect("shipped bounds parse")
}

/// `facts` plus every value fact, propagated over `max_m x max_n`.
pub fn derive_table(
    solver: &mut Solver<'_>,
    facts: &FactTable,
    bounds: &[BoundFact],
    max_m: usize,
    max_n: usize,
    schedule: &Schedule,
) -> Result<FactTable, DeriveError> {
    let (em, en) = facts.extent();
    let side = max_m.max(max_n).max(em).max(en);
    let mut base = facts.clone();
    for f in value_facts(solver, VALUE_HEIGHTS, bounds, side)? {
        base.insert(f)?;
    }
    Ok(propagate_with(&base, max_m, max_n, schedule)?)
}

/// Every check; `deep` adds the slow boards and the 9x7 bound proof.
pub fn verify_paper(deep: bool) -> Report {
    let store = GameStore::new();
    let mut solver = Solver::new(&store);
    if deep {
        // the 9x7 proof gets a day, however many nodes that takes
        let config = solver.config_mut();
        config.node_budget = u64::MAX;
        config.timeout = Some(Duration::from_secs(24 * 3600));
    }
    let mut report = value_suite(&mut solver);
    report.extend(outcome_suite(&mut solver, &outcome_cells(deep)));
    report.extend(results_suite(&mut solver));
    report.extend(bounds_suite(&mut solver, deep));
    report.extend(errata_suite_with(&mut solver));
    report
}

fn rect(m: usize, n: usize) -> Result<Position, String> {
    Position::rect(m, n).map_err(|e| e.to_string())
}

fn width_two(solver: &mut Solver<'_>, m: usize) -> Result<GameValue, String> {
    solver.value_of_position(&rect(m, 2)?).map_err(|e| e.to_string())
}

const VALUE_GOLDENS: [(usize, &str); 3] = [
    (11, "{1|||1/2|-1||-3/2|-7/2}"),
    (15, "{3|3/2||1|-1/2|||-1}"),
    (19, "{3/2|||1|-1/2||-1|-5/2}"),
];

/// `(height, multiple, printed form, sign against zero)`.
const MULTIPLE_GOLDENS: [(usize, u32, &str, Comparison); 9] = [
    (11, 7, "{2|0||-1/2|-2|||-5/2}", Comparison::Less),
    (11, 14, "{-1/2|-5/2||-3|-9/2}", Comparison::Less),
    (11, 15, "{1/2|-3/2||-2|-7/2|||-4}", Comparison::Less),
    (15, 3, "{3/2|||1|-1/2||-1|-5/2}", Comparison::Confused),
    (15, 5, "{7/2|2||3/2|0|||-1/2}", Comparison::Confused),
    (15, 7, "{2|||3/2|0||-1/2|-2}", Comparison::Confused),
    (15, 9, "{4|5/2||2|1/2|||0}", Comparison::Confused),
    (19, 3, "{4|5/2||2|1/2|||0}", Comparison::Confused),
    (9, 3, "{1|-1||-3/2|-3}", Comparison::Less),
];

pub fn value_suite(solver: &mut Solver<'_>) -> Report {
    let store = solver.store();
    let mut report = Report::default();
    for (m, expected) in VALUE_GOLDENS {
        report.run("values", format!("|G({m},2)|"), || {
            let printed = store.display(width_two(solver, m)?);
            Ok((printed == expected, printed))
        });
    }
    for (m, k, expected, sign) in MULTIPLE_GOLDENS {
        report.run("values", format!("{k}*|G({m},2)|"), || {
            let x = store.multiply_int(k, width_two(solver, m)?).map_err(|e| e.to_string())?;
            let (printed, vs_zero) = (store.display(x), store.compare(x, GameValue::ZERO));
            Ok((printed == expected && vs_zero == sign, format!("{printed} {vs_zero} 0")))
        });
    }
    for (name, bound, k) in [("14*|G(11,2)| + 5/2", "5/2", 14), ("15*|G(11,2)| + {3|2}", "{3|2}", 15)] {
        report.run("values", name, || {
            let b = store.parse(bound).map_err(|e| e.to_string())?;
            let x = store.multiply_int(k, width_two(solver, 11)?).map_err(|e| e.to_string())?;
            let vs_zero = store.compare(store.add(x, b).map_err(|e| e.to_string())?, GameValue::ZERO);
            Ok((vs_zero == Comparison::Less, format!("{vs_zero} 0")))
        });
    }
    for (name, (a, ka), (b, kb)) in [
        ("3*|G(15,2)| = |G(19,2)|", (15, 3), (19, 1)),
        ("3*|G(19,2)| = 9*|G(15,2)|", (19, 3), (15, 9)),
    ] {
        report.run("values", name, || {
            let x = store.multiply_int(ka, width_two(solver, a)?).map_err(|e| e.to_string())?;
            let y = store.multiply_int(kb, width_two(solver, b)?).map_err(|e| e.to_string())?;
            Ok((x == y, format!("handles {} and {}", x.id(), y.id())))
        });
    }
    report
}

/// The boards whose outcome classes are checked by search.
pub fn outcome_cells(deep: bool) -> Vec<(usize, usize)> {
    let mut cells = Vec::new();
    let mut add = |m, n| {
        if !cells.contains(&(m, n)) {
            cells.push((m, n));
        }
    };
    for m in 1..=6 {
        for n in 1..=6 {
            add(m, n);
        }
    }
    for short in 1..=2 {
        for long in 1..=31 {
            add(short, long);
            add(long, short);
        }
    }
    for n in 1..=10 {
        add(5, n);
    }
    add(7, 7);
    add(4, 13);
    if deep {
        for cell in [(6, 14), (8, 8)] {
            add(cell.0, cell.1);
        }
    }
    cells
}

pub fn known_table() -> std::collections::BTreeMap<(usize, usize), OutcomeConstraint> {
    parse_table(data::KNOWN_TABLE).expect("shipped table parses")
}

pub fn outcome_suite(solver: &mut Solver<'_>, cells: &[(usize, usize)]) -> Report {
    let expected = known_table();
    let mut report = Report::default();
    for &(m, n) in cells {
        report.run("outcomes", format!("{m}x{n}"), || {
            let want = expected
                .get(&(m, n))
                .and_then(|c| c.exact())
                .ok_or_else(|| format!("no single class listed for {m}x{n}"))?;
            let got = solver.solve_rect_outcome(m, n).map_err(|e| e.to_string())?;
            Ok((got == want, format!("{got} (table {want})")))
        });
    }
    report
}

/// Each numbered claim, checked against the table propagated from the
/// shipped facts over 16 x 128.
pub fn results_suite(solver: &mut Solver<'_>) -> Report {
    let mut report = Report::default();
    let store = solver.store();
    let bounds = shipped_bounds(store);
    let start = Instant::now();
    let table = match derive_table(solver, &shipped_facts(), &bounds, 16, 128, &Schedule::default()) {
        Ok(t) => t,
        Err(e) => {
            report.run("results", "propagate 16x128", || Err(e.to_string()));
            return report;
        }
    };
    report.checks.push(Check {
        suite: "results",
        name: "propagate 16x128".into(),
        passed: true,
        detail: format!("{} cells known", table.len()),
        elapsed: start.elapsed(),
    });
    let one_h = OutcomeConstraint::H.union(OutcomeConstraint::FIRST);
    let h = OutcomeConstraint::H;
    let claim = |report: &mut Report, item: usize, cells: Vec<(usize, usize)>, want: OutcomeConstraint| {
        let name = format!("item {item}");
        report.run("results", name, || {
            let bad: Vec<String> = cells
                .iter()
                .filter(|&&(m, n)| !table.get(m, n).is_subset(want))
                .map(|&(m, n)| format!("{m}x{n}={}", table.get(m, n)))
                .collect();
            let detail = if bad.is_empty() {
                format!("{} boards within {want}", cells.len())
            } else {
                format!("outside {want}: {}", bad.join(" "))
            };
            Ok((bad.is_empty(), detail))
        });
    };
    claim(&mut report, 1, (30..=128).map(|n| (6, n)).collect(), one_h);
    let mut eights: Vec<(usize, usize)> = [26, 30, 36, 40, 42, 46, 48, 50, 52].map(|n| (8, n)).to_vec();
    eights.extend((56..=128).step_by(2).map(|n| (8, n)));
    claim(&mut report, 2, eights, h);
    claim(&mut report, 3, [28, 34, 38, 44, 54].map(|n| (8, n)).to_vec(), one_h);
    claim(&mut report, 4, [13, 15, 17, 19, 21].map(|n| (9, n)).to_vec(), h);
    let mut elevens = vec![(11, 14), (11, 18)];
    elevens.extend((33..=127).step_by(2).map(|n| (11, n)));
    claim(&mut report, 5, elevens, h);
    claim(&mut report, 6, [6, 10, 14, 18].map(|n| (15, n)).to_vec(), one_h);
    claim(&mut report, 7, vec![(19, 6)], OutcomeConstraint::FIRST);
    let doubles = (1..=16)
        .flat_map(|m| (1..).map(move |k| (m, 2 * k * m)).take_while(|&(_, n)| n <= 128))
        .collect();
    claim(&mut report, 8, doubles, h);

    let used = |m: usize, n: usize, pred: &dyn Fn(&Fact) -> bool| table.history(m, n).iter().any(pred);
    report.run("results", "8x28 is exactly 1H", || {
        Ok((table.get(8, 28) == one_h, table.get(8, 28).code()))
    });
    report.run("results", "9x13 from 3*|G(9,2)| and the 9x7 bound", || {
        let ok = used(9, 13, &|f| {
            matches!(&f.provenance, Provenance::Rule { name, premises }
                if name.starts_with("3*value+bound") && premises == &[(9, 2), (9, 7)])
        });
        let bound = bounds.iter().any(|b| (b.m, b.n) == (9, 7) && store.display(b.bound) == "1");
        Ok((ok && bound, chain(&table, 9, 13)))
    });
    report.run("results", "11x14 from 7*|G(11,2)| < 0", || {
        let ok = used(11, 14, &|f| {
            f.constraint == h
                && matches!(&f.provenance, Provenance::Rule { name, .. } if name == "7*value")
        });
        Ok((ok, chain(&table, 11, 14)))
    });
    report.run("results", "19x6 is the meet of 1V and 1H", || {
        let imported = used(19, 6, &|f| {
            matches!(f.provenance, Provenance::Imported(_)) && f.constraint.code() == "1V"
        });
        let valued = used(19, 6, &|f| {
            f.constraint == one_h && matches!(&f.provenance, Provenance::Rule { name, .. } if name == "3*value")
        });
        Ok((imported && valued && table.get(19, 6) == OutcomeConstraint::FIRST, chain(&table, 19, 6)))
    });
    report
}

fn chain(t: &FactTable, m: usize, n: usize) -> String {
    t.history(m, n)
        .iter()
        .map(|f| format!("{} by {}", f.constraint, f.provenance))
        .collect::<Vec<_>>()
        .join("; ")
}

/// The 9x7 board beside a one-move Horizontal gadget worth -1.
pub fn gadget_board() -> Position {
    Position::from_ascii(data::GADGET).expect("shipped gadget parses")
}

/// `board` with the gadget's blocked column and slot attached on the right.
fn with_gadget(board: &Position) -> Result<Position, String> {
    let (h, w) = (board.height(), board.width());
    let mut text = String::new();
    for r in 0..h {
        let row: String = (0..w).map(|c| if board.is_free(r, c) { '.' } else { '#' }).collect();
        let tail = if r == 0 { "#.." } else { "###" };
        text.push_str(&row);
        text.push_str(tail);
        text.push('\n');
    }
    Position::from_ascii(&text).map_err(|e| e.to_string())
}

pub fn bounds_suite(solver: &mut Solver<'_>, deep: bool) -> Report {
    let store = solver.store();
    let mut report = Report::default();
    let one = store.integer(1).expect("small integer");
    for rel in [Relation::Le, Relation::Ge] {
        report.run("bounds", format!("2x1 {rel} 1"), || {
            let ok = solver.prove_relation(&rect(2, 1)?.into(), one, rel).map_err(|e| e.to_string())?;
            Ok((ok, ok.to_string()))
        });
    }
    report.run("bounds", "gadget is 9x7 plus -1", || {
        let g = gadget_board();
        let mut parts = g.components();
        parts.sort_by_key(|p| p.empty_cells());
        let [slot, block] = parts.as_slice() else {
            return Ok((false, format!("{} components", parts.len())));
        };
        let minus_one = store.integer(-1).map_err(|e| e.to_string())?;
        let slot_value = solver.value_of_position(slot).map_err(|e| e.to_string())?;
        let same_block = block.normalize() == rect(9, 7)?.normalize();
        let rebuilt = with_gadget(&rect(9, 7)?)? == g;
        Ok((
            same_block && slot_value == minus_one && rebuilt,
            format!("slot {}, block {}x{}", store.display(slot_value), block.height(), block.width()),
        ))
    });
    for (m, n) in [(2, 2), (3, 3), (3, 4), (4, 3), (4, 4), (5, 3), (4, 5)] {
        report.run("bounds", format!("gadget beside {m}x{n}"), || {
            let direct = solver.prove_relation(&rect(m, n)?.into(), one, Relation::Le).map_err(|e| e.to_string())?;
            let figure = with_gadget(&rect(m, n)?)?;
            let via = solver
                .prove_relation(&figure.into(), GameValue::ZERO, Relation::Le)
                .map_err(|e| e.to_string())?;
            Ok((direct == via, format!("<= 1: {direct}")))
        });
    }
    if deep {
        report.run("bounds", "9x7 <= 1", || {
            let ok = solver.prove_relation(&rect(9, 7)?.into(), one, Relation::Le).map_err(|e| e.to_string())?;
            Ok((ok, ok.to_string()))
        });
        report.run("bounds", "9x7 gadget figure <= 0", || {
            let ok = solver
                .prove_relation(&SumPosition::board(gadget_board()), GameValue::ZERO, Relation::Le)
                .map_err(|e| e.to_string())?;
            Ok((ok, ok.to_string()))
        });
    }
    report
}

/// The three corrections to earlier tables, each checked from data.
pub fn errata_suite() -> Report {
    let store = GameStore::new();
    let mut solver = Solver::new(&store);
    errata_suite_with(&mut solver)
}

/// The rules of the older table: the weaker double-width rule.
pub fn older_schedule() -> Schedule {
    Schedule {
        rules: vec![
            RuleKind::Transpose,
            RuleKind::Square,
            RuleKind::DoubleWidthWeak,
            RuleKind::OneHandTied,
            RuleKind::CenterSplit,
        ],
        reverse: false,
    }
}

fn errata_suite_with(solver: &mut Solver<'_>) -> Report {
    let mut report = Report::default();
    let bounds = shipped_bounds(solver.store());
    let facts = shipped_facts();

    for (m, n, want) in [(2, 27, OutcomeConstraint::FIRST), (6, 12, OutcomeConstraint::H)] {
        report.run("errata", format!("{m}x{n} follows from the older rules"), || {
            let mut base = FactTable::new();
            for f in facts.facts() {
                if f.cell() != (m, n) && f.cell() != (n, m) {
                    base.insert(f.clone()).map_err(|e| e.to_string())?;
                }
            }
            let t = propagate_with(&base, 32, 32, &older_schedule()).map_err(|e| e.to_string())?;
            Ok((t.get(m, n) == want, chain(&t, m, n)))
        });
    }

    report.run("errata", "4x13 = V contradicts search", || {
        let searched = solver.solve_rect_outcome(4, 13).map_err(|e| e.to_string())?;
        let found = Fact::new(4, 13, OutcomeConstraint::only(searched), Provenance::Search);
        let outcome = match derive_table(solver, &erroneous_facts(), &bounds, 32, 32, &Schedule::default()) {
            Err(DeriveError::Solver(e)) => return Err(e.to_string()),
            Err(DeriveError::Contradiction(c)) => Err(c),
            Ok(mut t) => t.insert(found).map(|_| ()),
        };
        Ok(match outcome {
            Err(c) if [(4, 13), (13, 4)].contains(&c.cell) => (true, c.to_string()),
            Err(c) => (false, format!("contradiction elsewhere: {c}")),
            Ok(()) => (false, format!("no contradiction; search says {searched}")),
        })
    });

    report.run("errata", "corrected 4x13 = 2 gives 4x21 = H", || {
        let t = derive_table(solver, &facts, &bounds, 32, 32, &Schedule::default()).map_err(|e| e.to_string())?;
        let imported = t.history(4, 13).first().map(|f| f.provenance.clone());
        let ok = t.get(4, 13) == OutcomeConstraint::SECOND
            && t.get(4, 21) == OutcomeConstraint::H
            && t.history(4, 21).iter().all(|f| !matches!(f.provenance, Provenance::Imported(_)));
        Ok((ok, format!("4x13 by {imported:?}; 4x21: {}", chain(&t, 4, 21))))
    });

    report.run("errata", "6x29 = 1H is unsupported", || {
        let t = derive_table(solver, &facts, &bounds, 32, 32, &Schedule::default()).map_err(|e| e.to_string())?;
        let c = t.get(6, 29);
        let one_h = OutcomeConstraint::H.union(OutcomeConstraint::FIRST);
        let flagged = !c.is_subset(one_h);
        let shown = if c.is_full() { "unknown".to_string() } else { c.code() };
        Ok((flagged, format!("flagged: rules give {shown}, not within 1H")))
    });
    report
}
