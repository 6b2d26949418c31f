use std::collections::BTreeMap;
use std::fmt;

use crate::cgt::OutcomeClass;

use super::{
    center_split_height2, double_width, double_width_weak, one_hand_tied, square_symmetry,
    transpose_rule, Cell, Fact, OutcomeConstraint, Provenance,
};

/// An emptied cell: two sources that cannot both be right.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct Contradiction {
    pub cell: Cell,
    pub existing: OutcomeConstraint,
    pub existing_provenance: Provenance,
    pub incoming: OutcomeConstraint,
    pub incoming_provenance: Provenance,
}

impl fmt::Display for Contradiction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, n) = self.cell;
        write!(
            f,
            "CONTRADICTION at {m}x{n}: {} from {} vs {} from {}",
            self.existing, self.existing_provenance, self.incoming, self.incoming_provenance
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Entry {
    current: OutcomeConstraint,
    steps: Vec<Fact>,
}

/// Per-cell constraints with the facts that narrowed them, oldest first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactTable {
    cells: BTreeMap<Cell, Entry>,
}

impl FactTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Intersects `fact` into its cell. Returns whether the cell shrank.
    pub fn insert(&mut self, fact: Fact) -> Result<bool, Contradiction> {
        let entry = self.cells.entry(fact.cell()).or_default();
        if entry.steps.is_empty() {
            entry.current = OutcomeConstraint::FULL;
        }
        let Some(met) = entry.current.meet(fact.constraint) else {
            return Err(Contradiction {
                cell: fact.cell(),
                existing: entry.current,
                existing_provenance: entry.steps.last().unwrap().provenance.clone(),
                incoming: fact.constraint,
                incoming_provenance: fact.provenance,
            });
        };
        if met == entry.current {
            if entry.steps.is_empty() {
                self.cells.remove(&fact.cell());
            }
            return Ok(false);
        }
        entry.current = met;
        entry.steps.push(fact);
        Ok(true)
    }

    /// The constraint on `m x n`; the full set when nothing is known.
    pub fn get(&self, m: usize, n: usize) -> OutcomeConstraint {
        self.cells.get(&(m, n)).map_or(OutcomeConstraint::FULL, |e| e.current)
    }

    /// The facts that narrowed `m x n`, oldest first.
    pub fn history(&self, m: usize, n: usize) -> &[Fact] {
        self.cells.get(&(m, n)).map_or(&[], |e| &e.steps)
    }

    /// Known cells in row-major order with their constraints.
    pub fn iter(&self) -> impl Iterator<Item = (Cell, OutcomeConstraint)> + '_ {
        self.cells.iter().map(|(&cell, e)| (cell, e.current))
    }

    pub fn facts(&self) -> impl Iterator<Item = &Fact> {
        self.cells.values().flat_map(|e| e.steps.iter())
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Largest height and width mentioned.
    pub fn extent(&self) -> (usize, usize) {
        self.cells
            .keys()
            .fold((0, 0), |(a, b), &(m, n)| (a.max(m), b.max(n)))
    }

    /// The constraints alone, for comparing tables.
    pub fn grid(&self) -> BTreeMap<Cell, OutcomeConstraint> {
        self.iter().collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleKind {
    Transpose,
    Square,
    DoubleWidth,
    DoubleWidthWeak,
    OneHandTied,
    CenterSplit,
}

impl RuleKind {
    pub const STANDARD: [RuleKind; 5] = [
        RuleKind::Transpose,
        RuleKind::Square,
        RuleKind::DoubleWidth,
        RuleKind::OneHandTied,
        RuleKind::CenterSplit,
    ];
}

/// Which rules run, in what order within each round, and in which direction
/// cells are swept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub rules: Vec<RuleKind>,
    pub reverse: bool,
}

impl Default for Schedule {
    fn default() -> Self {
        Self {
            rules: RuleKind::STANDARD.to_vec(),
            reverse: false,
        }
    }
}

/// Runs the standard rules to a fixpoint. See [`propagate_with`].
pub fn propagate(base: &FactTable, max_m: usize, max_n: usize) -> Result<FactTable, Contradiction> {
    propagate_with(base, max_m, max_n, &Schedule::default())
}

/// Applies `schedule`'s rules until nothing changes.
///
/// Rules work over a square region whose side covers `max_m`, `max_n` and
/// every base fact, so that the transpose of each cell is also in range.
/// The result holds the base facts plus every derived narrowing.
pub fn propagate_with(
    base: &FactTable,
    max_m: usize,
    max_n: usize,
    schedule: &Schedule,
) -> Result<FactTable, Contradiction> {
    let (bm, bn) = base.extent();
    let side = max_m.max(max_n).max(bm).max(bn);
    let mut engine = Engine {
        side,
        grid: vec![OutcomeConstraint::FULL; (side + 1) * (side + 1)],
        table: base.clone(),
        reverse: schedule.reverse,
    };
    for ((m, n), c) in base.iter() {
        engine.grid[m * (side + 1) + n] = c;
    }
    loop {
        let mut changed = false;
        for &rule in &schedule.rules {
            changed |= engine.run(rule)?;
        }
        if !changed {
            return Ok(engine.table);
        }
    }
}

struct Engine {
    side: usize,
    grid: Vec<OutcomeConstraint>,
    table: FactTable,
    reverse: bool,
}

impl Engine {
    fn get(&self, m: usize, n: usize) -> OutcomeConstraint {
        self.grid[m * (self.side + 1) + n]
    }

    fn apply(&mut self, fact: Fact) -> Result<bool, Contradiction> {
        let current = self.get(fact.m, fact.n);
        if current.is_subset(fact.constraint) {
            return Ok(false);
        }
        let idx = fact.m * (self.side + 1) + fact.n;
        self.table.insert(fact)?;
        self.grid[idx] = self.table.get(idx / (self.side + 1), idx % (self.side + 1));
        Ok(true)
    }

    fn range(&self) -> Vec<usize> {
        let mut r: Vec<usize> = (1..=self.side).collect();
        if self.reverse {
            r.reverse();
        }
        r
    }

    fn run(&mut self, rule: RuleKind) -> Result<bool, Contradiction> {
        let mut changed = false;
        let range = self.range();
        match rule {
            RuleKind::Transpose => {
                for &m in &range {
                    for &n in &range {
                        let c = self.get(m, n);
                        if !c.is_full() && !self.get(n, m).is_subset(c.swap_players()) {
                            let here = Fact::new(m, n, c, Provenance::rule("table", vec![]));
                            changed |= self.apply(transpose_rule(&here))?;
                        }
                    }
                }
            }
            RuleKind::Square => {
                for &n in &range {
                    changed |= self.apply(square_symmetry(n))?;
                }
            }
            RuleKind::DoubleWidth | RuleKind::DoubleWidthWeak => {
                for &n in &range {
                    for k in 1..=self.side / (2 * n) {
                        let f = if rule == RuleKind::DoubleWidth {
                            double_width(n, k)
                        } else {
                            double_width_weak(n, k)
                        };
                        changed |= self.apply(f)?;
                    }
                }
            }
            RuleKind::OneHandTied => {
                for &m in &range {
                    for &n in &range {
                        changed |= self.split_row(m, n)?;
                        changed |= self.split_column(m, n)?;
                    }
                }
            }
            RuleKind::CenterSplit => {
                for &k in &range {
                    let w = 2 * k + 1;
                    if w > self.side {
                        continue;
                    }
                    let c = center_split_height2(k, self.get(2, k));
                    if !c.is_full() {
                        let prov = Provenance::rule("center_split", vec![(2, k)]);
                        changed |= self.apply(Fact::new(2, w, c, prov))?;
                    }
                    let c = center_split_height2(k, self.get(k, 2).swap_players()).swap_players();
                    if !c.is_full() {
                        let prov = Provenance::rule("center_split", vec![(k, 2)]);
                        changed |= self.apply(Fact::new(w, 2, c, prov))?;
                    }
                }
            }
        }
        Ok(changed)
    }

    /// `m x n` from `m x j` and `m x (n - j)`.
    fn split_row(&mut self, m: usize, n: usize) -> Result<bool, Contradiction> {
        let mut changed = false;
        for j in 1..n {
            let a = self.get(m, j);
            if a.contains(OutcomeClass::V) {
                continue;
            }
            let c = one_hand_tied(a, self.get(m, n - j));
            if !c.is_full() {
                let prov = Provenance::rule("one_hand_tied", vec![(m, j), (m, n - j)]);
                changed |= self.apply(Fact::new(m, n, c, prov))?;
            }
        }
        Ok(changed)
    }

    /// The Vertical analog: `m x n` from `j x n` and `(m - j) x n`.
    fn split_column(&mut self, m: usize, n: usize) -> Result<bool, Contradiction> {
        let mut changed = false;
        for j in 1..m {
            let a = self.get(j, n).swap_players();
            if a.contains(OutcomeClass::V) {
                continue;
            }
            let c = one_hand_tied(a, self.get(m - j, n).swap_players()).swap_players();
            if !c.is_full() {
                let prov = Provenance::rule("one_hand_tied", vec![(j, n), (m - j, n)]);
                changed |= self.apply(Fact::new(m, n, c, prov))?;
            }
        }
        Ok(changed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(code: &str) -> OutcomeConstraint {
        code.parse().unwrap()
    }

    fn imported(m: usize, n: usize, code: &str) -> Fact {
        Fact::new(m, n, c(code), Provenance::Imported("test".into()))
    }

    #[test]
    fn insert_intersects_and_detects_contradictions() {
        let mut t = FactTable::new();
        assert!(t.insert(imported(19, 6, "1V")).unwrap());
        assert!(!t.insert(imported(19, 6, "-H")).unwrap());
        assert!(t.insert(Fact::new(19, 6, c("1H"), Provenance::rule("value", vec![(19, 2)]))).unwrap());
        assert_eq!(t.get(19, 6), c("1"));
        assert_eq!(t.history(19, 6).len(), 2);
        let err = t.insert(Fact::new(19, 6, c("2"), Provenance::Search)).unwrap_err();
        assert_eq!(err.cell, (19, 6));
        assert_eq!(err.incoming_provenance, Provenance::Search);
        assert!(err.to_string().contains("19x6"));
    }

    #[test]
    fn empty_base() {
        let t = propagate(&FactTable::new(), 6, 6).unwrap();
        for ((m, n), k) in t.iter() {
            if m == n {
                assert_eq!(k, c("12"), "{m}x{n}");
            } else if n % (2 * m) == 0 {
                assert_eq!(k, c("H"), "{m}x{n}");
            } else if m % (2 * n) == 0 {
                assert_eq!(k, c("V"), "{m}x{n}");
            } else {
                // only what splitting those cells gives, e.g. 1x3 from 1x2 + 1x1
                assert!(t.history(m, n).iter().all(|f| matches!(
                    &f.provenance,
                    Provenance::Rule { name, .. } if name == "one_hand_tied" || name == "transpose"
                )));
            }
        }
        assert_eq!(t.get(1, 3), c("1H"));
        assert_eq!(t.get(3, 6), c("H"));
        assert_eq!(t.get(6, 3), c("V"));
        assert_eq!(t.get(1, 2), c("H"));
    }

    #[test]
    fn six_by_twelve() {
        let mut base = FactTable::new();
        base.insert(imported(6, 4, "1")).unwrap();
        base.insert(imported(6, 8, "H")).unwrap();
        let weak = Schedule {
            rules: vec![RuleKind::DoubleWidthWeak, RuleKind::OneHandTied],
            reverse: false,
        };
        let t = propagate_with(&base, 6, 12, &weak).unwrap();
        assert_eq!(t.get(6, 12), c("H"));
    }

    #[test]
    fn two_by_twenty_seven() {
        let mut base = FactTable::new();
        base.insert(imported(2, 13, "2")).unwrap();
        base.insert(imported(2, 14, "1")).unwrap();
        base.insert(imported(2, 4, "H")).unwrap();
        let t = propagate(&base, 2, 27).unwrap();
        assert_eq!(t.get(2, 27), c("1"));
    }

    #[test]
    fn second_player_wins_repeat_as_horizontal_wins() {
        let mut base = FactTable::new();
        base.insert(imported(3, 5, "2")).unwrap();
        let t = propagate(&base, 3, 40).unwrap();
        for i in 1..=5 {
            assert_eq!(t.get(3, 6 * i + 5), c("H"), "3x{}", 6 * i + 5);
        }
    }

    #[test]
    fn contradictions_name_both_sides() {
        let mut base = FactTable::new();
        base.insert(imported(3, 3, "V")).unwrap();
        let err = propagate(&base, 4, 4).unwrap_err();
        assert_eq!(err.cell, (3, 3));
        assert_eq!(err.existing_provenance, Provenance::Imported("test".into()));
        assert!(matches!(err.incoming_provenance, Provenance::Rule { .. }));
    }
}
