//! Composition rules over outcome classes of rectangles, and a fixpoint
//! engine that applies them to a table of partial knowledge.
//!
//! Every rule is stated for Horizontal; its Vertical analog is obtained by
//! transposing the board, which swaps the players.

mod constraint;
mod engine;

use std::fmt;

use crate::cgt::{Comparison, OutcomeClass};

pub use constraint::{BadCode, OutcomeConstraint};
pub use engine::{propagate, propagate_with, Contradiction, FactTable, RuleKind, Schedule};

/// A board size `(height, width)`.
pub type Cell = (usize, usize);

/// Where a constraint came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Read from a facts file, with its source tag.
    Imported(String),
    /// Decided by solving the board.
    Search,
    /// Inferred by a named rule from the listed cells.
    Rule { name: String, premises: Vec<Cell> },
}

impl Provenance {
    pub fn rule(name: impl Into<String>, premises: Vec<Cell>) -> Self {
        Provenance::Rule {
            name: name.into(),
            premises,
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Imported(tag) => write!(f, "imported({tag})"),
            Provenance::Search => f.write_str("search"),
            Provenance::Rule { name, premises } => {
                write!(f, "{name}(")?;
                for (i, (m, n)) in premises.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{m}x{n}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// A constraint on the outcome class of the `m x n` rectangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fact {
    pub m: usize,
    pub n: usize,
    pub constraint: OutcomeConstraint,
    pub provenance: Provenance,
}

impl Fact {
    pub fn new(m: usize, n: usize, constraint: OutcomeConstraint, provenance: Provenance) -> Self {
        Self {
            m,
            n,
            constraint,
            provenance,
        }
    }

    pub fn cell(&self) -> Cell {
        (self.m, self.n)
    }
}

/// Splitting `m x (n1 + n2)` into `m x n1` and `m x n2` only takes moves
/// away from Horizontal, so `|G(m, n1 + n2)| <= |G(m, n1)| + |G(m, n2)|`.
///
/// The sign of the right-hand side bounds the left. Both parts `<= 0` with
/// one `< 0` gives `H`, both `<= 0` gives `2` or `H`; a part `<= 0` beside
/// one that is not `>= 0` (or `< 0` beside one not `> 0`) gives `1` or `H`;
/// a part `<= 0` beside one not `> 0` rules out `V`.
pub fn one_hand_tied(c1: OutcomeConstraint, c2: OutcomeConstraint) -> OutcomeConstraint {
    let h = OutcomeConstraint::H;
    let le = |c: OutcomeConstraint| c.is_subset(h.union(OutcomeConstraint::SECOND));
    let not_ge = |c: OutcomeConstraint| c.is_subset(h.union(OutcomeConstraint::FIRST));
    let not_gt = |c: OutcomeConstraint| !c.contains(OutcomeClass::V);
    let lt = |c: OutcomeConstraint| c.is_subset(h);
    let either = |p: &dyn Fn(OutcomeConstraint) -> bool, q: &dyn Fn(OutcomeConstraint) -> bool| {
        (p(c1) && q(c2)) || (p(c2) && q(c1))
    };
    if le(c1) && le(c2) {
        if lt(c1) || lt(c2) {
            h
        } else {
            h.union(OutcomeConstraint::SECOND)
        }
    } else if either(&le, &not_ge) || either(&lt, &not_gt) {
        h.union(OutcomeConstraint::FIRST)
    } else if either(&le, &not_gt) {
        h.union(OutcomeConstraint::FIRST).union(OutcomeConstraint::SECOND)
    } else {
        OutcomeConstraint::FULL
    }
}

/// `n x 2nk` is a Horizontal win: after one crossing move Horizontal can
/// answer every Vertical move by its quarter-turn image in the other half.
pub fn double_width(n: usize, k: usize) -> Fact {
    Fact::new(n, 2 * n * k, OutcomeConstraint::H, Provenance::rule("double_width", vec![]))
}

/// The older form of [`double_width`]: `m x 2km` is `2` or `H`, from the
/// copying strategy alone.
pub fn double_width_weak(m: usize, k: usize) -> Fact {
    let two_h = OutcomeConstraint::H.union(OutcomeConstraint::SECOND);
    Fact::new(m, 2 * m * k, two_h, Provenance::rule("double_width_weak", vec![]))
}

/// If `m x j` is `H` and `m x k` is `2` or `H`, every width `a*j + b*k` with
/// `a >= 1`, `b >= 0` is `H`.
pub fn semigroup(
    j: usize,
    cj: OutcomeConstraint,
    k: usize,
    ck: OutcomeConstraint,
    w: usize,
) -> OutcomeConstraint {
    let two_h = OutcomeConstraint::H.union(OutcomeConstraint::SECOND);
    if j == 0 || k == 0 || !cj.is_subset(OutcomeConstraint::H) || !ck.is_subset(two_h) {
        return OutcomeConstraint::FULL;
    }
    let representable = (1..=w / j).any(|a| (w - a * j) % k == 0);
    if representable {
        OutcomeConstraint::H
    } else {
        OutcomeConstraint::FULL
    }
}

/// Vertical moving first on `2 x (2k + 1)` fills the middle column, leaving
/// two copies of `2 x k`. If that board is a second-player win, so is the
/// pair, and Vertical has just moved: Vertical wins going first.
pub fn center_split_height2(_k: usize, c: OutcomeConstraint) -> OutcomeConstraint {
    if c.is_subset(OutcomeConstraint::SECOND) {
        OutcomeConstraint::V.union(OutcomeConstraint::FIRST)
    } else {
        OutcomeConstraint::FULL
    }
}

/// The same fact about the transposed board.
pub fn transpose_rule(f: &Fact) -> Fact {
    Fact::new(
        f.n,
        f.m,
        f.constraint.swap_players(),
        Provenance::rule("transpose", vec![f.cell()]),
    )
}

/// A square is its own transpose, so neither player can win it outright.
pub fn square_symmetry(n: usize) -> Fact {
    Fact::new(
        n,
        n,
        OutcomeConstraint::FIRST.union(OutcomeConstraint::SECOND),
        Provenance::rule("square", vec![]),
    )
}

/// What an upper bound `|G| <= X` says about `G`, given how `X` compares
/// with zero.
pub fn upper_bound_constraint(x_vs_zero: Comparison) -> OutcomeConstraint {
    match x_vs_zero {
        Comparison::Less => OutcomeConstraint::H,
        Comparison::Confused => OutcomeConstraint::H.union(OutcomeConstraint::FIRST),
        Comparison::Equal => OutcomeConstraint::H.union(OutcomeConstraint::SECOND),
        Comparison::Greater => OutcomeConstraint::FULL,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(code: &str) -> OutcomeConstraint {
        code.parse().unwrap()
    }

    #[test]
    fn one_hand_tied_table() {
        assert_eq!(one_hand_tied(c("H"), c("H")), c("H"));
        assert_eq!(one_hand_tied(c("H"), c("2")), c("H"));
        assert_eq!(one_hand_tied(c("2H"), c("H")), c("H"));
        assert_eq!(one_hand_tied(c("H"), c("1")), c("1H"));
        assert_eq!(one_hand_tied(c("1"), c("H")), c("1H"));
        assert_eq!(one_hand_tied(c("H"), c("-V")), c("1H"));
        assert_eq!(one_hand_tied(c("V"), c("H")), OutcomeConstraint::FULL);
        assert_eq!(one_hand_tied(c("1H"), c("H")), c("1H"));
        assert_eq!(one_hand_tied(c("2"), c("1")), c("1H"));
        assert_eq!(one_hand_tied(c("2"), c("2")), c("2H"));
        assert_eq!(one_hand_tied(c("2"), c("-V")), c("-V"));
        assert_eq!(one_hand_tied(c("1"), c("1")), OutcomeConstraint::FULL);
        assert_eq!(one_hand_tied(c("-V"), c("-V")), OutcomeConstraint::FULL);
        assert_eq!(one_hand_tied(c("H"), c("1V")), OutcomeConstraint::FULL);
    }

    #[test]
    fn double_width_cells() {
        assert_eq!(double_width(3, 1).cell(), (3, 6));
        assert_eq!(double_width(8, 1).cell(), (8, 16));
        let f = double_width(1, 1);
        assert_eq!((f.cell(), f.constraint), ((1, 2), c("H")));
        assert_eq!(double_width_weak(6, 1).constraint, c("2H"));
    }

    #[test]
    fn semigroup_widths() {
        assert_eq!(semigroup(10, c("H"), 16, c("H"), 26), c("H"));
        // 48 needs a = 0: not this rule's business
        assert_eq!(semigroup(10, c("H"), 16, c("H"), 48), OutcomeConstraint::FULL);
        assert_eq!(semigroup(7, c("H"), 4, c("2"), 7), c("H"));
        assert_eq!(semigroup(10, c("1H"), 16, c("H"), 26), OutcomeConstraint::FULL);
    }

    #[test]
    fn center_split() {
        assert_eq!(center_split_height2(13, c("2")), c("1V"));
        assert_eq!(center_split_height2(1, c("V")), OutcomeConstraint::FULL);
        let meet = center_split_height2(13, c("2")).meet(one_hand_tied(c("H"), c("1")));
        assert_eq!(meet, Some(c("1")));
    }

    #[test]
    fn transpose_facts() {
        let f = Fact::new(2, 4, c("H"), Provenance::Search);
        let t = transpose_rule(&f);
        assert_eq!((t.cell(), t.constraint), ((4, 2), c("V")));
        assert_eq!(transpose_rule(&t).constraint, c("H"));
        assert_eq!(square_symmetry(11).constraint.code(), "12");
    }
}
