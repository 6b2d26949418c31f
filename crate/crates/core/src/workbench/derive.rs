//! Facts that come from exact values rather than outcome classes.
//!
//! Cutting `m x n` into strips of width 2 only takes moves from Horizontal,
//! so `|G(m, 2k)| <= k |G(m, 2)|`, and with a proven bound `|G(m, w)| <= b`
//! also `|G(m, 2k + w)| <= k |G(m, 2)| + b`. The sign of the right-hand side
//! then limits the outcome class.

use crate::board::Position;
use crate::cgt::GameValue;
use crate::rules::{upper_bound_constraint, Fact, Provenance};
use crate::solver::{Solver, SolverError};

use super::facts::BoundFact;

/// Heights whose width-2 values are used.
pub const VALUE_HEIGHTS: std::ops::RangeInclusive<usize> = 1..=19;

/// Multiples stop once `k |G(m, 2)|` has more subgames than this. For most
/// heights the multiples stay small; for 14, 16 and 18 they keep growing and
/// comparing them gets slow long before they say anything new.
pub const MULTIPLE_SUBGAMES: usize = 256;

/// Upper-bound facts for every height in `heights` and every width up to
/// `side`, keeping only the ones that say something.
pub fn value_facts(
    solver: &mut Solver<'_>,
    heights: impl IntoIterator<Item = usize>,
    bounds: &[BoundFact],
    side: usize,
) -> Result<Vec<Fact>, SolverError> {
    let store = solver.store();
    let mut out = Vec::new();
    let mut emit = |m: usize, n: usize, x: GameValue, name: String, premises| {
        let c = upper_bound_constraint(store.compare(x, GameValue::ZERO));
        if !c.is_full() {
            out.push(Fact::new(m, n, c, Provenance::rule(name, premises)));
        }
    };
    for m in heights {
        let v = solver.value_of_position(&Position::rect(m, 2)?)?;
        let mine: Vec<&BoundFact> = bounds.iter().filter(|b| b.m == m).collect();
        for b in &mine {
            emit(m, b.n, b.bound, format!("bound[{}]", b.source), vec![(m, b.n)]);
        }
        let mut acc = GameValue::ZERO;
        for k in 1..=side / 2 {
            acc = store.add(acc, v)?;
            emit(m, 2 * k, acc, format!("{k}*value"), vec![(m, 2)]);
            for b in &mine {
                if 2 * k + b.n <= side {
                    let x = store.add(acc, b.bound)?;
                    let name = format!("{k}*value+bound[{}]", b.source);
                    emit(m, 2 * k + b.n, x, name, vec![(m, 2), (m, b.n)]);
                }
            }
            if store.subgames(acc) > MULTIPLE_SUBGAMES {
                break;
            }
        }
    }
    Ok(out)
}
