use crate::board::{Player, Position};
use crate::cgt::GameValue;

use super::{Solver, SolverError};

impl Solver<'_> {
    /// Canonical value of `p`, summing the values of its components.
    pub fn value_of_position(&mut self, p: &Position) -> Result<GameValue, SolverError> {
        let cells = p.empty_cells();
        if cells > self.config.value_cells {
            return Err(SolverError::ValueBudget {
                cells,
                budget: self.config.value_cells,
            });
        }
        self.position_value(p)
    }

    pub(crate) fn position_value(&mut self, p: &Position) -> Result<GameValue, SolverError> {
        let mut total = GameValue::ZERO;
        for comp in p.components() {
            let v = self.component_value(&comp)?;
            total = self.store.add(total, v)?;
        }
        Ok(total)
    }

    /// Value of a single connected, cropped component.
    pub(crate) fn component_value(&mut self, comp: &Position) -> Result<GameValue, SolverError> {
        if let Some(v) = one_sided_value(comp) {
            return Ok(self.store.integer(v)?);
        }
        let key = if self.config.symmetry_caching {
            comp.normalize()
        } else {
            comp.clone()
        };
        if let Some(&v) = self.values.get(&key) {
            return Ok(v);
        }
        if self.config.symmetry_caching {
            let flipped = key.transpose().normalize();
            if let Some(&v) = self.values.get(&flipped) {
                let v = self.store.negate(v)?;
                self.values.insert(key, v);
                return Ok(v);
            }
        }
        let mut options = [Vec::new(), Vec::new()];
        for (side, player) in [Player::Vertical, Player::Horizontal].into_iter().enumerate() {
            let mut seen: Vec<Position> = Vec::new();
            for mv in key.legal_moves(player) {
                let child = key.play_unchecked(mv);
                if self.config.symmetry_caching {
                    let nk = child.normalize();
                    if seen.contains(&nk) {
                        continue;
                    }
                    seen.push(nk);
                }
                options[side].push(self.position_value(&child)?);
            }
        }
        let [left, right] = options;
        let v = self.store.from_options(left, right)?;
        self.values.insert(key, v);
        Ok(v)
    }
}

/// Integer value of a component on which one player has no move at all.
///
/// Moves by the other player never create moves for the stuck one, so the
/// value is the longest run of uncontested moves: the most disjoint dominoes
/// that fit, which each maximal straight run of length `k` contributes `k/2`.
pub(crate) fn one_sided_value(p: &Position) -> Option<i64> {
    let v = p.has_move(Player::Vertical);
    let h = p.has_move(Player::Horizontal);
    match (v, h) {
        (false, false) => Some(0),
        (true, false) => Some(super::bounds::column_pairs(p.free_rows()) as i64),
        (false, true) => Some(-(super::bounds::row_pairs(p.free_rows()) as i64)),
        (true, true) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cgt::GameStore;

    #[test]
    fn tiny_boards() {
        let store = GameStore::new();
        let mut solver = Solver::new(&store);
        let v = |s: &mut Solver<'_>, m, n| {
            let p = Position::rect(m, n).unwrap();
            s.value_of_position(&p).unwrap()
        };
        assert_eq!(v(&mut solver, 1, 1), GameValue::ZERO);
        assert_eq!(v(&mut solver, 2, 1), store.integer(1).unwrap());
        assert_eq!(v(&mut solver, 1, 2), store.integer(-1).unwrap());
        assert_eq!(v(&mut solver, 5, 1), store.integer(2).unwrap());
        assert_eq!(v(&mut solver, 2, 2), store.parse("{1|-1}").unwrap());
    }

    #[test]
    fn value_budget_is_enforced() {
        let store = GameStore::new();
        let mut solver = Solver::new(&store);
        solver.config_mut().value_cells = 10;
        let err = solver.value_of_position(&Position::rect(3, 4).unwrap()).unwrap_err();
        assert_eq!(err, SolverError::ValueBudget { cells: 12, budget: 10 });
        assert!(err.is_resource());
    }

    #[test]
    fn store_node_budget_surfaces_as_resource_error() {
        let store = GameStore::with_node_budget(8);
        let mut solver = Solver::new(&store);
        let err = solver.value_of_position(&Position::rect(4, 4).unwrap()).unwrap_err();
        assert!(err.is_resource(), "{err:?}");
    }
}
