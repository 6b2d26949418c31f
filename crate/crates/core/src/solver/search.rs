use std::time::Instant;

use crate::board::{Move, Player, Position};
use crate::cgt::GameValue;

use super::bounds::MoveBounds;
use super::value::one_sided_value;
use super::{SearchStats, Solver, SolverError, SumPosition};

/// A search node: the components still being searched jointly plus the
/// folded value of everything else.
#[derive(Clone)]
struct State {
    comps: Vec<Position>,
    abs: GameValue,
}

const CLOCK_INTERVAL: u64 = 1024;
const SAFE_WEIGHT: i32 = 1;

impl Solver<'_> {
    /// Resets the counters and arms the timeout for one public call.
    pub(crate) fn begin_search(&mut self) {
        self.stats = SearchStats::default();
        self.deadline = self.config.timeout.map(|t| Instant::now() + t);
    }

    pub(crate) fn end_search(&mut self, started: Instant) {
        self.stats.elapsed = started.elapsed();
    }

    /// Whether `player`, moving first in `sum`, wins.
    pub(crate) fn mover_wins(&mut self, sum: &SumPosition, player: Player) -> Result<bool, SolverError> {
        let mut state = State {
            comps: Vec::new(),
            abs: self.store.sum(sum.abstract_parts.iter().copied())?,
        };
        for part in &sum.parts {
            for comp in part.components() {
                self.absorb(comp, &mut state)?;
            }
        }
        state.comps.sort_unstable();
        self.wins(&state, player)
    }

    /// Adds a fresh component to `state`, folding it into the abstract part
    /// when its value is cheap to know.
    fn absorb(&mut self, comp: Position, state: &mut State) -> Result<(), SolverError> {
        let folded = if let Some(n) = one_sided_value(&comp) {
            Some(self.store.integer(n)?)
        } else if comp.empty_cells() <= self.config.fold_cells {
            Some(self.component_value(&comp)?)
        } else {
            None
        };
        match folded {
            Some(v) => state.abs = self.store.add(state.abs, v)?,
            None if self.config.symmetry_caching => state.comps.push(comp.normalize()),
            None => state.comps.push(comp),
        }
        Ok(())
    }

    fn tick(&mut self) -> Result<(), SolverError> {
        self.stats.nodes += 1;
        if self.stats.nodes > self.config.node_budget {
            return Err(SolverError::NodeBudget {
                budget: self.config.node_budget,
            });
        }
        if self.stats.nodes % CLOCK_INTERVAL == 0 {
            if let (Some(deadline), Some(limit)) = (self.deadline, self.config.timeout) {
                if Instant::now() >= deadline {
                    return Err(SolverError::Timeout { limit });
                }
            }
        }
        Ok(())
    }

    /// Decides the position from move counts alone, if possible.
    fn bound_verdict(&self, state: &State, mover: Player) -> Option<bool> {
        let mut b = MoveBounds::default();
        for c in &state.comps {
            b.accumulate(MoveBounds::of(c));
        }
        let (left_run, right_run) = self.store.move_runs(state.abs);
        let (mover_run, opp_run) = match mover {
            Player::Vertical => (left_run, right_run),
            Player::Horizontal => (right_run, left_run),
        };
        // An integer abstract part is a stack of moves nobody can disturb.
        let integer = self.store.as_number(state.abs).is_some_and(|x| x.is_integer());
        let (mover_safe, opp_safe) = if integer { (mover_run, opp_run) } else { (0, 0) };
        let opp = mover.opponent();
        if b.assured(mover, true) + mover_safe > b.max(opp) + opp_run {
            return Some(true);
        }
        if b.assured(opp, false) + opp_safe >= b.max(mover) + mover_run {
            return Some(false);
        }
        None
    }

    fn key(&self, state: &State, mover: Player) -> Box<[u64]> {
        let mut key = Vec::with_capacity(1 + state.comps.iter().map(|c| c.height() + 1).sum::<usize>());
        key.push(((state.abs.id() as u64) << 1) | (mover == Player::Horizontal) as u64);
        for c in &state.comps {
            key.push(c.height() as u64 | (c.width() as u64) << 8);
            key.extend_from_slice(c.free_rows());
        }
        key.into_boxed_slice()
    }

    fn remember(&mut self, key: Box<[u64]>, won: bool) {
        if self.tt.len() >= self.config.tt_capacity {
            self.tt.clear();
        }
        self.tt.insert(key, won);
    }

    fn wins(&mut self, state: &State, mover: Player) -> Result<bool, SolverError> {
        self.tick()?;
        if state.comps.is_empty() {
            return Ok(match mover {
                Player::Vertical => self.store.left_wins_first(state.abs),
                Player::Horizontal => self.store.right_wins_first(state.abs),
            });
        }
        if self.config.move_count_bounds {
            if let Some(won) = self.bound_verdict(state, mover) {
                self.stats.bound_cutoffs += 1;
                return Ok(won);
            }
        }
        let caching = self.config.symmetry_caching;
        let key = caching.then(|| self.key(state, mover));
        if let Some(k) = &key {
            if let Some(&won) = self.tt.get(k) {
                self.stats.tt_hits += 1;
                return Ok(won);
            }
        }

        let opp = mover.opponent();
        for (i, mv) in self.ordered_moves(state, mover) {
            let child = self.play_in(state, i, mv)?;
            if !self.wins(&child, opp)? {
                let depth = state.comps.iter().map(|c| c.empty_cells()).sum::<usize>() as u32;
                let h = &mut self.history[history_index(mover, mv)];
                *h = h.saturating_add(depth * depth);
                if let Some(k) = key {
                    self.remember(k, true);
                }
                return Ok(true);
            }
        }
        let options = match mover {
            Player::Vertical => self.store.left_options(state.abs),
            Player::Horizontal => self.store.right_options(state.abs),
        };
        for o in options {
            let child = State {
                comps: state.comps.clone(),
                abs: o,
            };
            if !self.wins(&child, opp)? {
                if let Some(k) = key {
                    self.remember(k, true);
                }
                return Ok(true);
            }
        }
        if let Some(k) = key {
            self.remember(k, false);
        }
        Ok(false)
    }

    fn play_in(&mut self, state: &State, i: usize, mv: Move) -> Result<State, SolverError> {
        let mut child = State {
            comps: Vec::with_capacity(state.comps.len() + 2),
            abs: state.abs,
        };
        for (j, c) in state.comps.iter().enumerate() {
            if j != i {
                child.comps.push(c.clone());
            }
        }
        for comp in state.comps[i].play_unchecked(mv).components() {
            self.absorb(comp, &mut child)?;
        }
        child.comps.sort_unstable();
        Ok(child)
    }

    /// All board moves, best first: a move scores twice the opponent moves
    /// it destroys, less the mover's own moves it destroys. Ties go to the
    /// larger component.
    fn ordered_moves(&self, state: &State, mover: Player) -> Vec<(usize, Move)> {
        let mut scored: Vec<(i32, u32, usize, usize, Move)> = Vec::new();
        for (i, c) in state.comps.iter().enumerate() {
            let rows = c.free_rows();
            let size = c.empty_cells();
            let at = |r: usize, col: usize| -> i32 { rows.get(r).map_or(0, |&b| ((b >> col) & 1) as i32) };
            let left = |r: usize, col: usize| if col > 0 { at(r, col - 1) } else { 0 };
            let above = |r: usize, col: usize| if r > 0 { at(r - 1, col) } else { 0 };
            for mv in c.legal_moves(mover) {
                let (r, col) = (mv.row as usize, mv.col as usize);
                // a neighbour whose far side is blocked becomes ours alone
                let shut = |free: i32, beyond: i32| free * (1 - beyond);
                let (lost_opp, lost_own, made_safe) = match mover {
                    Player::Vertical => (
                        left(r, col) + at(r, col + 1) + left(r + 1, col) + at(r + 1, col + 1),
                        above(r, col) + at(r + 2, col),
                        (0..2)
                            .map(|d| {
                                let far_left = if col > 1 { at(r + d, col - 2) } else { 0 };
                                shut(left(r + d, col), far_left) + shut(at(r + d, col + 1), at(r + d, col + 2))
                            })
                            .sum::<i32>(),
                    ),
                    Player::Horizontal => (
                        above(r, col) + at(r + 1, col) + above(r, col + 1) + at(r + 1, col + 1),
                        left(r, col) + at(r, col + 2),
                        (0..2)
                            .map(|d| {
                                let far_above = if r > 1 { at(r - 2, col + d) } else { 0 };
                                shut(above(r, col + d), far_above) + shut(at(r + 1, col + d), at(r + 2, col + d))
                            })
                            .sum::<i32>(),
                    ),
                };
                let hist = self.history[history_index(mover, mv)];
                scored.push((2 * lost_opp - lost_own + SAFE_WEIGHT * made_safe, hist, size, i, mv));
            }
        }
        scored.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)).then(b.2.cmp(&a.2)));
        scored.into_iter().map(|(_, _, _, i, mv)| (i, mv)).collect()
    }
}

fn history_index(player: Player, mv: Move) -> usize {
    (player as usize) * 4096 + mv.row as usize * 64 + mv.col as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cgt::{GameStore, OutcomeClass};
    use crate::solver::{Relation, SolverConfig};

    fn rect(m: usize, n: usize) -> Position {
        Position::rect(m, n).unwrap()
    }

    #[test]
    fn small_rectangles() {
        let store = GameStore::new();
        let mut s = Solver::new(&store);
        assert_eq!(s.solve_rect_outcome(1, 1).unwrap(), OutcomeClass::Second);
        assert_eq!(s.solve_rect_outcome(1, 2).unwrap(), OutcomeClass::H);
        assert_eq!(s.solve_rect_outcome(2, 1).unwrap(), OutcomeClass::V);
        assert_eq!(s.solve_rect_outcome(2, 2).unwrap(), OutcomeClass::First);
        assert_eq!(s.solve_rect_outcome(3, 3).unwrap(), OutcomeClass::First);
    }

    #[test]
    fn abstract_parts_count() {
        let store = GameStore::new();
        let mut s = Solver::new(&store);
        let one = store.integer(1).unwrap();
        let two = store.integer(2).unwrap();
        // 2x2 is {1|-1}: plus 1 it is {2|0}, still a first-player win; plus 2
        // Vertical wins outright.
        let sum = SumPosition::board(rect(2, 2)).with_game(one);
        assert_eq!(s.outcome_class(&sum).unwrap(), OutcomeClass::First);
        let sum = SumPosition::board(rect(2, 2)).with_game(two);
        assert_eq!(s.outcome_class(&sum).unwrap(), OutcomeClass::V);
        assert!(s.prove_relation(&rect(2, 1).into(), one, Relation::Le).unwrap());
        assert!(s.prove_relation(&rect(2, 1).into(), one, Relation::Ge).unwrap());
        assert!(!s.prove_relation(&rect(2, 2).into(), GameValue::ZERO, Relation::Le).unwrap());
    }

    #[test]
    fn budgets_are_errors() {
        let store = GameStore::new();
        let config = SolverConfig {
            node_budget: 10,
            fold_cells: 0,
            ..SolverConfig::default()
        };
        let mut s = Solver::with_config(&store, config);
        let err = s.solve_rect_outcome(5, 5).unwrap_err();
        assert_eq!(err, SolverError::NodeBudget { budget: 10 });
    }

    #[test]
    fn settings_do_not_change_answers() {
        let store = GameStore::new();
        let plain = SolverConfig {
            fold_cells: 0,
            symmetry_caching: false,
            move_count_bounds: false,
            ..SolverConfig::default()
        };
        let mut fast = Solver::new(&store);
        let mut slow = Solver::with_config(&store, plain);
        for m in 1..=3 {
            for n in 1..=4 {
                assert_eq!(
                    fast.solve_rect_outcome(m, n).unwrap(),
                    slow.solve_rect_outcome(m, n).unwrap(),
                    "{m}x{n}"
                );
            }
        }
    }
}
