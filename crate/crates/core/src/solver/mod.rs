//! Exact values of small positions, outcome-class search over disjunctive
//! sums, and bound proofs.
//!
//! Search is a memoized win/loss negamax over a sum of board components and
//! one abstract game. Components small enough to evaluate exactly are folded
//! into the abstract part; the rest are searched jointly.

mod bounds;
mod search;
mod value;

use std::time::{Duration, Instant};

use rustc_hash::FxHashMap;

use crate::board::{BoardError, Position};
use crate::cgt::{GameError, GameStore, GameValue, OutcomeClass};

pub use bounds::MoveBounds;

/// Default cap on empty cells for [`Solver::value_of_position`].
pub const DEFAULT_VALUE_CELLS: usize = 40;
/// Default cap on search nodes per call.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolverError {
    #[error("position has {cells} empty cells, above the value budget of {budget}")]
    ValueBudget { cells: usize, budget: usize },
    #[error("search exceeded its budget of {budget} nodes")]
    NodeBudget { budget: u64 },
    #[error("search exceeded its time limit of {limit:?}")]
    Timeout { limit: Duration },
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Board(#[from] BoardError),
}

impl SolverError {
    /// Budget and time exhaustion, as opposed to bad input.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            SolverError::ValueBudget { .. }
                | SolverError::NodeBudget { .. }
                | SolverError::Timeout { .. }
                | SolverError::Game(GameError::NodeBudget { .. })
        )
    }
}

/// Which side of a bound to prove.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `sum <= bound`
    Le,
    /// `sum >= bound`
    Ge,
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
        })
    }
}

/// A disjunctive sum of boards and games of known value.
#[derive(Clone, Debug, Default)]
pub struct SumPosition {
    pub parts: Vec<Position>,
    pub abstract_parts: Vec<GameValue>,
}

impl SumPosition {
    pub fn new(parts: Vec<Position>, abstract_parts: Vec<GameValue>) -> Self {
        Self {
            parts,
            abstract_parts,
        }
    }

    pub fn board(p: Position) -> Self {
        Self::new(vec![p], Vec::new())
    }

    pub fn with_game(mut self, g: GameValue) -> Self {
        self.abstract_parts.push(g);
        self
    }
}

impl From<Position> for SumPosition {
    fn from(p: Position) -> Self {
        Self::board(p)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub tt_hits: u64,
    pub bound_cutoffs: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    /// Largest board [`Solver::value_of_position`] will evaluate.
    pub value_cells: usize,
    /// Components with at most this many empty cells are replaced by their
    /// exact values during search.
    pub fold_cells: usize,
    pub node_budget: u64,
    pub timeout: Option<Duration>,
    /// Memoize on symmetry-normalized keys. Disabling this turns off the
    /// transposition table and the value cache's symmetry folding.
    pub symmetry_caching: bool,
    /// Entries kept in the transposition table before it is flushed.
    pub tt_capacity: usize,
    /// Prune with safe-move counting.
    pub move_count_bounds: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            value_cells: DEFAULT_VALUE_CELLS,
            fold_cells: 12,
            node_budget: DEFAULT_NODE_BUDGET,
            timeout: None,
            symmetry_caching: true,
            tt_capacity: 1 << 22,
            move_count_bounds: true,
        }
    }
}

/// Values and outcomes of Domineering positions, memoized across calls.
pub struct Solver<'s> {
    store: &'s GameStore,
    config: SolverConfig,
    values: FxHashMap<Position, GameValue>,
    tt: FxHashMap<Box<[u64]>, bool>,
    stats: SearchStats,
    deadline: Option<Instant>,
    /// Per player and cell, how often a move there refuted the opponent.
    history: Vec<u32>,
}

impl<'s> Solver<'s> {
    pub fn new(store: &'s GameStore) -> Self {
        Self::with_config(store, SolverConfig::default())
    }

    pub fn with_config(store: &'s GameStore, config: SolverConfig) -> Self {
        Self {
            store,
            config,
            values: FxHashMap::default(),
            tt: FxHashMap::default(),
            stats: SearchStats::default(),
            deadline: None,
            history: vec![0; 2 * 64 * 64],
        }
    }

    pub fn store(&self) -> &'s GameStore {
        self.store
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    pub fn config_mut(&mut self) -> &mut SolverConfig {
        &mut self.config
    }

    /// Counters for the most recent search call.
    pub fn stats(&self) -> SearchStats {
        self.stats
    }

    /// Drops the transposition table (values stay cached).
    pub fn clear_search_cache(&mut self) {
        self.tt.clear();
    }

    /// Outcome class of a sum, by one search per first mover.
    pub fn outcome_class(&mut self, sum: &SumPosition) -> Result<OutcomeClass, SolverError> {
        let (vertical, horizontal) = self.first_mover_wins(sum)?;
        Ok(OutcomeClass::from_first_mover_wins(vertical, horizontal))
    }

    /// Whether Vertical wins moving first, and whether Horizontal does.
    pub fn first_mover_wins(&mut self, sum: &SumPosition) -> Result<(bool, bool), SolverError> {
        use crate::board::Player;
        let started = Instant::now();
        self.begin_search();
        let result = self.mover_wins(sum, Player::Vertical).and_then(|v| {
            let h = self.mover_wins(sum, Player::Horizontal)?;
            Ok((v, h))
        });
        self.end_search(started);
        result
    }

    /// Decides `sum <= bound` (or `>=`) by searching `sum - bound` with the
    /// player who would refute the relation moving first.
    pub fn prove_relation(
        &mut self,
        sum: &SumPosition,
        bound: GameValue,
        relation: Relation,
    ) -> Result<bool, SolverError> {
        use crate::board::Player;
        let negated = self.store.negate(bound)?;
        let shifted = sum.clone().with_game(negated);
        // s - b <= 0 iff Vertical loses moving first
        let refuter = match relation {
            Relation::Le => Player::Vertical,
            Relation::Ge => Player::Horizontal,
        };
        let started = Instant::now();
        self.begin_search();
        let result = self.mover_wins(&shifted, refuter).map(|won| !won);
        self.end_search(started);
        result
    }

    /// Outcome class of the empty `m x n` rectangle. Tall rectangles are
    /// searched in transposed form with the players exchanged.
    pub fn solve_rect_outcome(&mut self, m: usize, n: usize) -> Result<OutcomeClass, SolverError> {
        if m > n {
            return Ok(self.solve_rect_outcome(n, m)?.swap_players());
        }
        let p = Position::rect(m, n)?;
        self.outcome_class(&SumPosition::board(p))
    }
}
