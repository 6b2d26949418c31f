//! Exact arithmetic on short partizan games.
//!
//! Vertical plays Left throughout: a position is positive exactly when
//! Vertical wins it regardless of who moves first.

mod dyadic;
mod notation;
mod store;

use std::fmt;
use std::str::FromStr;

pub use dyadic::DyadicRational;
pub use store::{GameStore, GameValue, DEFAULT_NODE_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("fraction at byte {position} does not have a power-of-two denominator")]
    NonDyadic { position: usize },
    #[error("game store exceeded its budget of {budget} nodes")]
    NodeBudget { budget: usize },
}

/// Result of comparing two games in the partial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Comparison {
    Less,
    Equal,
    Greater,
    Confused,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparison::Less => "LESS",
            Comparison::Equal => "EQUAL",
            Comparison::Greater => "GREATER",
            Comparison::Confused => "CONFUSED",
        })
    }
}

/// Who wins under optimal play.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OutcomeClass {
    /// Vertical wins whoever starts.
    V,
    /// Horizontal wins whoever starts.
    H,
    /// The player to move wins.
    First,
    /// The player to move loses.
    Second,
}

impl OutcomeClass {
    pub const ALL: [OutcomeClass; 4] = [
        OutcomeClass::V,
        OutcomeClass::H,
        OutcomeClass::First,
        OutcomeClass::Second,
    ];

    /// Builds the class from the two first-mover results.
    pub fn from_first_mover_wins(vertical_first_wins: bool, horizontal_first_wins: bool) -> Self {
        match (vertical_first_wins, horizontal_first_wins) {
            (true, true) => OutcomeClass::First,
            (true, false) => OutcomeClass::V,
            (false, true) => OutcomeClass::H,
            (false, false) => OutcomeClass::Second,
        }
    }

    /// The class with the roles of Vertical and Horizontal exchanged.
    pub fn swap_players(self) -> Self {
        match self {
            OutcomeClass::V => OutcomeClass::H,
            OutcomeClass::H => OutcomeClass::V,
            other => other,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            OutcomeClass::V => 'V',
            OutcomeClass::H => 'H',
            OutcomeClass::First => '1',
            OutcomeClass::Second => '2',
        }
    }
}

impl fmt::Display for OutcomeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl FromStr for OutcomeClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "V" => Ok(OutcomeClass::V),
            "H" => Ok(OutcomeClass::H),
            "1" => Ok(OutcomeClass::First),
            "2" => Ok(OutcomeClass::Second),
            other => Err(format!("unknown outcome class {other:?}")),
        }
    }
}
