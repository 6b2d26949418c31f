//! Domineering as a combinatorial game.
//!
//! - [`cgt`]: canonical short partizan games with slash notation.
//! - [`board`]: positions, moves, symmetries, and component splitting.
//! - [`solver`]: exact values of small positions, outcome search, bound proofs.
//! - [`rules`]: composition rules over outcome classes and their fixpoint.
//! - [`workbench`]: facts files, table rendering, and the verification suites.
//!
//! Vertical is Left: a board is positive exactly when Vertical wins it no
//! matter who starts.

pub mod board;
pub mod cgt;
pub mod rules;
pub mod solver;
pub mod workbench;

pub use board::{Move, Player, Position};
pub use cgt::{Comparison, DyadicRational, GameStore, GameValue, OutcomeClass};
