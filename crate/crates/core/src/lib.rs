//! Finite-model laboratory for collapse posets.
//!
//! Builds Laver and Lévy collapse posets over small [`frame::CardinalFrame`]s,
//! the club-code block factorization of the upper collapse, term forcing over
//! finite posets, and the composed projection onto the two-step iteration, and
//! checks every structural claim about them exhaustively.

pub mod bitset;
pub mod club;
pub mod collapse;
pub mod config;
pub mod error;
pub mod factorization;
pub mod frame;
pub mod poset;
pub mod suite;
pub mod term;

pub use error::{Error, Result};
