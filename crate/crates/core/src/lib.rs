//! Freezing, bounded-change and convergent cellular automata.

pub mod ca;
pub mod cli;
pub mod classify;
pub mod commproto;
pub mod error;
pub mod minsky;
pub mod predict;
pub mod szone;
pub mod zoo;

pub use ca::{Alphabet, CellularAutomaton, Configuration, Neighborhood, Pattern, Pos, State};
pub use error::{Error, Result};
