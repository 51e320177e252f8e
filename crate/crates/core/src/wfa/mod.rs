//! Weighted automata and linear representations.

pub mod automaton;
pub mod representation;

pub use automaton::{DerivationKey, Edge, InitialWeight, WeightedAutomaton};
pub use representation::LinearRepresentation;

#[cfg(test)]
mod tests;
