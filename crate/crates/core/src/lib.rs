//! Genus-2 mutant knots and the polynomial invariants that tell them apart.

pub mod analysis;
pub mod catalog;
pub mod cli;
pub mod diagram;
pub mod engine;
pub mod laurent;
pub mod mutation;
