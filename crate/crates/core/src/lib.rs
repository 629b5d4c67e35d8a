//! Qubit-to-QPU assignment for distributed quantum circuits.
//!
//! A circuit is layered into time steps; a solution assigns every qubit to a
//! QPU at every step. Cost counts qubit moves between consecutive steps, split
//! multi-qubit gates, and capacity overflows. [`evolve::run_ea`] searches
//! assignments with an evolutionary algorithm; [`baseline`] provides a static
//! Kernighan-Lin bisection for comparison, and [`mod@bench`] runs both over
//! benchmark suites.

pub mod assignment;
pub mod baseline;
pub mod bench;
pub mod circuit;
pub mod error;
pub mod evolve;
pub mod qasm;

pub use assignment::{evaluate_cost, AssignmentMatrix, CostBreakdown, NetworkSpec, PenaltyConfig};
pub use circuit::{layerize, Circuit, Gate, Layer, QubitId};
pub use error::{Error, Result};
pub use evolve::{run_ea, EaConfig, EaResult};
