//! Solution encoding and the cost evaluator.

mod cost;
mod io;
mod matrix;

pub use cost::{evaluate_cost, is_feasible, CostBreakdown, CostModel, NetworkSpec, PenaltyConfig};
pub use io::{matrix_from_csv, matrix_to_csv, AssignmentRecord};
pub use matrix::{random_matrix, AssignmentMatrix, QpuIndex, MAX_QPUS};
