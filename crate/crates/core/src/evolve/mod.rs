//! Evolutionary search over assignment matrices.

mod engine;
mod operators;

pub use engine::{run_ea, EaConfig, EaResult, Individual};
pub use operators::{
    mutate_cell, mutate_col_shuffle, mutate_row_shuffle, single_point_crossover, uniform_crossover,
    Mutation, Parent,
};
