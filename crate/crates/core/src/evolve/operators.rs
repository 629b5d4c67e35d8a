//! Crossover and mutation operators on assignment matrices. All operators
//! work column-wise or cell-wise and never leave `0..num_qpus`.

use rand::seq::{index, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::assignment::{AssignmentMatrix, QpuIndex};
use crate::error::{Error, Result};

/// Which parent a child column comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parent {
    A,
    B,
}

fn check_parents(a: &AssignmentMatrix, b: &AssignmentMatrix) -> Result<()> {
    if !a.same_shape(b) {
        return Err(Error::DimensionMismatch {
            rows: a.num_qubits(),
            cols: a.num_steps(),
            found_rows: b.num_qubits(),
            found_cols: b.num_steps(),
        });
    }
    Ok(())
}

/// Columns `[0, cut)` from `parent_a`, `[cut, m)` from `parent_b`.
pub fn single_point_crossover(
    parent_a: &AssignmentMatrix,
    parent_b: &AssignmentMatrix,
    cut: usize,
) -> Result<AssignmentMatrix> {
    check_parents(parent_a, parent_b)?;
    let m = parent_a.num_steps();
    if cut == 0 || cut >= m {
        return Err(Error::InvalidConfig(format!(
            "crossover cut {cut} must lie in 1..{m}"
        )));
    }
    let mut child = parent_a.clone();
    for t in cut..m {
        child.column_mut(t).copy_from_slice(parent_b.column(t));
    }
    Ok(child)
}

/// Column `t` copied from the parent named by `choice[t]`.
pub fn uniform_crossover(
    parent_a: &AssignmentMatrix,
    parent_b: &AssignmentMatrix,
    choice: &[Parent],
) -> Result<AssignmentMatrix> {
    check_parents(parent_a, parent_b)?;
    if choice.len() != parent_a.num_steps() {
        return Err(Error::InvalidConfig(format!(
            "column selector has length {}, expected {}",
            choice.len(),
            parent_a.num_steps()
        )));
    }
    let mut child = parent_a.clone();
    for (t, side) in choice.iter().enumerate() {
        if *side == Parent::B {
            child.column_mut(t).copy_from_slice(parent_b.column(t));
        }
    }
    Ok(child)
}

/// Rewrites one uniformly chosen cell with a uniformly chosen QPU (possibly
/// the same one).
pub fn mutate_cell<R: Rng + ?Sized>(matrix: &mut AssignmentMatrix, rng: &mut R) {
    let (n, m) = matrix.shape();
    if n == 0 || m == 0 {
        return;
    }
    let q = rng.random_range(0..n);
    let t = rng.random_range(0..m);
    let v = rng.random_range(0..matrix.num_qpus()) as QpuIndex;
    matrix.set(q, t, v);
}

/// Permutes a random subset of one row's entries. Subset size is uniform in
/// `[2, m]`.
pub fn mutate_row_shuffle<R: Rng + ?Sized>(matrix: &mut AssignmentMatrix, rng: &mut R) {
    let (n, m) = matrix.shape();
    if n == 0 || m < 2 {
        return;
    }
    let q = rng.random_range(0..n);
    let size = rng.random_range(2..=m);
    let cells = index::sample(rng, m, size).into_vec();
    let mut values: Vec<QpuIndex> = cells.iter().map(|&t| matrix.get(q, t)).collect();
    values.shuffle(rng);
    for (&t, v) in cells.iter().zip(values) {
        matrix.set(q, t, v);
    }
}

/// Permutes a random subset of one column's entries. Subset size is uniform
/// in `[2, n]`.
pub fn mutate_col_shuffle<R: Rng + ?Sized>(matrix: &mut AssignmentMatrix, rng: &mut R) {
    let (n, m) = matrix.shape();
    if m == 0 || n < 2 {
        return;
    }
    let t = rng.random_range(0..m);
    let size = rng.random_range(2..=n);
    let cells = index::sample(rng, n, size).into_vec();
    let col = matrix.column_mut(t);
    let mut values: Vec<QpuIndex> = cells.iter().map(|&q| col[q]).collect();
    values.shuffle(rng);
    for (&q, v) in cells.iter().zip(values) {
        col[q] = v;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mutation {
    Cell,
    RowShuffle,
    ColumnShuffle,
}

impl Mutation {
    pub const ALL: [Mutation; 3] = [
        Mutation::Cell,
        Mutation::RowShuffle,
        Mutation::ColumnShuffle,
    ];

    pub fn apply<R: Rng + ?Sized>(self, matrix: &mut AssignmentMatrix, rng: &mut R) {
        match self {
            Mutation::Cell => mutate_cell(matrix, rng),
            Mutation::RowShuffle => mutate_row_shuffle(matrix, rng),
            Mutation::ColumnShuffle => mutate_col_shuffle(matrix, rng),
        }
    }
}
