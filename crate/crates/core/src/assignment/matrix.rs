use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// QPU label stored in an assignment cell.
pub type QpuIndex = u16;

/// Upper bound on the number of QPUs an [`AssignmentMatrix`] can address.
pub const MAX_QPUS: usize = QpuIndex::MAX as usize + 1;

/// `n × m` matrix of QPU indices: entry `(q, t)` is where qubit `q` lives
/// during time step `t`.
///
/// Stored column-major so that one time step is a contiguous slice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AssignmentMatrix {
    num_qubits: usize,
    num_steps: usize,
    num_qpus: usize,
    entries: Vec<QpuIndex>,
}

impl AssignmentMatrix {
    /// All-zero matrix.
    pub fn zeros(num_qubits: usize, num_steps: usize, num_qpus: usize) -> Self {
        assert!(
            (1..=MAX_QPUS).contains(&num_qpus),
            "QPU count out of range"
        );
        AssignmentMatrix {
            num_qubits,
            num_steps,
            num_qpus,
            entries: vec![0; num_qubits * num_steps],
        }
    }

    /// Builds a matrix from qubit rows, validating shape and entry range.
    pub fn from_rows<R: AsRef<[usize]>>(rows: &[R], num_qpus: usize) -> Result<Self> {
        if num_qpus == 0 || num_qpus > MAX_QPUS {
            return Err(Error::InvalidNetwork(format!(
                "QPU count must be in 1..={MAX_QPUS}, got {num_qpus}"
            )));
        }
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.as_ref().len());
        let mut matrix = AssignmentMatrix::zeros(n, m, num_qpus);
        for (q, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != m {
                return Err(Error::Malformed(format!(
                    "row {q} has {} entries, expected {m}",
                    row.len()
                )));
            }
            for (t, &v) in row.iter().enumerate() {
                if v >= num_qpus {
                    return Err(Error::EntryOutOfRange {
                        row: q,
                        col: t,
                        value: v,
                        num_qpus,
                    });
                }
                matrix.set(q, t, v as QpuIndex);
            }
        }
        Ok(matrix)
    }

    /// Each entry drawn independently and uniformly from `0..num_qpus`.
    pub fn random<R: Rng + ?Sized>(
        num_qubits: usize,
        num_steps: usize,
        num_qpus: usize,
        rng: &mut R,
    ) -> Self {
        let mut matrix = AssignmentMatrix::zeros(num_qubits, num_steps, num_qpus);
        let k = num_qpus as QpuIndex - 1;
        for e in &mut matrix.entries {
            *e = rng.random_range(0..=k);
        }
        matrix
    }

    /// Every qubit on one uniformly chosen QPU for all steps.
    pub fn random_static<R: Rng + ?Sized>(
        num_qubits: usize,
        num_steps: usize,
        num_qpus: usize,
        rng: &mut R,
    ) -> Self {
        let mut matrix = AssignmentMatrix::zeros(num_qubits, num_steps, num_qpus);
        let k = num_qpus as QpuIndex - 1;
        let placement: Vec<QpuIndex> = (0..num_qubits).map(|_| rng.random_range(0..=k)).collect();
        for t in 0..num_steps {
            matrix.column_mut(t).copy_from_slice(&placement);
        }
        matrix
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    #[inline]
    pub fn num_steps(&self) -> usize {
        self.num_steps
    }

    #[inline]
    pub fn num_qpus(&self) -> usize {
        self.num_qpus
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.num_qubits, self.num_steps)
    }

    pub fn same_shape(&self, other: &AssignmentMatrix) -> bool {
        self.shape() == other.shape() && self.num_qpus == other.num_qpus
    }

    #[inline]
    pub fn get(&self, qubit: usize, step: usize) -> QpuIndex {
        self.entries[step * self.num_qubits + qubit]
    }

    /// Panics if `value` is not a valid QPU index.
    #[inline]
    pub fn set(&mut self, qubit: usize, step: usize, value: QpuIndex) {
        assert!((value as usize) < self.num_qpus, "QPU index out of range");
        self.entries[step * self.num_qubits + qubit] = value;
    }

    #[inline]
    pub fn column(&self, step: usize) -> &[QpuIndex] {
        let n = self.num_qubits;
        &self.entries[step * n..(step + 1) * n]
    }

    pub(crate) fn column_mut(&mut self, step: usize) -> &mut [QpuIndex] {
        let n = self.num_qubits;
        &mut self.entries[step * n..(step + 1) * n]
    }

    pub fn row(&self, qubit: usize) -> Vec<QpuIndex> {
        (0..self.num_steps).map(|t| self.get(qubit, t)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.num_qubits)
            .map(|q| {
                (0..self.num_steps)
                    .map(|t| self.get(q, t) as usize)
                    .collect()
            })
            .collect()
    }

    /// Number of differing cells.
    pub fn hamming(&self, other: &AssignmentMatrix) -> usize {
        self.entries
            .iter()
            .zip(&other.entries)
            .filter(|(a, b)| a != b)
            .count()
    }

    /// Relabels QPUs: entry `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[QpuIndex]) -> AssignmentMatrix {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = perm[*e as usize];
        }
        out
    }

    /// Copy with an extra step inserted after `step` that repeats its column.
    pub fn with_repeated_column(&self, step: usize) -> AssignmentMatrix {
        let n = self.num_qubits;
        let mut entries = Vec::with_capacity(self.entries.len() + n);
        entries.extend_from_slice(&self.entries[..(step + 1) * n]);
        entries.extend_from_slice(self.column(step));
        entries.extend_from_slice(&self.entries[(step + 1) * n..]);
        AssignmentMatrix {
            num_steps: self.num_steps + 1,
            entries,
            ..*self
        }
    }

    pub(crate) fn check_entries(&self) -> Result<()> {
        for t in 0..self.num_steps {
            for (q, &v) in self.column(t).iter().enumerate() {
                if v as usize >= self.num_qpus {
                    return Err(Error::EntryOutOfRange {
                        row: q,
                        col: t,
                        value: v as usize,
                        num_qpus: self.num_qpus,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Uniform random matrix; see [`AssignmentMatrix::random`].
pub fn random_matrix<R: Rng + ?Sized>(
    num_qubits: usize,
    num_steps: usize,
    num_qpus: usize,
    rng: &mut R,
) -> AssignmentMatrix {
    AssignmentMatrix::random(num_qubits, num_steps, num_qpus, rng)
}
