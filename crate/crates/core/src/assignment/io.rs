//! CSV and JSON forms of an assignment.
//!
//! CSV: one line per qubit, one integer column per time step, no header.
//! JSON: an envelope with the circuit name, network and cost next to the
//! matrix rows.

use serde::{Deserialize, Serialize};

use super::cost::{CostBreakdown, NetworkSpec, PenaltyConfig};
use super::matrix::AssignmentMatrix;
use crate::error::{Error, Result};

pub fn matrix_to_csv(matrix: &AssignmentMatrix) -> Result<String> {
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    for q in 0..matrix.num_qubits() {
        writer.write_record(matrix.row(q).iter().map(|v| v.to_string()))?;
    }
    let bytes = writer.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ascii"))
}

pub fn matrix_from_csv(text: &str, num_qpus: usize) -> Result<AssignmentMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (q, record) in reader.records().enumerate() {
        let record = record?;
        let row = record
            .iter()
            .map(|cell| {
                cell.parse::<usize>()
                    .map_err(|_| Error::Malformed(format!("row {q}: `{cell}` is not a QPU index")))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    AssignmentMatrix::from_rows(&rows, num_qpus)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssignmentRecord {
    pub circuit: String,
    pub num_qubits: usize,
    pub num_steps: usize,
    pub num_qpus: usize,
    pub capacities: Vec<usize>,
    pub delta: u64,
    pub cost: CostBreakdown,
    /// Row `q` lists qubit `q`'s QPU at each time step.
    pub matrix: Vec<Vec<usize>>,
}

impl AssignmentRecord {
    pub fn new(
        circuit: impl Into<String>,
        network: &NetworkSpec,
        penalty: PenaltyConfig,
        matrix: &AssignmentMatrix,
        cost: CostBreakdown,
    ) -> Self {
        AssignmentRecord {
            circuit: circuit.into(),
            num_qubits: matrix.num_qubits(),
            num_steps: matrix.num_steps(),
            num_qpus: network.num_qpus(),
            capacities: network.capacities().to_vec(),
            delta: penalty.delta,
            cost,
            matrix: matrix.rows(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn network(&self) -> Result<NetworkSpec> {
        NetworkSpec::new(self.capacities.clone())
    }

    pub fn assignment(&self) -> Result<AssignmentMatrix> {
        let m = AssignmentMatrix::from_rows(&self.matrix, self.num_qpus)?;
        if m.shape() != (self.num_qubits, self.num_steps) {
            return Err(Error::DimensionMismatch {
                rows: self.num_qubits,
                cols: self.num_steps,
                found_rows: m.num_qubits(),
                found_cols: m.num_steps(),
            });
        }
        Ok(m)
    }
}
