use thiserror::Error;

/// Errors produced while building circuits, parsing input, or validating
/// optimization problems.
#[derive(Debug, Error)]
pub enum Error {
    #[error("gate `{gate}` references qubit {qubit} but the circuit has {num_qubits} qubits")]
    QubitOutOfRange {
        gate: String,
        qubit: usize,
        num_qubits: usize,
    },

    #[error("gate `{gate}` uses qubit {qubit} more than once")]
    DuplicateQubit { gate: String, qubit: usize },

    #[error("gate `{0}` has no qubit operands")]
    EmptyGate(String),

    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unsupported OpenQASM feature `{feature}` at {line}:{column}")]
    Unsupported {
        feature: String,
        line: usize,
        column: usize,
    },

    #[error("matrix is {found_rows}x{found_cols} but the circuit needs {rows}x{cols}")]
    DimensionMismatch {
        rows: usize,
        cols: usize,
        found_rows: usize,
        found_cols: usize,
    },

    #[error("entry {value} at ({row}, {col}) is not a valid QPU index (k = {num_qpus})")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        num_qpus: usize,
    },

    #[error("infeasible network: total capacity {capacity} < {qubits} qubits")]
    InfeasibleNetwork { capacity: usize, qubits: usize },

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Structural and parse errors, as opposed to infeasibility or I/O.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::InfeasibleNetwork { .. } | Error::Io(_) | Error::Csv(_) | Error::Json(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
