//! OpenQASM 2.0 ingestion and emission, plus built-in circuit generators.

mod emit;
mod lexer;
mod parser;
mod synth;

pub use emit::emit_qasm;
pub use parser::{parse_program, parse_qasm, QasmProgram};
pub use synth::{
    decompose_all, generate_random_circuit, qft_circuit, qft_gates, random_gates, Basis,
    RandomCircuitSpec, RANDOM_1Q_GATES, RANDOM_2Q_GATES,
};

use std::path::Path;

use crate::circuit::Circuit;
use crate::error::Result;

/// Reads a `.qasm` file; the circuit is named after the file stem.
pub fn read_qasm_file(path: impl AsRef<Path>) -> Result<Circuit> {
    let path = path.as_ref();
    let source = std::fs::read_to_string(path)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(parse_qasm(&source)?.with_name(name))
}
