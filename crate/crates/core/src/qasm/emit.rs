use std::fmt::Write;

use crate::circuit::Circuit;

/// Canonical OpenQASM 2.0 text: one statement per line, a single `q`
/// register, lowercase gate names, gates in layer order.
pub fn emit_qasm(circuit: &Circuit) -> String {
    let mut out = String::new();
    if !circuit.name().is_empty() {
        let _ = writeln!(out, "// {}", circuit.name());
    }
    out.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    let _ = writeln!(out, "qreg q[{}];", circuit.num_qubits());
    for gate in circuit.gates() {
        out.push_str(&gate.name().to_ascii_lowercase());
        if !gate.params().is_empty() {
            out.push('(');
            for (i, p) in gate.params().iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                // shortest representation that round-trips
                let _ = write!(out, "{p:?}");
            }
            out.push(')');
        }
        for (i, q) in gate.qubits().iter().enumerate() {
            out.push_str(if i == 0 { " " } else { "," });
            let _ = write!(out, "q[{}]", q.0);
        }
        out.push_str(";\n");
    }
    out
}
