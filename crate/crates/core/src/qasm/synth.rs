//! Circuit generators: seeded random circuits and the QFT family, both
//! lowered to single-qubit gates plus `cx`.
//!
//! Random-circuit distribution (fixed, part of the generator's contract):
//! every pre-decomposition layer shuffles all qubits and walks them in order.
//! While at least two qubits remain, the next gate is two-qubit with
//! probability 1/2, otherwise single-qubit. Gate names are drawn uniformly
//! from [`RANDOM_1Q_GATES`] or [`RANDOM_2Q_GATES`]; rotation angles are
//! uniform in `[0, 2π)`. Every layer therefore touches every qubit, so the
//! pre-decomposition depth equals `target_depth`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{layerize, Circuit, Gate};
use crate::error::{Error, Result};

pub const RANDOM_1Q_GATES: &[&str] = &[
    "h", "x", "y", "z", "s", "sdg", "t", "tdg", "sx", "rx", "ry", "rz", "u",
];
pub const RANDOM_2Q_GATES: &[&str] = &[
    "cx", "cy", "cz", "ch", "swap", "crx", "cry", "crz", "cp", "rzz",
];

/// Target gate basis for decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// `h`, `sx`, `x`, `y`, `z`, `s`, `sdg`, `t`, `tdg`, `rx`, `ry`, `rz` and `cx`.
    #[default]
    RotationsCx,
}

impl Basis {
    pub fn contains(self, name: &str) -> bool {
        match self {
            Basis::RotationsCx => matches!(
                name,
                "h" | "sx"
                    | "x"
                    | "y"
                    | "z"
                    | "s"
                    | "sdg"
                    | "t"
                    | "tdg"
                    | "rx"
                    | "ry"
                    | "rz"
                    | "cx"
                    | "id"
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomCircuitSpec {
    pub num_qubits: usize,
    pub target_depth: usize,
    pub seed: u64,
    #[serde(default)]
    pub basis: Basis,
}

impl RandomCircuitSpec {
    pub fn new(num_qubits: usize, target_depth: usize, seed: u64) -> Self {
        RandomCircuitSpec {
            num_qubits,
            target_depth,
            seed,
            basis: Basis::RotationsCx,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_qubits < 2 {
            return Err(Error::InvalidConfig(
                "random circuits need at least 2 qubits".into(),
            ));
        }
        if self.target_depth == 0 {
            return Err(Error::InvalidConfig("target depth must be positive".into()));
        }
        Ok(())
    }
}

/// Gate list before decomposition.
pub fn random_gates(spec: &RandomCircuitSpec) -> Result<Vec<Gate>> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut order: Vec<usize> = (0..spec.num_qubits).collect();
    let mut gates = Vec::new();
    for _ in 0..spec.target_depth {
        order.shuffle(&mut rng);
        let mut i = 0;
        while i < order.len() {
            let two = order.len() - i >= 2 && rng.random_bool(0.5);
            if two {
                let name = RANDOM_2Q_GATES[rng.random_range(0..RANDOM_2Q_GATES.len())];
                let params = angles(&mut rng, two_qubit_params(name));
                gates.push(Gate::with_params(name, &order[i..i + 2], &params));
                i += 2;
            } else {
                let name = RANDOM_1Q_GATES[rng.random_range(0..RANDOM_1Q_GATES.len())];
                let params = angles(&mut rng, one_qubit_params(name));
                gates.push(Gate::with_params(name, &order[i..i + 1], &params));
                i += 1;
            }
        }
    }
    Ok(gates)
}

fn one_qubit_params(name: &str) -> usize {
    match name {
        "rx" | "ry" | "rz" => 1,
        "u" => 3,
        _ => 0,
    }
}

fn two_qubit_params(name: &str) -> usize {
    match name {
        "crx" | "cry" | "crz" | "cp" | "rzz" => 1,
        _ => 0,
    }
}

fn angles(rng: &mut impl Rng, count: usize) -> Vec<f64> {
    (0..count).map(|_| rng.random_range(0.0..TAU)).collect()
}

/// Seeded random circuit, decomposed to `spec.basis` and layered.
pub fn generate_random_circuit(spec: &RandomCircuitSpec) -> Result<Circuit> {
    let gates = random_gates(spec)?;
    let lowered = decompose_all(&gates, spec.basis);
    Ok(layerize(lowered, spec.num_qubits)?.with_name(format!(
        "random_n{}_d{}_s{}",
        spec.num_qubits, spec.target_depth, spec.seed
    )))
}

pub fn decompose_all(gates: &[Gate], basis: Basis) -> Vec<Gate> {
    let mut out = Vec::with_capacity(gates.len() * 3);
    for g in gates {
        decompose_into(g, basis, &mut out);
    }
    out
}

fn decompose_into(gate: &Gate, basis: Basis, out: &mut Vec<Gate>) {
    if basis.contains(gate.name()) {
        out.push(gate.clone());
        return;
    }
    let q: Vec<usize> = gate.qubits().iter().map(|q| q.0).collect();
    let p = gate.params();
    let mut push = |name: &str, qubits: &[usize], params: &[f64]| {
        decompose_into(&Gate::with_params(name, qubits, params), basis, out);
    };
    match (gate.name(), q.as_slice()) {
        ("u" | "u3", &[t]) => {
            push("rz", &[t], &[p[2]]);
            push("ry", &[t], &[p[0]]);
            push("rz", &[t], &[p[1]]);
        }
        ("u2", &[t]) => {
            push("rz", &[t], &[p[1]]);
            push("ry", &[t], &[FRAC_PI_2]);
            push("rz", &[t], &[p[0]]);
        }
        ("p" | "u1", &[t]) => push("rz", &[t], &[p[0]]),
        ("sxdg", &[t]) => push("rx", &[t], &[-FRAC_PI_2]),
        ("cz", &[c, t]) => {
            push("h", &[t], &[]);
            push("cx", &[c, t], &[]);
            push("h", &[t], &[]);
        }
        ("cy", &[c, t]) => {
            push("sdg", &[t], &[]);
            push("cx", &[c, t], &[]);
            push("s", &[t], &[]);
        }
        ("ch", &[c, t]) => {
            push("s", &[t], &[]);
            push("h", &[t], &[]);
            push("t", &[t], &[]);
            push("cx", &[c, t], &[]);
            push("tdg", &[t], &[]);
            push("h", &[t], &[]);
            push("sdg", &[t], &[]);
        }
        ("swap", &[a, b]) => {
            push("cx", &[a, b], &[]);
            push("cx", &[b, a], &[]);
            push("cx", &[a, b], &[]);
        }
        ("cp" | "cu1", &[c, t]) => {
            push("p", &[c], &[p[0] / 2.0]);
            push("cx", &[c, t], &[]);
            push("p", &[t], &[-p[0] / 2.0]);
            push("cx", &[c, t], &[]);
            push("p", &[t], &[p[0] / 2.0]);
        }
        ("crz", &[c, t]) => {
            push("rz", &[t], &[p[0] / 2.0]);
            push("cx", &[c, t], &[]);
            push("rz", &[t], &[-p[0] / 2.0]);
            push("cx", &[c, t], &[]);
        }
        ("cry", &[c, t]) => {
            push("ry", &[t], &[p[0] / 2.0]);
            push("cx", &[c, t], &[]);
            push("ry", &[t], &[-p[0] / 2.0]);
            push("cx", &[c, t], &[]);
        }
        ("crx", &[c, t]) => {
            push("h", &[t], &[]);
            push("crz", &[c, t], &[p[0]]);
            push("h", &[t], &[]);
        }
        ("rzz", &[a, b]) => {
            push("cx", &[a, b], &[]);
            push("rz", &[b], &[p[0]]);
            push("cx", &[a, b], &[]);
        }
        ("rxx", &[a, b]) => {
            push("h", &[a], &[]);
            push("h", &[b], &[]);
            push("rzz", &[a, b], &[p[0]]);
            push("h", &[a], &[]);
            push("h", &[b], &[]);
        }
        ("ccx", &[a, b, t]) => {
            push("h", &[t], &[]);
            push("cx", &[b, t], &[]);
            push("tdg", &[t], &[]);
            push("cx", &[a, t], &[]);
            push("t", &[t], &[]);
            push("cx", &[b, t], &[]);
            push("tdg", &[t], &[]);
            push("cx", &[a, t], &[]);
            push("t", &[b], &[]);
            push("t", &[t], &[]);
            push("h", &[t], &[]);
            push("cx", &[a, b], &[]);
            push("t", &[a], &[]);
            push("tdg", &[b], &[]);
            push("cx", &[a, b], &[]);
        }
        ("cswap", &[a, b, c]) => {
            push("cx", &[c, b], &[]);
            push("ccx", &[a, b, c], &[]);
            push("cx", &[c, b], &[]);
        }
        // anything else is kept as is
        _ => out.push(gate.clone()),
    }
}

/// Textbook QFT on `num_qubits` qubits: for each qubit from the top, a
/// Hadamard followed by controlled phases to every lower qubit, then the
/// final qubit-reversal swaps.
pub fn qft_gates(num_qubits: usize) -> Vec<Gate> {
    let mut gates = Vec::new();
    for j in (0..num_qubits).rev() {
        gates.push(Gate::op("h", &[j]));
        for k in (0..j).rev() {
            let lam = PI * 2f64.powi(k as i32 - j as i32);
            gates.push(Gate::with_params("cp", &[j, k], &[lam]));
        }
    }
    for i in 0..num_qubits / 2 {
        gates.push(Gate::op("swap", &[i, num_qubits - 1 - i]));
    }
    gates
}

/// QFT lowered to single-qubit gates and `cx`: each controlled phase becomes
/// two `cx`, each swap three.
pub fn qft_circuit(num_qubits: usize) -> Result<Circuit> {
    if num_qubits == 0 {
        return Err(Error::InvalidConfig("QFT needs at least one qubit".into()));
    }
    let lowered = decompose_all(&qft_gates(num_qubits), Basis::RotationsCx);
    Ok(layerize(lowered, num_qubits)?.with_name(format!("qft_{num_qubits}")))
}
