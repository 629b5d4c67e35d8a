//! Circuit data model and ASAP layering.
//!
//! A [`Circuit`] is a sequence of [`Layer`]s. Each layer is one time step: the
//! gates it holds act on pairwise-disjoint qubits. The number of layers is the
//! column count `m` of an assignment matrix.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense qubit index in `0..num_qubits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QubitId(pub usize);

impl QubitId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for QubitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}", self.0)
    }
}

impl From<usize> for QubitId {
    fn from(index: usize) -> Self {
        QubitId(index)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    name: String,
    qubits: Vec<QubitId>,
    params: Vec<f64>,
}

impl Gate {
    /// Builds a gate, rejecting empty or repeated operands.
    pub fn new(
        name: impl Into<String>,
        qubits: impl IntoIterator<Item = impl Into<QubitId>>,
        params: Vec<f64>,
    ) -> Result<Self> {
        let name = name.into();
        let qubits: Vec<QubitId> = qubits.into_iter().map(Into::into).collect();
        if qubits.is_empty() {
            return Err(Error::EmptyGate(name));
        }
        for (i, q) in qubits.iter().enumerate() {
            if qubits[..i].contains(q) {
                return Err(Error::DuplicateQubit {
                    gate: name,
                    qubit: q.0,
                });
            }
        }
        Ok(Gate {
            name,
            qubits,
            params,
        })
    }

    /// Shorthand for a parameterless gate. Panics on invalid operands, so it
    /// is meant for literal gate lists.
    pub fn op(name: &str, qubits: &[usize]) -> Self {
        Gate::new(name, qubits.iter().copied(), Vec::new()).expect("valid gate operands")
    }

    /// Shorthand for a parameterized gate with literal operands.
    pub fn with_params(name: &str, qubits: &[usize], params: &[f64]) -> Self {
        Gate::new(name, qubits.iter().copied(), params.to_vec()).expect("valid gate operands")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn qubits(&self) -> &[QubitId] {
        &self.qubits
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn arity(&self) -> usize {
        self.qubits.len()
    }

    pub fn is_multi_qubit(&self) -> bool {
        self.qubits.len() > 1
    }
}

/// Gates executed in the same time step.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Layer {
    gates: Vec<Gate>,
}

impl Layer {
    /// Unchecked; [`Circuit::from_layers`] validates disjointness.
    pub fn new(gates: Vec<Gate>) -> Self {
        Layer { gates }
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn multi_qubit_gates(&self) -> impl Iterator<Item = &Gate> {
        self.gates.iter().filter(|g| g.is_multi_qubit())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    name: String,
    num_qubits: usize,
    layers: Vec<Layer>,
}

impl Circuit {
    /// Builds a circuit from explicit layers, checking qubit ranges and
    /// per-layer disjointness.
    pub fn from_layers(
        name: impl Into<String>,
        num_qubits: usize,
        layers: Vec<Layer>,
    ) -> Result<Self> {
        let mut seen = vec![usize::MAX; num_qubits];
        for (t, layer) in layers.iter().enumerate() {
            for gate in &layer.gates {
                for q in &gate.qubits {
                    check_range(gate, *q, num_qubits)?;
                    if seen[q.0] == t {
                        return Err(Error::Malformed(format!(
                            "layer {t} uses {q} in more than one gate"
                        )));
                    }
                    seen[q.0] = t;
                }
            }
        }
        Ok(Circuit {
            name: name.into(),
            num_qubits,
            layers,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    /// Number of time steps, the `m` of the assignment matrix.
    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    /// All gates, layer by layer.
    pub fn gates(&self) -> impl Iterator<Item = &Gate> {
        self.layers.iter().flat_map(|l| l.gates.iter())
    }

    pub fn gate_count(&self) -> usize {
        self.layers.iter().map(|l| l.gates.len()).sum()
    }

    pub fn multi_qubit_gate_count(&self) -> usize {
        self.gates().filter(|g| g.is_multi_qubit()).count()
    }

    /// Unordered interacting qubit pairs with multiplicities. Every unordered
    /// pair of operands of a multi-qubit gate counts once per gate occurrence.
    pub fn interacting_pairs(&self) -> BTreeMap<(QubitId, QubitId), usize> {
        let mut pairs = BTreeMap::new();
        for gate in self.gates().filter(|g| g.is_multi_qubit()) {
            let qs = gate.qubits();
            for i in 0..qs.len() {
                for j in i + 1..qs.len() {
                    let key = if qs[i] < qs[j] {
                        (qs[i], qs[j])
                    } else {
                        (qs[j], qs[i])
                    };
                    *pairs.entry(key).or_insert(0) += 1;
                }
            }
        }
        pairs
    }
}

fn check_range(gate: &Gate, q: QubitId, num_qubits: usize) -> Result<()> {
    if q.0 >= num_qubits {
        return Err(Error::QubitOutOfRange {
            gate: gate.name.clone(),
            qubit: q.0,
            num_qubits,
        });
    }
    Ok(())
}

/// ASAP layering: each gate lands in the layer right after the latest layer
/// already holding one of its qubits.
pub fn layerize(gates: impl IntoIterator<Item = Gate>, num_qubits: usize) -> Result<Circuit> {
    // next free layer per qubit
    let mut frontier = vec![0usize; num_qubits];
    let mut layers: Vec<Layer> = Vec::new();
    for gate in gates {
        for &q in &gate.qubits {
            check_range(&gate, q, num_qubits)?;
        }
        let t = gate.qubits.iter().map(|q| frontier[q.0]).max().unwrap_or(0);
        for q in &gate.qubits {
            frontier[q.0] = t + 1;
        }
        if t == layers.len() {
            layers.push(Layer::default());
        }
        layers[t].gates.push(gate);
    }
    Ok(Circuit {
        name: String::new(),
        num_qubits,
        layers,
    })
}
