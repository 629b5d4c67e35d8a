//! Teleportation cost of an assignment.
//!
//! Three additive terms:
//! * a move costs 1 each time a qubit's QPU differs from the previous step;
//! * a multi-qubit gate whose operands sit on `d` distinct QPUs at its step
//!   costs `d - 1` (1 for a split two-qubit gate);
//! * every (step, QPU) pair holding more qubits than the QPU's capacity
//!   costs `delta`.

use serde::{Deserialize, Serialize};

use super::matrix::{AssignmentMatrix, QpuIndex, MAX_QPUS};
use crate::circuit::Circuit;
use crate::error::{Error, Result};

/// QPU count and per-QPU qubit capacity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkSpec {
    capacities: Vec<usize>,
}

impl NetworkSpec {
    pub fn new(capacities: Vec<usize>) -> Result<Self> {
        if capacities.len() < 2 {
            return Err(Error::InvalidNetwork(format!(
                "need at least 2 QPUs, got {}",
                capacities.len()
            )));
        }
        if capacities.len() > MAX_QPUS {
            return Err(Error::InvalidNetwork(format!(
                "at most {MAX_QPUS} QPUs are supported"
            )));
        }
        if let Some(p) = capacities.iter().position(|&c| c == 0) {
            return Err(Error::InvalidNetwork(format!("QPU {p} has zero capacity")));
        }
        Ok(NetworkSpec { capacities })
    }

    /// `num_qpus` QPUs of capacity `ceil(num_qubits / num_qpus)` each.
    pub fn equal(num_qpus: usize, num_qubits: usize) -> Result<Self> {
        if num_qpus == 0 {
            return Err(Error::InvalidNetwork("need at least 2 QPUs, got 0".into()));
        }
        let cap = num_qubits.div_ceil(num_qpus).max(1);
        NetworkSpec::new(vec![cap; num_qpus])
    }

    pub fn num_qpus(&self) -> usize {
        self.capacities.len()
    }

    pub fn capacities(&self) -> &[usize] {
        &self.capacities
    }

    pub fn total_capacity(&self) -> usize {
        self.capacities.iter().sum()
    }

    /// Fails with [`Error::InfeasibleNetwork`] when the qubits cannot all fit.
    pub fn check_fits(&self, num_qubits: usize) -> Result<()> {
        if self.total_capacity() < num_qubits {
            return Err(Error::InfeasibleNetwork {
                capacity: self.total_capacity(),
                qubits: num_qubits,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PenaltyConfig {
    /// Charged once per overfull (step, QPU) pair.
    pub delta: u64,
}

impl Default for PenaltyConfig {
    fn default() -> Self {
        PenaltyConfig { delta: 100 }
    }
}

impl PenaltyConfig {
    pub fn new(delta: u64) -> Result<Self> {
        if delta == 0 {
            return Err(Error::InvalidConfig(
                "penalty delta must be at least 1".into(),
            ));
        }
        Ok(PenaltyConfig { delta })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct CostBreakdown {
    pub move_cost: u64,
    pub split_gate_cost: u64,
    pub capacity_penalty: u64,
    pub total: u64,
}

impl CostBreakdown {
    pub fn new(move_cost: u64, split_gate_cost: u64, capacity_penalty: u64) -> Self {
        CostBreakdown {
            move_cost,
            split_gate_cost,
            capacity_penalty,
            total: move_cost + split_gate_cost + capacity_penalty,
        }
    }

    /// Maximization-convention fitness.
    pub fn fitness(&self) -> i64 {
        -(self.total as i64)
    }

    /// Teleportations implied by the solution, ignoring penalties.
    pub fn teleportations(&self) -> u64 {
        self.move_cost + self.split_gate_cost
    }
}

/// Cost evaluator with the circuit's multi-qubit gates flattened for fast
/// repeated evaluation. Immutable, so it can be shared across threads.
#[derive(Debug, Clone)]
pub struct CostModel {
    num_qubits: usize,
    num_steps: usize,
    capacities: Vec<usize>,
    delta: u64,
    // (step, operand range) of every multi-qubit gate
    gates: Vec<(u32, u32, u32)>,
    operands: Vec<u32>,
}

impl CostModel {
    pub fn new(circuit: &Circuit, network: &NetworkSpec, penalty: PenaltyConfig) -> Self {
        let mut gates = Vec::new();
        let mut operands = Vec::new();
        for (t, layer) in circuit.layers().iter().enumerate() {
            for gate in layer.multi_qubit_gates() {
                let start = operands.len() as u32;
                operands.extend(gate.qubits().iter().map(|q| q.0 as u32));
                gates.push((t as u32, start, operands.len() as u32));
            }
        }
        CostModel {
            num_qubits: circuit.num_qubits(),
            num_steps: circuit.depth(),
            capacities: network.capacities().to_vec(),
            delta: penalty.delta,
            gates,
            operands,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn num_steps(&self) -> usize {
        self.num_steps
    }

    pub fn num_qpus(&self) -> usize {
        self.capacities.len()
    }

    pub fn check(&self, matrix: &AssignmentMatrix) -> Result<()> {
        if matrix.shape() != (self.num_qubits, self.num_steps) {
            return Err(Error::DimensionMismatch {
                rows: self.num_qubits,
                cols: self.num_steps,
                found_rows: matrix.num_qubits(),
                found_cols: matrix.num_steps(),
            });
        }
        if matrix.num_qpus() != self.num_qpus() {
            return Err(Error::InvalidNetwork(format!(
                "matrix addresses {} QPUs but the network has {}",
                matrix.num_qpus(),
                self.num_qpus()
            )));
        }
        matrix.check_entries()
    }

    pub fn evaluate(&self, matrix: &AssignmentMatrix) -> Result<CostBreakdown> {
        self.check(matrix)?;
        Ok(self.evaluate_unchecked(matrix))
    }

    /// Caller guarantees `matrix` passed [`CostModel::check`] or was derived
    /// from one that did.
    pub fn evaluate_unchecked(&self, matrix: &AssignmentMatrix) -> CostBreakdown {
        CostBreakdown::new(
            self.move_cost(matrix),
            self.split_cost(matrix),
            self.capacity_penalty(matrix),
        )
    }

    fn move_cost(&self, matrix: &AssignmentMatrix) -> u64 {
        let mut moves = 0u64;
        for t in 1..self.num_steps {
            let prev = matrix.column(t - 1);
            let cur = matrix.column(t);
            moves += prev.iter().zip(cur).filter(|(a, b)| a != b).count() as u64;
        }
        moves
    }

    fn split_cost(&self, matrix: &AssignmentMatrix) -> u64 {
        let mut cost = 0u64;
        let mut hosts: Vec<QpuIndex> = Vec::new();
        for &(t, start, end) in &self.gates {
            let col = matrix.column(t as usize);
            let ops = &self.operands[start as usize..end as usize];
            if let [a, b] = ops {
                cost += (col[*a as usize] != col[*b as usize]) as u64;
            } else {
                hosts.clear();
                hosts.extend(ops.iter().map(|&q| col[q as usize]));
                hosts.sort_unstable();
                hosts.dedup();
                cost += hosts.len() as u64 - 1;
            }
        }
        cost
    }

    fn capacity_penalty(&self, matrix: &AssignmentMatrix) -> u64 {
        let k = self.capacities.len();
        let mut counts = vec![0usize; k];
        let mut violations = 0u64;
        for t in 0..self.num_steps {
            counts.iter_mut().for_each(|c| *c = 0);
            for &p in matrix.column(t) {
                counts[p as usize] += 1;
            }
            violations += counts
                .iter()
                .zip(&self.capacities)
                .filter(|(c, cap)| c > cap)
                .count() as u64;
        }
        violations * self.delta
    }
}

/// Cost of `matrix` as a solution for `circuit` on `network`.
pub fn evaluate_cost(
    matrix: &AssignmentMatrix,
    circuit: &Circuit,
    network: &NetworkSpec,
    penalty: PenaltyConfig,
) -> Result<CostBreakdown> {
    CostModel::new(circuit, network, penalty).evaluate(matrix)
}

/// True when no QPU overflows and every multi-qubit gate is co-located, so
/// the teleportation count is exactly the move cost.
pub fn is_feasible(
    matrix: &AssignmentMatrix,
    circuit: &Circuit,
    network: &NetworkSpec,
) -> Result<bool> {
    let cost = evaluate_cost(matrix, circuit, network, PenaltyConfig::default())?;
    Ok(cost.capacity_penalty == 0 && cost.split_gate_cost == 0)
}
