//! Multi-seed EA runs against the Kernighan-Lin baseline, aggregated into
//! report tables.

use std::fmt::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::assignment::NetworkSpec;
use crate::baseline::{build_interaction_graph, gp_cost, kernighan_lin};
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::evolve::{run_ea, EaConfig};
use crate::qasm::{generate_random_circuit, qft_circuit, read_qasm_file, RandomCircuitSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CircuitSource {
    Qasm(PathBuf),
    Random(RandomCircuitSpec),
    Qft(usize),
    Inline(Circuit),
}

impl CircuitSource {
    pub fn load(&self) -> Result<Circuit> {
        match self {
            CircuitSource::Qasm(path) => read_qasm_file(path),
            CircuitSource::Random(spec) => generate_random_circuit(spec),
            CircuitSource::Qft(n) => qft_circuit(*n),
            CircuitSource::Inline(c) => Ok(c.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub source: CircuitSource,
    /// `None` means two QPUs of capacity `ceil(n / 2)`.
    pub network: Option<NetworkSpec>,
    pub ea: EaConfig,
    pub num_seeds: usize,
    pub seed_base: u64,
}

impl ExperimentSpec {
    pub fn new(source: CircuitSource) -> Self {
        ExperimentSpec {
            source,
            network: None,
            ea: EaConfig::default(),
            num_seeds: 5,
            seed_base: 0,
        }
    }

    pub fn seeds(&self) -> impl Iterator<Item = u64> {
        let base = self.seed_base;
        (0..self.num_seeds as u64).map(move |i| base + i)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub circuit: String,
    pub num_qubits: usize,
    pub depth: usize,
    pub capacities: Vec<usize>,
    pub seeds: Vec<u64>,
    pub ea_totals: Vec<u64>,
    pub ea_mean: f64,
    /// Mean move and split components of the per-seed bests.
    pub ea_move_mean: f64,
    pub ea_split_mean: f64,
    /// Absent when the network is not a bisection.
    pub gp_total: Option<u64>,
    pub ea_wall_times: Vec<Duration>,
    pub gp_wall_time: Duration,
}

fn mean(values: impl ExactSizeIterator<Item = u64>) -> f64 {
    let n = values.len();
    if n == 0 {
        return 0.0;
    }
    values.map(|v| v as f64).sum::<f64>() / n as f64
}

/// Runs the EA once per seed and the baseline once (seeded with
/// `seed_base`).
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    if spec.num_seeds == 0 {
        return Err(Error::InvalidConfig("num_seeds must be at least 1".into()));
    }
    let circuit = spec.source.load()?;
    let network = match &spec.network {
        Some(net) => net.clone(),
        None => NetworkSpec::equal(2, circuit.num_qubits())?,
    };
    network.check_fits(circuit.num_qubits())?;
    spec.ea.validate()?;

    let mut totals = Vec::with_capacity(spec.num_seeds);
    let mut moves = Vec::with_capacity(spec.num_seeds);
    let mut splits = Vec::with_capacity(spec.num_seeds);
    let mut walls = Vec::with_capacity(spec.num_seeds);
    for seed in spec.seeds() {
        let result = run_ea(&circuit, &network, &spec.ea.clone().with_seed(seed))?;
        totals.push(result.best.cost.total);
        moves.push(result.best.cost.move_cost);
        splits.push(result.best.cost.split_gate_cost);
        walls.push(result.wall_time);
    }

    let started = Instant::now();
    let gp_total = if network.num_qpus() == 2 && circuit.num_qubits() >= 2 {
        let graph = build_interaction_graph(&circuit);
        Some(gp_cost(&kernighan_lin(&graph, spec.seed_base)?, &graph))
    } else {
        None
    };
    let gp_wall_time = started.elapsed();

    Ok(ExperimentReport {
        circuit: circuit.name().to_string(),
        num_qubits: circuit.num_qubits(),
        depth: circuit.depth(),
        capacities: network.capacities().to_vec(),
        seeds: spec.seeds().collect(),
        ea_mean: mean(totals.iter().copied()),
        ea_move_mean: mean(moves.into_iter()),
        ea_split_mean: mean(splits.into_iter()),
        ea_totals: totals,
        gp_total,
        ea_wall_times: walls,
        gp_wall_time,
    })
}

/// Runs every experiment; experiments proceed concurrently but the reports
/// come back in input order and are independent of scheduling.
pub fn sweep(specs: &[ExperimentSpec]) -> Result<Vec<ExperimentReport>> {
    specs.par_iter().map(run_experiment).collect()
}

/// Random circuits (4 and 8 qubits, target depths 10 to 50) followed by QFT
/// on 4, 8, 16, 32 and 50 qubits; two equal-capacity QPUs throughout.
pub fn paper_suite(num_seeds: usize, ea: &EaConfig) -> Vec<ExperimentSpec> {
    let mut sources = Vec::new();
    for n in [4usize, 8] {
        for depth in [10usize, 20, 30, 40, 50] {
            sources.push(CircuitSource::Random(RandomCircuitSpec::new(
                n,
                depth,
                random_fixture_seed(n, depth),
            )));
        }
    }
    for n in [4usize, 8, 16, 32, 50] {
        sources.push(CircuitSource::Qft(n));
    }
    sources
        .into_iter()
        .map(|source| ExperimentSpec {
            num_seeds,
            ea: ea.clone(),
            ..ExperimentSpec::new(source)
        })
        .collect()
}

/// Generator seed of the suite's random circuit with `n` qubits and the
/// given target depth.
pub fn random_fixture_seed(num_qubits: usize, target_depth: usize) -> u64 {
    (num_qubits * 1000 + target_depth) as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    Csv,
    Markdown,
}

const COLUMNS: [&str; 10] = [
    "qubits",
    "depth",
    "ea_mean",
    "gp_result",
    "circuit",
    "capacities",
    "seeds",
    "ea_totals",
    "ea_move_mean",
    "ea_split_mean",
];

/// Renders reports as CSV or a Markdown table. Wall times are left out so
/// the text depends only on the experiment inputs.
pub fn emit_report(reports: &[ExperimentReport], format: ReportFormat) -> String {
    let rows: Vec<[String; 10]> = reports
        .iter()
        .map(|r| {
            let join = |v: &[String]| v.join(" ");
            [
                r.num_qubits.to_string(),
                r.depth.to_string(),
                format!("{:.1}", r.ea_mean),
                r.gp_total.map_or_else(String::new, |g| g.to_string()),
                r.circuit.clone(),
                join(
                    &r.capacities
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>(),
                ),
                join(&r.seeds.iter().map(ToString::to_string).collect::<Vec<_>>()),
                join(
                    &r.ea_totals
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>(),
                ),
                format!("{:.1}", r.ea_move_mean),
                format!("{:.1}", r.ea_split_mean),
            ]
        })
        .collect();

    let mut out = String::new();
    match format {
        ReportFormat::Csv => {
            out.push_str(&COLUMNS.join(","));
            out.push('\n');
            for row in rows {
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
        ReportFormat::Markdown => {
            let _ = writeln!(out, "| {} |", COLUMNS.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(COLUMNS.len()));
            for row in rows {
                let _ = writeln!(out, "| {} |", row.join(" | "));
            }
        }
    }
    out
}
