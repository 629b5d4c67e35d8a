use std::fmt::Write;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::operators::{single_point_crossover, uniform_crossover, Mutation, Parent};
use crate::assignment::{AssignmentMatrix, CostBreakdown, CostModel, NetworkSpec, PenaltyConfig};
use crate::circuit::Circuit;
use crate::error::{Error, Result};

/// Run parameters. Defaults are population 400, 1000 generations, crossover
/// and mutation rates 0.8 and `delta = 100`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EaConfig {
    pub population_size: usize,
    pub generations: usize,
    /// Probability that a child is bred by crossover rather than copied from
    /// its first parent.
    pub crossover_rate: f64,
    /// Probability that a child receives one mutation.
    pub mutation_rate: f64,
    /// Probability that a child is a fresh random solution instead.
    pub random_child_rate: f64,
    /// Share of random solutions that keep every qubit on one QPU for the
    /// whole circuit; the rest have independent uniform cells.
    pub static_init_fraction: f64,
    /// Best parents carried over unconditionally.
    pub elitism_count: usize,
    pub tournament_size: usize,
    pub master_seed: u64,
    pub penalty: PenaltyConfig,
}

impl Default for EaConfig {
    fn default() -> Self {
        EaConfig {
            population_size: 400,
            generations: 1000,
            crossover_rate: 0.8,
            mutation_rate: 0.8,
            random_child_rate: 0.05,
            static_init_fraction: 0.5,
            elitism_count: 1,
            tournament_size: 2,
            master_seed: 0,
            penalty: PenaltyConfig::default(),
        }
    }
}

impl EaConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.master_seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let rate = |name: &str, r: f64| {
            if (0.0..=1.0).contains(&r) {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!(
                    "{name} must lie in [0, 1], got {r}"
                )))
            }
        };
        rate("crossover_rate", self.crossover_rate)?;
        rate("mutation_rate", self.mutation_rate)?;
        rate("random_child_rate", self.random_child_rate)?;
        rate("static_init_fraction", self.static_init_fraction)?;
        if self.population_size < 2 {
            return Err(Error::InvalidConfig(
                "population_size must be at least 2".into(),
            ));
        }
        if self.elitism_count == 0 || self.elitism_count >= self.population_size {
            return Err(Error::InvalidConfig(
                "elitism_count must lie in 1..population_size".into(),
            ));
        }
        if self.tournament_size == 0 {
            return Err(Error::InvalidConfig(
                "tournament_size must be positive".into(),
            ));
        }
        if self.penalty.delta == 0 {
            return Err(Error::InvalidConfig(
                "penalty delta must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Individual {
    pub matrix: AssignmentMatrix,
    pub cost: CostBreakdown,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EaResult {
    pub best: Individual,
    /// Best total of the initial population followed by the best after each
    /// generation; never increases.
    pub best_cost_per_generation: Vec<u64>,
    pub mean_cost_per_generation: Vec<f64>,
    pub evaluations: u64,
    pub wall_time: Duration,
}

impl EaResult {
    pub fn generations_run(&self) -> usize {
        self.best_cost_per_generation.len().saturating_sub(1)
    }

    /// `generation,best_total,mean_total`, one row per generation starting
    /// with the initial population as generation 0.
    pub fn convergence_csv(&self) -> String {
        let mut out = String::from("generation,best_total,mean_total\n");
        for (g, (best, mean)) in self
            .best_cost_per_generation
            .iter()
            .zip(&self.mean_cost_per_generation)
            .enumerate()
        {
            let _ = writeln!(out, "{g},{best},{mean:.4}");
        }
        out
    }
}

const INIT_STREAM: u64 = 0;
const BREED_STREAM: u64 = 1;

/// Counter-based stream: the key alone fixes the sequence, so results do not
/// depend on which worker handles which child.
fn stream(master_seed: u64, domain: u64, generation: u64, index: u64) -> ChaCha8Rng {
    let mut seed = [0u8; 32];
    seed[..8].copy_from_slice(&master_seed.to_le_bytes());
    seed[8..16].copy_from_slice(&domain.to_le_bytes());
    seed[16..24].copy_from_slice(&generation.to_le_bytes());
    seed[24..].copy_from_slice(&index.to_le_bytes());
    ChaCha8Rng::from_seed(seed)
}

/// Fresh individual: with probability `static_fraction` a uniformly random
/// static placement, otherwise a matrix of independent uniform cells.
fn random_solution<R: Rng>(
    n: usize,
    m: usize,
    k: usize,
    static_fraction: f64,
    rng: &mut R,
) -> AssignmentMatrix {
    if rng.random_bool(static_fraction) {
        AssignmentMatrix::random_static(n, m, k, rng)
    } else {
        AssignmentMatrix::random(n, m, k, rng)
    }
}

fn tournament<'a, R: Rng>(
    population: &'a [Individual],
    size: usize,
    rng: &mut R,
) -> &'a Individual {
    let mut best = &population[rng.random_range(0..population.len())];
    for _ in 1..size {
        let cand = &population[rng.random_range(0..population.len())];
        if cand.cost.total < best.cost.total {
            best = cand;
        }
    }
    best
}

fn breed(
    population: &[Individual],
    model: &CostModel,
    config: &EaConfig,
    generation: u64,
    index: u64,
) -> Individual {
    let mut rng = stream(config.master_seed, BREED_STREAM, generation, index);
    let (n, m, k) = (model.num_qubits(), model.num_steps(), model.num_qpus());

    let mut matrix = if rng.random_bool(config.random_child_rate) {
        random_solution(n, m, k, config.static_init_fraction, &mut rng)
    } else {
        let a = &tournament(population, config.tournament_size, &mut rng).matrix;
        let b = &tournament(population, config.tournament_size, &mut rng).matrix;
        if rng.random_bool(config.crossover_rate) {
            // a one-column matrix has no interior cut point
            if m >= 2 && rng.random_bool(0.5) {
                let cut = rng.random_range(1..m);
                single_point_crossover(a, b, cut).expect("parents share a shape")
            } else {
                let choice: Vec<Parent> = (0..m)
                    .map(|_| {
                        if rng.random_bool(0.5) {
                            Parent::A
                        } else {
                            Parent::B
                        }
                    })
                    .collect();
                uniform_crossover(a, b, &choice).expect("parents share a shape")
            }
        } else {
            a.clone()
        }
    };
    if rng.random_bool(config.mutation_rate) {
        let op = Mutation::ALL[rng.random_range(0..Mutation::ALL.len())];
        op.apply(&mut matrix, &mut rng);
    }
    let cost = model.evaluate_unchecked(&matrix);
    Individual { matrix, cost }
}

/// Elites first, then the best of the remaining parents and all children.
/// Children precede parents on equal cost so the search can drift across
/// plateaus.
fn select_survivors(
    mut parents: Vec<Individual>,
    children: Vec<Individual>,
    config: &EaConfig,
) -> Vec<Individual> {
    parents.sort_by_key(|ind| ind.cost.total);
    let rest = parents.split_off(config.elitism_count);
    let mut next = parents;
    let mut pool = children;
    pool.extend(rest);
    pool.sort_by_key(|ind| ind.cost.total);
    pool.truncate(config.population_size - next.len());
    next.extend(pool);
    next.sort_by_key(|ind| ind.cost.total);
    next
}

fn mean_total(population: &[Individual]) -> f64 {
    population.iter().map(|i| i.cost.total as f64).sum::<f64>() / population.len() as f64
}

/// Evolves assignments for `circuit` on `network`.
///
/// Results depend only on the inputs and `config.master_seed`, never on the
/// size of the rayon pool the call runs in. Stops early once an individual
/// reaches cost 0.
pub fn run_ea(circuit: &Circuit, network: &NetworkSpec, config: &EaConfig) -> Result<EaResult> {
    config.validate()?;
    network.check_fits(circuit.num_qubits())?;
    let started = Instant::now();
    let model = CostModel::new(circuit, network, config.penalty);
    let (n, m, k) = (circuit.num_qubits(), circuit.depth(), network.num_qpus());

    let mut population: Vec<Individual> = (0..config.population_size as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(config.master_seed, INIT_STREAM, 0, i);
            let matrix = random_solution(n, m, k, config.static_init_fraction, &mut rng);
            let cost = model.evaluate_unchecked(&matrix);
            Individual { matrix, cost }
        })
        .collect();
    population.sort_by_key(|ind| ind.cost.total);
    let mut evaluations = population.len() as u64;

    let mut best_history = Vec::with_capacity(config.generations + 1);
    let mut mean_history = Vec::with_capacity(config.generations + 1);
    best_history.push(population[0].cost.total);
    mean_history.push(mean_total(&population));
    for generation in 0..config.generations as u64 {
        if population[0].cost.total == 0 {
            break;
        }
        let children: Vec<Individual> = (0..config.population_size as u64)
            .into_par_iter()
            .map(|i| breed(&population, &model, config, generation, i))
            .collect();
        evaluations += children.len() as u64;
        population = select_survivors(population, children, config);
        best_history.push(population[0].cost.total);
        mean_history.push(mean_total(&population));
    }

    Ok(EaResult {
        best: population.swap_remove(0),
        best_cost_per_generation: best_history,
        mean_cost_per_generation: mean_history,
        evaluations,
        wall_time: started.elapsed(),
    })
}
