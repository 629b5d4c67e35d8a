use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use telepart::assignment::{AssignmentRecord, NetworkSpec, PenaltyConfig};
use telepart::baseline::{build_interaction_graph, gp_cost, kernighan_lin};
use telepart::bench::{emit_report, paper_suite, sweep, ReportFormat};
use telepart::qasm::{
    decompose_all, emit_qasm, generate_random_circuit, read_qasm_file, Basis, RandomCircuitSpec,
};
use telepart::{layerize, run_ea, Circuit, EaConfig, Error, Result};

#[derive(Parser)]
#[command(
    name = "telepart",
    version,
    about = "Time-sliced qubit-to-QPU assignment for distributed quantum circuits",
    after_help = "Any subcommand accepts `--config FILE`: one `flag = value` per line, \
                  named like the long flags. Flags given on the command line win."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve an assignment matrix for a circuit
    #[command(args_override_self = true)]
    Partition(PartitionArgs),
    /// Static Kernighan-Lin bisection of the interaction graph
    #[command(args_override_self = true)]
    Baseline(BaselineArgs),
    /// Run a benchmark suite and print a report table
    #[command(args_override_self = true)]
    Bench(BenchArgs),
    /// Generate a random circuit as OpenQASM 2.0
    #[command(args_override_self = true)]
    Random(RandomArgs),
}

#[derive(Args)]
struct EaArgs {
    #[arg(long, default_value_t = EaConfig::default().population_size)]
    pop: usize,
    #[arg(long, default_value_t = EaConfig::default().generations)]
    gens: usize,
    #[arg(long, default_value_t = EaConfig::default().crossover_rate)]
    cx_rate: f64,
    #[arg(long, default_value_t = EaConfig::default().mutation_rate)]
    mut_rate: f64,
    #[arg(long, default_value_t = PenaltyConfig::default().delta)]
    delta: u64,
    /// Worker threads (defaults to all cores); results do not depend on it
    #[arg(long)]
    threads: Option<usize>,
}

impl EaArgs {
    fn config(&self) -> Result<EaConfig> {
        let config = EaConfig {
            population_size: self.pop,
            generations: self.gens,
            crossover_rate: self.cx_rate,
            mutation_rate: self.mut_rate,
            penalty: PenaltyConfig::new(self.delta)?,
            ..EaConfig::default()
        };
        config.validate()?;
        Ok(config)
    }
}

#[derive(Args)]
struct InputArgs {
    circuit: PathBuf,
    /// Rewrite gates into single-qubit rotations and cx before layering
    #[arg(long)]
    decompose: bool,
}

impl InputArgs {
    fn load(&self) -> Result<Circuit> {
        let circuit = read_qasm_file(&self.circuit)?;
        if !self.decompose {
            return Ok(circuit);
        }
        let gates: Vec<_> = circuit.gates().cloned().collect();
        Ok(layerize(
            decompose_all(&gates, Basis::RotationsCx),
            circuit.num_qubits(),
        )?
        .with_name(circuit.name()))
    }
}

#[derive(Args)]
struct PartitionArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = 2)]
    qpus: usize,
    /// `auto` (equal split), one value for every QPU, or a comma-separated list
    #[arg(long, default_value = "auto")]
    capacity: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    ea: EaArgs,
    /// Assignment JSON destination (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Per-generation best/mean cost as CSV
    #[arg(long)]
    convergence: Option<PathBuf>,
}

#[derive(Args)]
struct BaselineArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the interaction graph as a `u v weight` edge list
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Paper,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Markdown,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum, default_value = "paper")]
    suite: Suite,
    #[arg(long, default_value_t = 5)]
    seeds: usize,
    #[arg(long, default_value_t = 0)]
    seed_base: u64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[command(flatten)]
    ea: EaArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RandomArgs {
    #[arg(long)]
    qubits: usize,
    #[arg(long)]
    depth: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = match expand_config(std::env::args().collect()) {
        Ok(args) => args,
        Err(e) => return fail(&e),
    };
    let cli = Cli::parse_from(args);
    let outcome = match cli.command {
        Command::Partition(a) => partition(a),
        Command::Baseline(a) => baseline(a),
        Command::Bench(a) => bench(a),
        Command::Random(a) => random(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(match e {
        Error::InfeasibleNetwork { .. } => 3,
        Error::Io(_) => 1,
        _ => 2,
    })
}

/// Splices `--config FILE` entries in right after the subcommand name so that
/// later command-line flags override them.
fn expand_config(mut args: Vec<String>) -> Result<Vec<String>> {
    let Some(pos) = args
        .iter()
        .position(|a| a == "--config" || a.starts_with("--config="))
    else {
        return Ok(args);
    };
    let path = match args[pos].strip_prefix("--config=") {
        Some(p) => {
            let p = p.to_string();
            args.remove(pos);
            p
        }
        None => {
            if pos + 1 >= args.len() {
                return Err(Error::InvalidConfig("--config needs a file path".into()));
            }
            args.drain(pos..pos + 2).nth(1).unwrap_or_default()
        }
    };
    let text = std::fs::read_to_string(&path)?;
    let mut flags = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| {
                Error::InvalidConfig(format!("{path}:{}: expected `flag = value`", i + 1))
            })?;
        let key = key.trim_start_matches("--").replace('_', "-");
        match value {
            "true" => flags.push(format!("--{key}")),
            "false" => {}
            _ => {
                flags.push(format!("--{key}"));
                flags.push(value.to_string());
            }
        }
    }
    let at = args.len().min(2);
    args.splice(at..at, flags);
    Ok(args)
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    let Some(n) = threads else {
        return Ok(f());
    };
    if n == 0 {
        return Err(Error::InvalidConfig("--threads must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;
    Ok(pool.install(f))
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn network_for(qpus: usize, capacity: &str, num_qubits: usize) -> Result<NetworkSpec> {
    let capacity = capacity.trim();
    if capacity == "auto" {
        return NetworkSpec::equal(qpus, num_qubits);
    }
    let values = capacity
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidNetwork(format!("bad capacity `{s}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    let caps = match values.as_slice() {
        [c] => vec![*c; qpus],
        _ if values.len() == qpus => values,
        _ => {
            return Err(Error::InvalidNetwork(format!(
                "{} capacities given for {qpus} QPUs",
                values.len()
            )))
        }
    };
    NetworkSpec::new(caps)
}

fn partition(a: PartitionArgs) -> Result<()> {
    let circuit = a.input.load()?;
    let network = network_for(a.qpus, &a.capacity, circuit.num_qubits())?;
    network.check_fits(circuit.num_qubits())?;
    let config = a.ea.config()?.with_seed(a.seed);
    let result = with_threads(a.ea.threads, || run_ea(&circuit, &network, &config))??;

    let best = &result.best;
    eprintln!(
        "{}: total {} (moves {}, split gates {}, penalty {}) after {} generations in {:.2?}",
        circuit.name(),
        best.cost.total,
        best.cost.move_cost,
        best.cost.split_gate_cost,
        best.cost.capacity_penalty,
        result.generations_run(),
        result.wall_time
    );
    if let Some(path) = &a.convergence {
        std::fs::write(path, result.convergence_csv())?;
    }
    let record = AssignmentRecord::new(
        circuit.name(),
        &network,
        config.penalty,
        &best.matrix,
        best.cost,
    );
    let mut json = record.to_json()?;
    json.push('\n');
    write_output(a.out.as_deref(), &json)
}

fn baseline(a: BaselineArgs) -> Result<()> {
    let circuit = a.input.load()?;
    let graph = build_interaction_graph(&circuit);
    if let Some(path) = &a.graph {
        std::fs::write(path, graph.to_edge_list())?;
    }
    let bisection = kernighan_lin(&graph, a.seed)?;
    let join = |side: &std::collections::BTreeSet<usize>| {
        side.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    println!("gp_cost {}", gp_cost(&bisection, &graph));
    println!("side_a {}", join(&bisection.side_a));
    println!("side_b {}", join(&bisection.side_b));
    Ok(())
}

fn bench(a: BenchArgs) -> Result<()> {
    let config = a.ea.config()?;
    let mut specs = match a.suite {
        Suite::Paper => paper_suite(a.seeds, &config),
    };
    for spec in &mut specs {
        spec.seed_base = a.seed_base;
    }
    let reports = with_threads(a.ea.threads, || sweep(&specs))??;
    for r in &reports {
        let ea_time: std::time::Duration = r.ea_wall_times.iter().sum();
        eprintln!(
            "{}: ea {:.1} gp {} ({:.2?} EA, {:.2?} GP)",
            r.circuit,
            r.ea_mean,
            r.gp_total
                .map_or_else(|| "-".to_string(), |g| g.to_string()),
            ea_time,
            r.gp_wall_time
        );
    }
    let format = match a.format {
        Format::Csv => ReportFormat::Csv,
        Format::Markdown => ReportFormat::Markdown,
    };
    write_output(a.out.as_deref(), &emit_report(&reports, format))
}

fn random(a: RandomArgs) -> Result<()> {
    let circuit = generate_random_circuit(&RandomCircuitSpec::new(a.qubits, a.depth, a.seed))?;
    write_output(a.out.as_deref(), &emit_qasm(&circuit))
}
