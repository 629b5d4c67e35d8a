//! Seeded randomized trials for the structural invariants. Each returns a
//! description of the first violation found.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use telepart::assignment::{evaluate_cost, AssignmentMatrix, QpuIndex};
use telepart::baseline::{gp_cost, initial_bisection, kernighan_lin, InteractionGraph};
use telepart::evolve::{
    mutate_cell, mutate_col_shuffle, mutate_row_shuffle, single_point_crossover, uniform_crossover,
    Parent,
};
use telepart::qasm::{generate_random_circuit, RandomCircuitSpec};
use telepart::{run_ea, Circuit, EaConfig, Layer, NetworkSpec, PenaltyConfig};

pub type Trial = fn(u64) -> Result<(), String>;

pub const SUITES: [(&str, Trial); 6] = [
    ("crossover column provenance", crossover_provenance),
    ("mutation multiset preservation", mutation_multisets),
    ("elitism monotonicity", elitism_monotone),
    ("QPU label permutation symmetry", label_symmetry),
    ("KL never worse than start", kl_never_worse),
    ("duplicate column monotonicity", duplicate_column),
];

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ 0x7e57_7e57)
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn sorted(mut v: Vec<QpuIndex>) -> Vec<QpuIndex> {
    v.sort_unstable();
    v
}

fn small_circuit(rng: &mut ChaCha8Rng) -> Circuit {
    let n = rng.random_range(2..=5);
    let depth = rng.random_range(1..=8);
    generate_random_circuit(&RandomCircuitSpec::new(n, depth, rng.random())).unwrap()
}

pub fn crossover_provenance(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let (n, m, k) = (
        r.random_range(1..=6),
        r.random_range(2..=12),
        r.random_range(2..=4),
    );
    let a = AssignmentMatrix::random(n, m, k, &mut r);
    let b = AssignmentMatrix::random(n, m, k, &mut r);

    let cut = r.random_range(1..m);
    let child = single_point_crossover(&a, &b, cut).map_err(|e| e.to_string())?;
    for t in 0..m {
        let src = if t < cut { &a } else { &b };
        check(child.column(t) == src.column(t), || {
            format!("single-point cut {cut}: column {t} has the wrong parent")
        })?;
    }

    let choice: Vec<Parent> = (0..m)
        .map(|_| if r.random() { Parent::A } else { Parent::B })
        .collect();
    let child = uniform_crossover(&a, &b, &choice).map_err(|e| e.to_string())?;
    for (t, side) in choice.iter().enumerate() {
        let src = if *side == Parent::A { &a } else { &b };
        check(child.column(t) == src.column(t), || {
            format!("uniform: column {t} not from {side:?}")
        })?;
    }
    Ok(())
}

pub fn mutation_multisets(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let (n, m, k) = (
        r.random_range(1..=6),
        r.random_range(1..=12),
        r.random_range(1..=4),
    );
    let before = AssignmentMatrix::random(n, m, k, &mut r);

    let mut x = before.clone();
    mutate_row_shuffle(&mut x, &mut r);
    for q in 0..n {
        check(sorted(x.row(q)) == sorted(before.row(q)), || {
            format!("row shuffle changed the multiset of row {q}")
        })?;
    }
    let changed_rows = (0..n).filter(|&q| x.row(q) != before.row(q)).count();
    check(changed_rows <= 1, || "row shuffle touched two rows".into())?;

    let mut x = before.clone();
    mutate_col_shuffle(&mut x, &mut r);
    for t in 0..m {
        check(
            sorted(x.column(t).to_vec()) == sorted(before.column(t).to_vec()),
            || format!("column shuffle changed the multiset of column {t}"),
        )?;
    }
    let changed_cols = (0..m).filter(|&t| x.column(t) != before.column(t)).count();
    check(changed_cols <= 1, || {
        "column shuffle touched two columns".into()
    })?;

    let mut x = before.clone();
    mutate_cell(&mut x, &mut r);
    check(x.hamming(&before) <= 1, || {
        "cell mutation changed two cells".into()
    })?;
    check(
        (0..m).all(|t| x.column(t).iter().all(|&v| (v as usize) < k)),
        || "cell mutation left the QPU range".into(),
    )
}

pub fn elitism_monotone(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let c = small_circuit(&mut r);
    let net = NetworkSpec::equal(r.random_range(2..=3), c.num_qubits()).unwrap();
    let config = EaConfig {
        population_size: r.random_range(4..=12),
        generations: r.random_range(1..=12),
        ..EaConfig::default()
    }
    .with_seed(seed);
    let result = run_ea(&c, &net, &config).map_err(|e| e.to_string())?;
    let history = &result.best_cost_per_generation;
    check(history.windows(2).all(|w| w[1] <= w[0]), || {
        format!("best cost went up: {history:?}")
    })?;
    check(history.last() == Some(&result.best.cost.total), || {
        "reported best differs from the last history entry".into()
    })?;
    let recomputed =
        evaluate_cost(&result.best.matrix, &c, &net, config.penalty).map_err(|e| e.to_string())?;
    check(recomputed == result.best.cost, || {
        "stored cost of the best individual is stale".into()
    })
}

pub fn label_symmetry(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let c = small_circuit(&mut r);
    let k = r.random_range(2..=4);
    let cap = r.random_range(1..=c.num_qubits());
    let net = NetworkSpec::new(vec![cap; k]).unwrap();
    let m = AssignmentMatrix::random(c.num_qubits(), c.depth(), k, &mut r);
    let mut perm: Vec<QpuIndex> = (0..k as QpuIndex).collect();
    perm.shuffle(&mut r);
    let pen = PenaltyConfig::default();
    let before = evaluate_cost(&m, &c, &net, pen).map_err(|e| e.to_string())?;
    let after = evaluate_cost(&m.relabel(&perm), &c, &net, pen).map_err(|e| e.to_string())?;
    check(before == after, || {
        format!("relabel {perm:?}: {before:?} became {after:?}")
    })
}

pub fn kl_never_worse(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = r.random_range(2..=14);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.random_bool(0.4) {
                edges.push(((u, v), r.random_range(1..=6u64)));
            }
        }
    }
    let g = InteractionGraph::new(n, edges).unwrap();
    let start = gp_cost(&initial_bisection(n, seed), &g);
    let b = kernighan_lin(&g, seed).map_err(|e| e.to_string())?;
    check(b.is_balanced(), || "unbalanced result".into())?;
    let end = gp_cost(&b, &g);
    check(end <= start, || format!("cut rose from {start} to {end}"))
}

pub fn duplicate_column(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let c = small_circuit(&mut r);
    let k = r.random_range(2..=3);
    let net = NetworkSpec::equal(k, c.num_qubits()).unwrap();
    let pen = PenaltyConfig::default();
    let m = if r.random() {
        AssignmentMatrix::random_static(c.num_qubits(), c.depth(), k, &mut r)
    } else {
        AssignmentMatrix::random(c.num_qubits(), c.depth(), k, &mut r)
    };
    let step = r.random_range(0..c.depth());

    let mut layers = c.layers().to_vec();
    layers.insert(step + 1, Layer::new(Vec::new()));
    let stretched = Circuit::from_layers("stretched", c.num_qubits(), layers).unwrap();
    let dup = m.with_repeated_column(step);

    let before = evaluate_cost(&m, &c, &net, pen).map_err(|e| e.to_string())?;
    let after = evaluate_cost(&dup, &stretched, &net, pen).map_err(|e| e.to_string())?;
    check(
        after.move_cost == before.move_cost && after.split_gate_cost == before.split_gate_cost,
        || format!("{before:?} became {after:?}"),
    )?;
    let column_fits = (0..k).all(|p| {
        m.column(step).iter().filter(|&&v| v as usize == p).count() <= net.capacities()[p]
    });
    if column_fits {
        check(after.total <= before.total, || {
            format!("total rose from {} to {}", before.total, after.total)
        })?;
    }
    Ok(())
}
