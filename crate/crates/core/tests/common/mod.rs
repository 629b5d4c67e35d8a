//! Independent reference implementations used as test oracles. The oracles
//! in this file never call into the crate's cost evaluator or optimizers;
//! `trials` holds the seeded invariant checks that do.

#![allow(dead_code)]

pub mod trials;

use std::collections::BTreeMap;

use telepart::{layerize, Circuit, Gate};

/// Multi-qubit gates as (step, operands), read straight off the layers.
pub fn gate_list(circuit: &Circuit) -> Vec<(usize, Vec<usize>)> {
    let mut out = Vec::new();
    for (t, layer) in circuit.layers().iter().enumerate() {
        for g in layer.gates() {
            if g.arity() > 1 {
                out.push((t, g.qubits().iter().map(|q| q.0).collect()));
            }
        }
    }
    out
}

/// (moves, splits, penalty, total) computed row by row.
pub fn brute_cost(
    rows: &[Vec<usize>],
    gates: &[(usize, Vec<usize>)],
    capacities: &[usize],
    delta: u64,
) -> (u64, u64, u64, u64) {
    let m = rows.first().map_or(0, |r| r.len());
    let mut moves = 0;
    for row in rows {
        for w in row.windows(2) {
            if w[0] != w[1] {
                moves += 1;
            }
        }
    }
    let mut splits = 0;
    for (t, ops) in gates {
        let mut seen: Vec<usize> = Vec::new();
        for &q in ops {
            if !seen.contains(&rows[q][*t]) {
                seen.push(rows[q][*t]);
            }
        }
        splits += seen.len() as u64 - 1;
    }
    let mut penalty = 0;
    for t in 0..m {
        for (p, &cap) in capacities.iter().enumerate() {
            let load = rows.iter().filter(|r| r[t] == p).count();
            if load > cap {
                penalty += delta;
            }
        }
    }
    (moves, splits, penalty, moves + splits + penalty)
}

/// Decodes `index` as a base-k number into an n×m row matrix.
pub fn decode(mut index: u64, n: usize, m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut rows = vec![vec![0; m]; n];
    for row in rows.iter_mut() {
        for cell in row.iter_mut() {
            *cell = (index % k as u64) as usize;
            index /= k as u64;
        }
    }
    rows
}

/// Minimum total over all k^(n·m) matrices.
pub fn enumerate_min(circuit: &Circuit, capacities: &[usize], delta: u64) -> u64 {
    let (n, m, k) = (circuit.num_qubits(), circuit.depth(), capacities.len());
    let gates = gate_list(circuit);
    let count = (k as u64).pow((n * m) as u32);
    (0..count)
        .map(|i| brute_cost(&decode(i, n, m, k), &gates, capacities, delta).3)
        .min()
        .unwrap()
}

/// Exact optimum by dynamic programming over per-step column states:
/// `best[t][s] = col_cost(t, s) + min_s' best[t-1][s'] + hamming(s', s)`.
/// Exponential in n only, so usable for QFT-8 and small random circuits.
pub fn dp_min(circuit: &Circuit, capacities: &[usize], delta: u64) -> u64 {
    let (n, m, k) = (circuit.num_qubits(), circuit.depth(), capacities.len());
    let states = k.pow(n as u32);
    let decode_col = |s: usize| -> Vec<usize> {
        let mut s = s;
        (0..n)
            .map(|_| {
                let v = s % k;
                s /= k;
                v
            })
            .collect()
    };
    let cols: Vec<Vec<usize>> = (0..states).map(decode_col).collect();
    let gates = gate_list(circuit);
    let col_cost = |t: usize, col: &[usize]| -> u64 {
        let mut c = 0;
        for (gt, ops) in &gates {
            if *gt != t {
                continue;
            }
            let mut seen: Vec<usize> = Vec::new();
            for &q in ops {
                if !seen.contains(&col[q]) {
                    seen.push(col[q]);
                }
            }
            c += seen.len() as u64 - 1;
        }
        for (p, &cap) in capacities.iter().enumerate() {
            if col.iter().filter(|&&v| v == p).count() > cap {
                c += delta;
            }
        }
        c
    };
    let hamming = |a: &[usize], b: &[usize]| a.iter().zip(b).filter(|(x, y)| x != y).count() as u64;

    let mut best: Vec<u64> = (0..states).map(|s| col_cost(0, &cols[s])).collect();
    for t in 1..m {
        let next: Vec<u64> = (0..states)
            .map(|s| {
                let enter = (0..states)
                    .map(|p| best[p] + hamming(&cols[p], &cols[s]))
                    .min()
                    .unwrap();
                enter + col_cost(t, &cols[s])
            })
            .collect();
        best = next;
    }
    best.into_iter().min().unwrap()
}

/// Weighted pair counts from a direct scan of the circuit's gates.
pub fn pair_scan(circuit: &Circuit) -> BTreeMap<(usize, usize), u64> {
    let mut out = BTreeMap::new();
    for g in circuit.gates() {
        let qs: Vec<usize> = g.qubits().iter().map(|q| q.0).collect();
        for i in 0..qs.len() {
            for j in i + 1..qs.len() {
                let key = (qs[i].min(qs[j]), qs[i].max(qs[j]));
                *out.entry(key).or_insert(0) += 1;
            }
        }
    }
    out
}

/// Smallest cut over every balanced bisection (sizes differ by at most one).
pub fn min_balanced_cut(num_nodes: usize, edges: &BTreeMap<(usize, usize), u64>) -> u64 {
    let half = num_nodes / 2;
    let mut best = u64::MAX;
    for mask in 0u64..(1 << num_nodes) {
        let ones = mask.count_ones() as usize;
        if ones != half && ones != num_nodes - half {
            continue;
        }
        let cut = edges
            .iter()
            .filter(|((u, v), _)| ((mask >> u) & 1) != ((mask >> v) & 1))
            .map(|(_, w)| *w)
            .sum();
        best = best.min(cut);
    }
    best
}

/// Small instances with k^(n*m) <= 4096.
pub fn small_instances() -> Vec<(Circuit, Vec<usize>)> {
    let single_cx = layerize([Gate::op("h", &[0]), Gate::op("cx", &[0, 1])], 2).unwrap();
    let chain = layerize(
        [
            Gate::op("cx", &[0, 1]),
            Gate::op("cx", &[1, 2]),
            Gate::op("cx", &[0, 1]),
        ],
        3,
    )
    .unwrap();
    let ladder = layerize(
        [
            Gate::op("cx", &[0, 1]),
            Gate::op("cx", &[2, 3]),
            Gate::op("cx", &[1, 2]),
        ],
        4,
    )
    .unwrap();
    let toffoli = layerize([Gate::op("ccx", &[0, 1, 2]), Gate::op("cx", &[2, 0])], 3).unwrap();
    let three_way = layerize([Gate::op("cx", &[0, 1]), Gate::op("cx", &[1, 2])], 3).unwrap();
    vec![
        (single_cx.clone(), vec![1, 1]),
        (single_cx, vec![2, 2]),
        (chain.clone(), vec![2, 1]),
        (chain, vec![2, 2]),
        (ladder, vec![2, 2]),
        (toffoli, vec![2, 2]),
        (three_way, vec![1, 1, 1]),
    ]
}
