//! Static graph-partitioning baseline: build the weighted qubit interaction
//! graph, bisect it with Kernighan-Lin, and charge one teleportation per
//! multi-qubit gate crossing the cut.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::error::{Error, Result};

/// Undirected graph on qubits; edge weight counts the multi-qubit gates
/// acting on the pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InteractionGraph {
    num_nodes: usize,
    edges: BTreeMap<(usize, usize), u64>,
}

impl InteractionGraph {
    /// Edges with `u < v`; zero weights and self-loops are rejected.
    pub fn new(
        num_nodes: usize,
        edges: impl IntoIterator<Item = ((usize, usize), u64)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for ((u, v), w) in edges {
            if u == v {
                return Err(Error::Malformed(format!("self-loop on node {u}")));
            }
            if u >= num_nodes || v >= num_nodes {
                return Err(Error::Malformed(format!(
                    "edge ({u}, {v}) outside a {num_nodes}-node graph"
                )));
            }
            if w == 0 {
                continue;
            }
            *map.entry((u.min(v), u.max(v))).or_insert(0) += w;
        }
        Ok(InteractionGraph {
            num_nodes,
            edges: map,
        })
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn edges(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.edges
    }

    pub fn weight(&self, u: usize, v: usize) -> u64 {
        self.edges.get(&(u.min(v), u.max(v))).copied().unwrap_or(0)
    }

    pub fn total_weight(&self) -> u64 {
        self.edges.values().sum()
    }

    /// `u v weight` per line, edges in ascending order.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for ((u, v), w) in &self.edges {
            let _ = writeln!(out, "{u} {v} {w}");
        }
        out
    }

    fn dense(&self) -> Vec<i64> {
        let n = self.num_nodes;
        let mut w = vec![0i64; n * n];
        for (&(u, v), &weight) in &self.edges {
            w[u * n + v] = weight as i64;
            w[v * n + u] = weight as i64;
        }
        w
    }
}

pub fn build_interaction_graph(circuit: &Circuit) -> InteractionGraph {
    let edges = circuit
        .interacting_pairs()
        .into_iter()
        .map(|((a, b), count)| ((a.0, b.0), count as u64));
    InteractionGraph::new(circuit.num_qubits(), edges).expect("circuit pairs are valid edges")
}

/// Two disjoint node sets covering the graph, sizes differing by at most one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bisection {
    pub side_a: BTreeSet<usize>,
    pub side_b: BTreeSet<usize>,
}

impl Bisection {
    /// `labels[v]` says whether node `v` is on side B.
    pub fn from_labels(labels: &[bool]) -> Self {
        let mut side_a = BTreeSet::new();
        let mut side_b = BTreeSet::new();
        for (v, &on_b) in labels.iter().enumerate() {
            if on_b {
                side_b.insert(v);
            } else {
                side_a.insert(v);
            }
        }
        Bisection { side_a, side_b }
    }

    pub fn swapped(&self) -> Self {
        Bisection {
            side_a: self.side_b.clone(),
            side_b: self.side_a.clone(),
        }
    }

    pub fn is_balanced(&self) -> bool {
        self.side_a.len().abs_diff(self.side_b.len()) <= 1
    }

    /// QPU index per node: 0 for side A, 1 for side B.
    pub fn labels(&self) -> Vec<usize> {
        let n = self.side_a.len() + self.side_b.len();
        (0..n)
            .map(|v| usize::from(self.side_b.contains(&v)))
            .collect()
    }
}

/// Sum of weights of edges with one end on each side.
pub fn gp_cost(bisection: &Bisection, graph: &InteractionGraph) -> u64 {
    graph
        .edges
        .iter()
        .filter(|((u, v), _)| bisection.side_a.contains(u) != bisection.side_a.contains(v))
        .map(|(_, w)| *w)
        .sum()
}

/// Seeded balanced starting split: a shuffled node order, first half to A.
pub fn initial_bisection(num_nodes: usize, seed: u64) -> Bisection {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..num_nodes).collect();
    order.shuffle(&mut rng);
    let mut labels = vec![false; num_nodes];
    for &v in &order[num_nodes / 2..] {
        labels[v] = true;
    }
    Bisection::from_labels(&labels)
}

/// Kernighan-Lin bisection starting from [`initial_bisection`].
pub fn kernighan_lin(graph: &InteractionGraph, seed: u64) -> Result<Bisection> {
    if graph.num_nodes < 2 {
        return Err(Error::InvalidConfig(
            "Kernighan-Lin needs at least 2 nodes".into(),
        ));
    }
    Ok(kernighan_lin_from(
        graph,
        &initial_bisection(graph.num_nodes, seed),
    ))
}

/// Kernighan-Lin passes from a given split. Each pass greedily swaps the
/// unlocked pair with the largest gain until one side runs out, then keeps
/// the prefix of swaps with the best cumulative gain. Stops when a pass
/// gains nothing.
pub fn kernighan_lin_from(graph: &InteractionGraph, start: &Bisection) -> Bisection {
    let n = graph.num_nodes;
    let w = graph.dense();
    let mut on_b: Vec<bool> = (0..n).map(|v| start.side_b.contains(&v)).collect();

    loop {
        // external minus internal cost per node
        let mut d: Vec<i64> = (0..n)
            .map(|v| {
                (0..n)
                    .filter(|&u| u != v)
                    .map(|u| {
                        if on_b[u] != on_b[v] {
                            w[v * n + u]
                        } else {
                            -w[v * n + u]
                        }
                    })
                    .sum()
            })
            .collect();
        let mut locked = vec![false; n];
        let mut swaps: Vec<(usize, usize)> = Vec::new();
        let mut gains: Vec<i64> = Vec::new();
        let pairs = on_b
            .iter()
            .filter(|&&b| b)
            .count()
            .min(n - on_b.iter().filter(|&&b| b).count());

        for _ in 0..pairs {
            let mut best: Option<(i64, usize, usize)> = None;
            for a in (0..n).filter(|&a| !locked[a] && !on_b[a]) {
                for b in (0..n).filter(|&b| !locked[b] && on_b[b]) {
                    let g = d[a] + d[b] - 2 * w[a * n + b];
                    if best.is_none_or(|(bg, _, _)| g > bg) {
                        best = Some((g, a, b));
                    }
                }
            }
            let Some((g, a, b)) = best else { break };
            locked[a] = true;
            locked[b] = true;
            swaps.push((a, b));
            gains.push(g);
            for x in (0..n).filter(|&x| !locked[x]) {
                if on_b[x] {
                    d[x] += 2 * w[x * n + b] - 2 * w[x * n + a];
                } else {
                    d[x] += 2 * w[x * n + a] - 2 * w[x * n + b];
                }
            }
        }

        let mut best_k = 0;
        let mut best_sum = 0i64;
        let mut sum = 0i64;
        for (i, g) in gains.iter().enumerate() {
            sum += g;
            if sum > best_sum {
                best_sum = sum;
                best_k = i + 1;
            }
        }
        if best_sum <= 0 {
            break;
        }
        for &(a, b) in &swaps[..best_k] {
            on_b[a] = true;
            on_b[b] = false;
        }
    }
    Bisection::from_labels(&on_b)
}
