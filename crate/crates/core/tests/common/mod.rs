//! Brute-force reference implementation and random instances for the
//! integration tests. Nothing here calls the library's enumerator or energy
//! code: partitions come from every label assignment, connectivity from BFS.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use districtor::{Partition, PNorm, RawGraph, WeightedGraph};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const TOL: f64 = 1e-9;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected graph on `n` vertices: a random spanning tree plus each other
/// pair with probability `extra`. Masses and weights uniform in `[lo, hi]`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, extra: f64, lo: f64, hi: f64) -> WeightedGraph {
    let mut raw = RawGraph::new();
    for v in 0..n {
        raw = raw.vertex(format!("v{v}"), rng.gen_range(lo..=hi));
    }
    let mut present = BTreeSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        present.insert((u, v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !present.contains(&(u, v)) && rng.gen_bool(extra) {
                present.insert((u, v));
            }
        }
    }
    for (u, v) in present {
        raw = raw.edge(format!("v{u}"), format!("v{v}"), rng.gen_range(lo..=hi));
    }
    raw.build().expect("generated graph is valid")
}

fn neighbours(g: &WeightedGraph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.vertex_count()];
    for e in g.edges() {
        adj[e.u].push(e.v);
        adj[e.v].push(e.u);
    }
    adj
}

fn block_connected(adj: &[Vec<usize>], labels: &[usize], block: usize) -> bool {
    let members: Vec<usize> = (0..labels.len()).filter(|&v| labels[v] == block).collect();
    let Some(&start) = members.first() else { return false };
    let mut seen = vec![false; labels.len()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    let mut reached = 1;
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if !seen[y] && labels[y] == block {
                seen[y] = true;
                reached += 1;
                queue.push_back(y);
            }
        }
    }
    reached == members.len()
}

/// Canonical relabelling: blocks numbered by first appearance.
fn canonical(labels: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    labels
        .iter()
        .map(|&l| {
            let next = map.len();
            *map.entry(l).or_insert(next)
        })
        .collect()
}

/// Every connected `n`-partition as canonical label vectors, sorted.
pub fn oracle_partitions(g: &WeightedGraph, n: usize) -> Vec<Vec<usize>> {
    let v = g.vertex_count();
    let adj = neighbours(g);
    let mut found = BTreeSet::new();
    let mut labels = vec![0usize; v];
    let total = (n as u64).pow(v as u32);
    for code in 0..total {
        let mut c = code;
        for slot in labels.iter_mut() {
            *slot = (c % n as u64) as usize;
            c /= n as u64;
        }
        let mut used = vec![false; n];
        for &l in &labels {
            used[l] = true;
        }
        if !used.iter().all(|&u| u) {
            continue;
        }
        if (0..n).all(|b| block_connected(&adj, &labels, b)) {
            found.insert(canonical(&labels));
        }
    }
    found.into_iter().collect()
}

pub fn oracle_cut(g: &WeightedGraph, labels: &[usize]) -> f64 {
    g.edges().iter().filter(|e| labels[e.u] != labels[e.v]).map(|e| e.weight).sum()
}

pub fn oracle_deviation(g: &WeightedGraph, labels: &[usize], p: PNorm) -> f64 {
    let n = labels.iter().max().map_or(0, |m| m + 1);
    let mut masses = vec![0.0; n];
    for (v, &l) in labels.iter().enumerate() {
        masses[l] += g.mass(v);
    }
    let mean = masses.iter().sum::<f64>() / n as f64;
    let dev = masses.iter().map(|m| (m - mean).abs());
    match p {
        PNorm::Infinity => dev.fold(0.0, f64::max),
        PNorm::Finite(q) => dev.map(|d| d.powf(q)).sum::<f64>().powf(1.0 / q),
    }
}

pub fn oracle_energy(g: &WeightedGraph, labels: &[usize], lambda: f64, p: PNorm) -> f64 {
    lambda * oracle_cut(g, labels) + (1.0 - lambda) * oracle_deviation(g, labels, p)
}

/// Optimal value and every partition within `TOL` of it.
pub fn oracle_minimize(g: &WeightedGraph, n: usize, lambda: f64, p: PNorm) -> (f64, Vec<Partition>) {
    let all = oracle_partitions(g, n);
    let energies: Vec<f64> = all.iter().map(|l| oracle_energy(g, l, lambda, p)).collect();
    let best = energies.iter().cloned().fold(f64::INFINITY, f64::min);
    let mut mins: Vec<Partition> = all
        .iter()
        .zip(&energies)
        .filter(|(_, &e)| e <= best + TOL)
        .map(|(l, _)| Partition::from_labels(l))
        .collect();
    mins.sort();
    (best, mins)
}

pub fn labels_of(p: &Partition) -> Vec<usize> {
    p.labels().collect()
}

pub fn random_norm(rng: &mut ChaCha8Rng) -> PNorm {
    match rng.gen_range(0..3) {
        0 => PNorm::Finite(1.0),
        1 => PNorm::Finite(2.0),
        _ => PNorm::Infinity,
    }
}
