//! Connected N-partitions: canonical representation, validity, cut sets and
//! exhaustive enumeration.
//!
//! Enumeration assigns vertices in index order. A vertex joins an existing
//! block or opens the lowest unused label, so every partition is produced
//! exactly once, as a restricted growth string. A branch is abandoned as soon
//! as some block can no longer be made connected through the still
//! unassigned vertices, or too few vertices remain to open the missing blocks.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{UnionFind, WeightedGraph};
use crate::Settings;

/// A partition of the vertex set into blocks, stored as per-vertex block
/// labels in first-occurrence order. Blocks are therefore sorted by their
/// smallest vertex index, and `Ord` is the enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    labels: Vec<u8>,
    blocks: usize,
}

impl Partition {
    /// Builds a partition from arbitrary labels, relabelling canonically.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut map: Vec<Option<u8>> = Vec::new();
        let mut next = 0u8;
        let labels = labels
            .iter()
            .map(|&l| {
                if l >= map.len() {
                    map.resize(l + 1, None);
                }
                *map[l].get_or_insert_with(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect();
        Self { labels, blocks: next as usize }
    }

    pub(crate) fn from_canonical(labels: &[u8], blocks: usize) -> Self {
        Self { labels: labels.to_vec(), blocks }
    }

    /// Builds a validated partition from blocks of vertex ids.
    pub fn from_id_blocks<S: AsRef<str>>(graph: &WeightedGraph, blocks: &[Vec<S>]) -> Result<Self> {
        let check = is_valid_partition(graph, blocks)?;
        if !check.valid {
            return Err(Error::InvalidPartition(check.violations));
        }
        let mut labels = vec![0usize; graph.vertex_count()];
        for (b, block) in blocks.iter().enumerate() {
            for id in block {
                labels[graph.vertex(id.as_ref())?] = b;
            }
        }
        Ok(Self::from_labels(&labels))
    }

    /// Parses the text form `a,b|c|d,e`.
    pub fn parse(graph: &WeightedGraph, text: &str) -> Result<Self> {
        let blocks: Vec<Vec<&str>> = text
            .split('|')
            .map(|b| b.split(',').map(str::trim).filter(|s| !s.is_empty()).collect())
            .collect();
        Self::from_id_blocks(graph, &blocks)
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.labels[v] as usize
    }

    pub fn labels(&self) -> impl Iterator<Item = usize> + '_ {
        self.labels.iter().map(|&l| l as usize)
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (v, &l) in self.labels.iter().enumerate() {
            out[l as usize].push(v);
        }
        out
    }

    pub(crate) fn block_masks(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.blocks];
        for (v, &l) in self.labels.iter().enumerate() {
            out[l as usize] |= 1 << v;
        }
        out
    }

    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.labels[a] == self.labels[b]
    }

    /// Text form with vertex ids, e.g. `a,b|c|d,e`.
    pub fn display<'a>(&'a self, graph: &'a WeightedGraph) -> PartitionDisplay<'a> {
        PartitionDisplay { partition: self, graph }
    }

    pub fn to_text(&self, graph: &WeightedGraph) -> String {
        self.display(graph).to_string()
    }
}

pub struct PartitionDisplay<'a> {
    partition: &'a Partition,
    graph: &'a WeightedGraph,
}

impl fmt::Display for PartitionDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (b, block) in self.partition.blocks().iter().enumerate() {
            if b > 0 {
                f.write_str("|")?;
            }
            for (i, &v) in block.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                f.write_str(self.graph.id(v))?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PartitionViolation {
    /// Block at this position has no vertices.
    EmptyBlock { block: usize },
    /// Vertex appears in more than one block.
    Overlap { vertex: String },
    /// Vertex is in no block.
    Uncovered { vertex: String },
    /// Block does not induce a connected subgraph.
    Disconnected { block: usize },
    /// More blocks than vertices, or no blocks at all.
    BlockCount { blocks: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartitionCheck {
    pub valid: bool,
    pub violations: Vec<PartitionViolation>,
}

/// Checks that `blocks` form a pairwise disjoint, covering family of
/// non-empty connected vertex sets.
pub fn is_valid_partition<S: AsRef<str>>(
    graph: &WeightedGraph,
    blocks: &[Vec<S>],
) -> Result<PartitionCheck> {
    let n = graph.vertex_count();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut violations = Vec::new();
    if blocks.is_empty() || blocks.len() > n {
        violations.push(PartitionViolation::BlockCount { blocks: blocks.len() });
    }
    let mut members: Vec<Vec<usize>> = Vec::with_capacity(blocks.len());
    for (b, block) in blocks.iter().enumerate() {
        if block.is_empty() {
            violations.push(PartitionViolation::EmptyBlock { block: b });
        }
        let mut vs = Vec::with_capacity(block.len());
        for id in block {
            let v = graph.vertex(id.as_ref())?;
            match owner[v] {
                Some(_) => violations.push(PartitionViolation::Overlap {
                    vertex: graph.id(v).to_string(),
                }),
                None => owner[v] = Some(b),
            }
            vs.push(v);
        }
        members.push(vs);
    }
    for (v, o) in owner.iter().enumerate() {
        if o.is_none() {
            violations.push(PartitionViolation::Uncovered { vertex: graph.id(v).to_string() });
        }
    }
    // Connectivity of each block via union-find over its internal edges.
    for (b, vs) in members.iter().enumerate() {
        if vs.len() <= 1 {
            continue;
        }
        let set: u64 = vs.iter().fold(0, |m, &v| m | (1 << v));
        let mut uf = UnionFind::new(n);
        for e in graph.edges() {
            if set & (1 << e.u) != 0 && set & (1 << e.v) != 0 {
                uf.union(e.u, e.v);
            }
        }
        let root = uf.find(vs[0]);
        if vs.iter().any(|&v| uf.find(v) != root) {
            violations.push(PartitionViolation::Disconnected { block: b });
        }
    }
    Ok(PartitionCheck { valid: violations.is_empty(), violations })
}

/// Verifies that `partition` is a connected partition of `graph`.
pub fn ensure_valid(graph: &WeightedGraph, partition: &Partition) -> Result<()> {
    let mut violations = Vec::new();
    if partition.vertex_count() != graph.vertex_count() {
        violations.push(PartitionViolation::BlockCount { blocks: partition.num_blocks() });
    } else {
        for (b, mask) in partition.block_masks().into_iter().enumerate() {
            if !graph.is_connected_set(mask) {
                violations.push(PartitionViolation::Disconnected { block: b });
            }
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidPartition(violations))
    }
}

/// Edges whose endpoints lie in different blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct CutSet {
    /// Edge indices, ascending.
    pub edges: Vec<usize>,
    pub weight: f64,
}

pub fn cut_set(graph: &WeightedGraph, partition: &Partition) -> Result<CutSet> {
    ensure_valid(graph, partition)?;
    let edges: Vec<usize> = graph
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| !partition.same_block(e.u, e.v))
        .map(|(i, _)| i)
        .collect();
    let weight = edges.iter().map(|&i| graph.edge(i).weight).sum();
    Ok(CutSet { edges, weight })
}

pub(crate) fn check_block_count(graph: &WeightedGraph, n: usize) -> Result<()> {
    if n == 0 || n > graph.vertex_count() {
        Err(Error::BlockCountOutOfRange { n, vertices: graph.vertex_count() })
    } else {
        Ok(())
    }
}

/// Every connected `n`-partition, exactly once, in canonical order.
pub fn enumerate_partitions(graph: &WeightedGraph, n: usize) -> Result<Partitions<'_>> {
    check_block_count(graph, n)?;
    Ok(Partitions { walker: Walker::new(graph, n) })
}

pub struct Partitions<'g> {
    walker: Walker<'g>,
}

impl Iterator for Partitions<'_> {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.walker.advance(|_| false) {
            Some(self.walker.partition())
        } else {
            None
        }
    }
}

pub fn count_partitions(graph: &WeightedGraph, n: usize) -> Result<u64> {
    count_partitions_with(graph, n, &Settings::default())
}

pub fn count_partitions_with(graph: &WeightedGraph, n: usize, settings: &Settings) -> Result<u64> {
    check_block_count(graph, n)?;
    let counts = fan_out(graph, n, settings, |mut w| {
        let mut c = 0u64;
        while w.advance(|_| false) {
            c += 1;
        }
        c
    });
    Ok(counts.into_iter().sum())
}

/// Depth-first walker over connected partitions. Leaves are visited in
/// lexicographic order of their label strings.
pub(crate) struct Walker<'g> {
    graph: &'g WeightedGraph,
    n_blocks: usize,
    vertices: usize,
    labels: Vec<u8>,
    masks: Vec<u64>,
    /// `opened[k]`: number of blocks used by vertices `0..k`.
    opened: Vec<usize>,
    /// `cut[k]`: weight of edges among vertices `0..k` that cross blocks.
    cut: Vec<f64>,
    next: Vec<usize>,
    depth: usize,
    floor: usize,
    leaf_pending: bool,
    done: bool,
    leaf_cut: f64,
}

impl<'g> Walker<'g> {
    pub(crate) fn new(graph: &'g WeightedGraph, n_blocks: usize) -> Self {
        let v = graph.vertex_count();
        Self {
            graph,
            n_blocks,
            vertices: v,
            labels: vec![0; v],
            masks: vec![0; n_blocks],
            opened: vec![0; v + 1],
            cut: vec![0.0; v + 1],
            next: vec![0; v + 1],
            depth: 0,
            floor: 0,
            leaf_pending: false,
            done: v == 0,
            leaf_cut: 0.0,
        }
    }

    /// Walker restricted to completions of a feasible prefix.
    pub(crate) fn from_prefix(graph: &'g WeightedGraph, n_blocks: usize, prefix: &[u8]) -> Self {
        let mut w = Self::new(graph, n_blocks);
        for (k, &l) in prefix.iter().enumerate() {
            let ok = w.assign(k, l as usize);
            debug_assert!(ok, "prefix must be feasible");
        }
        w.floor = prefix.len();
        w.depth = prefix.len();
        if prefix.len() == w.vertices {
            w.leaf_pending = true;
            w.leaf_cut = w.cut[w.vertices];
        }
        w
    }

    /// Places vertex `k` in block `label`; returns whether the partial
    /// assignment can still be completed.
    fn assign(&mut self, k: usize, label: usize) -> bool {
        let bit = 1u64 << k;
        self.labels[k] = label as u8;
        self.masks[label] |= bit;
        self.opened[k + 1] = self.opened[k].max(label + 1);
        let mut added = 0.0;
        for &e in self.graph.incident_edges(k) {
            let edge = self.graph.edge(e);
            let j = edge.other(k);
            if j < k && self.labels[j] as usize != label {
                added += edge.weight;
            }
        }
        self.cut[k + 1] = self.cut[k] + added;

        let opened = self.opened[k + 1];
        let remaining = self.vertices - k - 1;
        if self.n_blocks - opened > remaining {
            return false;
        }
        let free = self.graph.all_mask() & !crate::graph::mask_below(k + 1);
        self.masks[..opened].iter().all(|&m| {
            let reach = self.graph.flood(m.trailing_zeros() as usize, m | free);
            reach & m == m
        })
    }

    fn unassign(&mut self, k: usize) {
        self.masks[self.labels[k] as usize] &= !(1u64 << k);
    }

    /// Moves to the next leaf whose branch survives `prune(partial_cut)`.
    /// Returns `false` when the walk is exhausted.
    pub(crate) fn advance(&mut self, mut prune: impl FnMut(f64) -> bool) -> bool {
        if self.leaf_pending {
            self.leaf_pending = false;
            self.done = true;
            return !prune(self.leaf_cut);
        }
        while !self.done {
            let k = self.depth;
            let max_label = self.opened[k].min(self.n_blocks - 1);
            let mut descended = false;
            while self.next[k] <= max_label {
                let l = self.next[k];
                self.next[k] += 1;
                let feasible = self.assign(k, l);
                if feasible && !prune(self.cut[k + 1]) {
                    if k + 1 == self.vertices {
                        self.leaf_cut = self.cut[k + 1];
                        self.unassign(k);
                        return true;
                    }
                    self.depth = k + 1;
                    self.next[k + 1] = 0;
                    descended = true;
                    break;
                }
                self.unassign(k);
            }
            if descended {
                continue;
            }
            if k == self.floor {
                self.done = true;
            } else {
                self.depth = k - 1;
                self.unassign(k - 1);
            }
        }
        false
    }

    pub(crate) fn leaf_labels(&self) -> &[u8] {
        &self.labels
    }

    pub(crate) fn leaf_cut(&self) -> f64 {
        self.leaf_cut
    }

    pub(crate) fn partition(&self) -> Partition {
        Partition::from_canonical(&self.labels, self.n_blocks)
    }

    /// Block masses of the current leaf.
    pub(crate) fn leaf_masses(&self, out: &mut [f64]) {
        out.iter_mut().for_each(|m| *m = 0.0);
        for (v, &l) in self.labels.iter().enumerate() {
            out[l as usize] += self.graph.mass(v);
        }
    }
}

const TARGET_PREFIXES: usize = 64;

/// Feasible label prefixes, split deep enough to yield at least
/// `TARGET_PREFIXES` branches (or down to full partitions). The split
/// depends only on the instance, never on the worker count.
pub(crate) fn prefixes(graph: &WeightedGraph, n: usize) -> Vec<Vec<u8>> {
    let v = graph.vertex_count();
    let mut level: Vec<Vec<u8>> = vec![Vec::new()];
    while level.len() < TARGET_PREFIXES && level.first().map_or(false, |p| p.len() < v) {
        let mut next_level = Vec::new();
        for prefix in &level {
            let k = prefix.len();
            let mut w = Walker::new(graph, n);
            for (i, &l) in prefix.iter().enumerate() {
                w.assign(i, l as usize);
            }
            let max_label = w.opened[k].min(n - 1);
            for l in 0..=max_label {
                if w.assign(k, l) {
                    let mut p = prefix.clone();
                    p.push(l as u8);
                    next_level.push(p);
                }
                w.unassign(k);
            }
        }
        level = next_level;
    }
    level
}

/// Runs `job` once per prefix walker and returns the results in canonical
/// prefix order.
pub(crate) fn fan_out<T, F>(graph: &WeightedGraph, n: usize, settings: &Settings, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(Walker<'_>) -> T + Sync + Send,
{
    let prefixes = prefixes(graph, n);
    settings.install(|| {
        if settings.workers <= 1 {
            prefixes.iter().map(|p| job(Walker::from_prefix(graph, n, p))).collect()
        } else {
            prefixes.par_iter().map(|p| job(Walker::from_prefix(graph, n, p))).collect()
        }
    })
}
