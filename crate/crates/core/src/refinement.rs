//! j-refinements: when does a minimal jN-partition split a minimal
//! N-partition block by block, and is each split itself optimal?

use crate::energy::{check_lambda, combine, deviation_of, PNorm};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::partition::{check_block_count, Partition};
use crate::solver::{minimize, MinimizerSet};
use crate::Settings;

/// Whether `fine` splits every block of `coarse` into exactly the same
/// number of blocks. The factor `j` is `fine.num_blocks() / coarse.num_blocks()`.
pub fn is_j_refining(fine: &Partition, coarse: &Partition) -> Result<bool> {
    if fine.vertex_count() != coarse.vertex_count()
        || fine.num_blocks() % coarse.num_blocks() != 0
    {
        return Err(Error::SizeMismatch { fine: fine.num_blocks(), coarse: coarse.num_blocks() });
    }
    let j = fine.num_blocks() / coarse.num_blocks();
    let mut parent = vec![usize::MAX; fine.num_blocks()];
    for v in 0..fine.vertex_count() {
        let (f, c) = (fine.block_of(v), coarse.block_of(v));
        if parent[f] == usize::MAX {
            parent[f] = c;
        } else if parent[f] != c {
            return Ok(false);
        }
    }
    let mut per_coarse = vec![0usize; coarse.num_blocks()];
    for &c in &parent {
        per_coarse[c] += 1;
    }
    Ok(per_coarse.iter().all(|&k| k == j))
}

/// Optimality of the split of one coarse block.
#[derive(Clone, Debug, PartialEq)]
pub struct InducedCheck {
    /// Vertices of the coarse block.
    pub block: Vec<usize>,
    /// Energy of the fine blocks inside it, measured on the induced subgraph
    /// against the mean `block mass / j`.
    pub induced_energy: f64,
    /// Optimal j-partition energy of the induced subgraph.
    pub optimal_energy: f64,
    pub minimal: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RefiningPair {
    pub fine: Partition,
    pub coarse: Partition,
    pub induced: Vec<InducedCheck>,
}

impl RefiningPair {
    pub fn induced_minimal(&self) -> bool {
        self.induced.iter().all(|c| c.minimal)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RefinementReport {
    pub n: usize,
    pub j: usize,
    pub lambda: f64,
    pub p: PNorm,
    pub coarse: MinimizerSet,
    pub fine: MinimizerSet,
    pub refining_pairs: Vec<RefiningPair>,
    /// Per coarse minimizer: every block has at least `j` vertices.
    pub blocks_large_enough: Vec<bool>,
}

fn induced_check(
    graph: &WeightedGraph,
    block: Vec<usize>,
    fine: &Partition,
    j: usize,
    lambda: f64,
    p: PNorm,
    settings: &Settings,
) -> Result<InducedCheck> {
    let sub = graph.induced_subgraph(&block)?;
    let labels: Vec<usize> = block.iter().map(|&v| fine.block_of(v)).collect();
    let local = Partition::from_labels(&labels);
    let induced_energy = {
        let cut = crate::energy::cut_unchecked(&sub, &local);
        let masses = crate::energy::block_masses(&sub, &local);
        combine(lambda, cut, deviation_of(&masses, sub.total_mass(), p))
    };
    let optimal_energy = minimize(&sub, j, lambda, p, settings)?.optimal_value;
    Ok(InducedCheck {
        block,
        induced_energy,
        optimal_energy,
        minimal: induced_energy <= optimal_energy + settings.tol,
    })
}

/// Cross-check of minimal N- and jN-partitions.
pub fn refinement_gap(
    graph: &WeightedGraph,
    n: usize,
    j: usize,
    lambda: f64,
    p: PNorm,
    settings: &Settings,
) -> Result<RefinementReport> {
    check_lambda(lambda)?;
    check_block_count(graph, n)?;
    if j == 0 {
        return Err(Error::BlockCountOutOfRange { n: 0, vertices: graph.vertex_count() });
    }
    check_block_count(graph, j * n)?;
    let coarse = minimize(graph, n, lambda, p, settings)?;
    let fine = minimize(graph, j * n, lambda, p, settings)?;

    let mut refining_pairs = Vec::new();
    for f in &fine.minimizers {
        for c in &coarse.minimizers {
            if !is_j_refining(&f.partition, &c.partition)? {
                continue;
            }
            let induced = c
                .partition
                .blocks()
                .into_iter()
                .map(|block| induced_check(graph, block, &f.partition, j, lambda, p, settings))
                .collect::<Result<Vec<_>>>()?;
            refining_pairs.push(RefiningPair {
                fine: f.partition.clone(),
                coarse: c.partition.clone(),
                induced,
            });
        }
    }
    let blocks_large_enough = coarse
        .minimizers
        .iter()
        .map(|m| m.partition.blocks().iter().all(|b| b.len() >= j))
        .collect();
    Ok(RefinementReport { n, j, lambda, p, coarse, fine, refining_pairs, blocks_large_enough })
}
