//! Exact minimization of the districting energy over connected N-partitions.
//!
//! Search is a branch-and-bound over the partition enumeration. A partial
//! assignment is bounded below by `λ · (cut weight already forced)`; the
//! deviation term contributes nothing to the bound. Each top-level branch
//! starts from the same incumbent, the energy of the first enumerated
//! partition, and keeps its own bound afterwards, so both the minimizer set
//! and the number of partitions examined are independent of the worker count.

use crate::energy::{check_lambda, combine, deviation_of, PNorm};
use crate::error::Result;
use crate::graph::WeightedGraph;
use crate::partition::{check_block_count, fan_out, Partition, Walker};
use crate::Settings;

#[derive(Clone, Debug, PartialEq)]
pub struct Minimizer {
    pub partition: Partition,
    pub cut: f64,
    pub deviation: f64,
    pub total: f64,
}

/// All partitions whose energy is within tolerance of the optimum.
#[derive(Clone, Debug, PartialEq)]
pub struct MinimizerSet {
    pub optimal_value: f64,
    /// Canonical order.
    pub minimizers: Vec<Minimizer>,
    pub lambda: f64,
    pub p: PNorm,
    pub n: usize,
    pub partitions_examined: u64,
}

impl MinimizerSet {
    pub fn partitions(&self) -> Vec<Partition> {
        self.minimizers.iter().map(|m| m.partition.clone()).collect()
    }

    pub fn contains(&self, partition: &Partition) -> bool {
        self.minimizers.iter().any(|m| &m.partition == partition)
    }

    pub fn is_unique(&self) -> bool {
        self.minimizers.len() == 1
    }
}

struct BranchResult {
    best: f64,
    candidates: Vec<Minimizer>,
    examined: u64,
}

pub fn minimize(
    graph: &WeightedGraph,
    n: usize,
    lambda: f64,
    p: PNorm,
    settings: &Settings,
) -> Result<MinimizerSet> {
    check_block_count(graph, n)?;
    check_lambda(lambda)?;
    let tol = settings.tol;
    let total_mass = graph.total_mass();

    let evaluate = |w: &Walker<'_>, masses: &mut [f64]| {
        w.leaf_masses(masses);
        let cut = w.leaf_cut();
        let deviation = deviation_of(masses, total_mass, p);
        (cut, deviation, combine(lambda, cut, deviation))
    };

    let initial = {
        let mut w = Walker::new(graph, n);
        let found = w.advance(|_| false);
        debug_assert!(found, "block count already validated");
        evaluate(&w, &mut vec![0.0; n]).2
    };

    let branches = fan_out(graph, n, settings, |mut w| {
        let mut masses = vec![0.0; n];
        let mut best = initial;
        let mut candidates: Vec<Minimizer> = Vec::new();
        let mut examined = 0u64;
        loop {
            let bound = best + tol;
            let found = if settings.prune {
                w.advance(|partial| lambda * partial > bound)
            } else {
                w.advance(|_| false)
            };
            if !found {
                break;
            }
            examined += 1;
            let (cut, deviation, total) = evaluate(&w, &mut masses);
            if total <= best + tol {
                if total < best {
                    best = total;
                    candidates.retain(|m| m.total <= best + tol);
                }
                candidates.push(Minimizer { partition: w.partition(), cut, deviation, total });
            }
        }
        BranchResult { best, candidates, examined }
    });

    let optimal_value = branches.iter().map(|b| b.best).fold(f64::INFINITY, f64::min);
    let partitions_examined = branches.iter().map(|b| b.examined).sum();
    let minimizers: Vec<Minimizer> = branches
        .into_iter()
        .flat_map(|b| b.candidates)
        .filter(|m| m.total <= optimal_value + tol)
        .collect();
    debug_assert!(minimizers.windows(2).all(|w| w[0].partition < w[1].partition));
    Ok(MinimizerSet { optimal_value, minimizers, lambda, p, n, partitions_examined })
}

/// Minimum N-cut over connected partitions (`λ = 1`).
pub fn minimize_cut(graph: &WeightedGraph, n: usize, settings: &Settings) -> Result<MinimizerSet> {
    minimize(graph, n, 1.0, PNorm::Finite(2.0), settings)
}

/// Most balanced connected partitions (`λ = 0`).
pub fn minimize_deviation(
    graph: &WeightedGraph,
    n: usize,
    p: PNorm,
    settings: &Settings,
) -> Result<MinimizerSet> {
    minimize(graph, n, 0.0, p, settings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::graph::parse_graph;

    fn cycle4() -> WeightedGraph {
        parse_graph("v a 9\nv b 1\nv c 9\nv d 1\ne a b 1\ne b c 1\ne c d 1\ne d a 1").unwrap()
    }

    #[test]
    fn deviation_minimizers_tie_on_symmetric_cycle() {
        let g = cycle4();
        let set = minimize_deviation(&g, 2, PNorm::Finite(2.0), &Settings::default()).unwrap();
        assert_eq!(set.optimal_value, 0.0);
        let texts: Vec<_> = set.minimizers.iter().map(|m| m.partition.to_text(&g)).collect();
        assert_eq!(texts, vec!["a,b|c,d", "a,d|b,c"]);
    }

    #[test]
    fn single_block_costs_nothing() {
        let g = cycle4();
        let set = minimize_cut(&g, 1, &Settings::default()).unwrap();
        assert_eq!(set.optimal_value, 0.0);
        assert!(set.is_unique());
    }

    #[test]
    fn forced_partition_when_every_vertex_is_a_block() {
        let g = parse_graph("v a 1\nv b 1\nv c 1\ne a b 1\ne b c 1").unwrap();
        let set = minimize_deviation(&g, 3, PNorm::Finite(2.0), &Settings::default()).unwrap();
        assert!(set.is_unique());
        assert_eq!(set.minimizers[0].partition.to_text(&g), "a|b|c");
        assert_eq!(set.optimal_value, 0.0);
    }

    #[test]
    fn rejects_bad_parameters() {
        let g = cycle4();
        let s = Settings::default();
        assert_eq!(minimize(&g, 2, -0.1, PNorm::Infinity, &s), Err(Error::LambdaOutOfRange(-0.1)));
        assert!(matches!(
            minimize(&g, 5, 0.5, PNorm::Infinity, &s),
            Err(Error::BlockCountOutOfRange { .. })
        ));
    }

    #[test]
    fn pruning_and_workers_do_not_change_the_result() {
        let g = cycle4();
        let base = minimize(&g, 2, 0.4, PNorm::Finite(2.0), &Settings::default()).unwrap();
        let unpruned = minimize(
            &g,
            2,
            0.4,
            PNorm::Finite(2.0),
            &Settings { prune: false, ..Settings::default() },
        )
        .unwrap();
        assert_eq!(base.optimal_value, unpruned.optimal_value);
        assert_eq!(base.partitions(), unpruned.partitions());
        let par = minimize(
            &g,
            2,
            0.4,
            PNorm::Finite(2.0),
            &Settings { workers: 3, ..Settings::default() },
        )
        .unwrap();
        assert_eq!(par, base);
    }
}
