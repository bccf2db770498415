//! Edge-weight engineering: how much an edge weight must change to keep two
//! adjacent vertices in one block, whether they can be separated at all, and
//! when a single vertex can be forced to form a block of its own.

use serde::Serialize;

use crate::energy::{check_lambda, combine, deviation_of, PNorm};
use crate::envelope::lower_envelope;
use crate::error::{Error, Result};
use crate::graph::{Edge, WeightedGraph};
use crate::partition::{check_block_count, fan_out, Partition};
use crate::Settings;

/// Split of all N-partitions by whether they keep the endpoints of one edge
/// together.
///
/// Every separating partition has the target edge in its cut, so its energy
/// is `λ·g(edge) + D(π)` with `D(π)` independent of `g(edge)`. Partitions that
/// keep the pair together do not depend on `g(edge)` at all.
#[derive(Clone, Debug, PartialEq)]
pub struct ForcingAnalysis {
    pub edge: usize,
    pub n: usize,
    pub lambda: f64,
    pub p: PNorm,
    /// Minimum energy over partitions keeping the endpoints together.
    pub together_min: Option<f64>,
    /// Minimum over separating partitions of `energy − λ·g(edge)`.
    pub apart_min: Option<f64>,
    /// `(together_min − apart_min) / λ` when both classes are non-empty.
    pub threshold: Option<f64>,
    pub feasible_together: bool,
    pub feasible_apart: bool,
    pub together_witness: Option<Partition>,
    pub apart_witness: Option<Partition>,
}

impl ForcingAnalysis {
    /// Whether a weight strictly above the threshold keeps the pair together.
    /// `None` when there is no partition keeping them together.
    pub fn forces_together(&self, weight: f64) -> Option<bool> {
        if !self.feasible_together {
            return None;
        }
        Some(match self.threshold {
            Some(t) => weight > t,
            None => true,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SeparationOutcome {
    /// Any positive weight strictly below `threshold` lets a separating
    /// partition be optimal.
    Possible { threshold: f64 },
    /// The threshold is non-positive: no positive weight separates the pair.
    Impossible { threshold: f64 },
    /// Every N-partition keeps the pair together.
    NoSeparatingPartition,
    /// Every N-partition separates the pair.
    AlwaysSeparated,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeparationVerdict {
    pub analysis: ForcingAnalysis,
    pub outcome: SeparationOutcome,
}

fn check_forcing_args(graph: &WeightedGraph, n: usize, lambda: f64, edge: usize) -> Result<()> {
    check_block_count(graph, n)?;
    check_lambda(lambda)?;
    if lambda == 0.0 {
        return Err(Error::ZeroLambda);
    }
    if edge >= graph.edge_count() {
        return Err(Error::MissingEdge(format!("#{edge}"), String::new()));
    }
    Ok(())
}

fn analyse(
    graph: &WeightedGraph,
    n: usize,
    lambda: f64,
    p: PNorm,
    edge: usize,
    settings: &Settings,
) -> Result<ForcingAnalysis> {
    check_forcing_args(graph, n, lambda, edge)?;
    let Edge { u, v, weight } = *graph.edge(edge);
    let total_mass = graph.total_mass();

    type Best = Option<(f64, Partition)>;
    let keep_min = |slot: &mut Best, value: f64, w: &crate::partition::Walker<'_>| {
        if slot.as_ref().map_or(true, |(b, _)| value < *b) {
            *slot = Some((value, w.partition()));
        }
    };
    let branches = fan_out(graph, n, settings, |mut w| {
        let mut masses = vec![0.0; n];
        let mut together: Best = None;
        let mut apart: Best = None;
        while w.advance(|_| false) {
            w.leaf_masses(&mut masses);
            let deviation = deviation_of(&masses, total_mass, p);
            let labels = w.leaf_labels();
            if labels[u] == labels[v] {
                keep_min(&mut together, combine(lambda, w.leaf_cut(), deviation), &w);
            } else {
                let rest = combine(lambda, w.leaf_cut() - weight, deviation);
                keep_min(&mut apart, rest, &w);
            }
        }
        (together, apart)
    });
    let mut together: Best = None;
    let mut apart: Best = None;
    for (t, a) in branches {
        for (slot, cand) in [(&mut together, t), (&mut apart, a)] {
            if let Some((value, part)) = cand {
                if slot.as_ref().map_or(true, |(b, _)| value < *b) {
                    *slot = Some((value, part));
                }
            }
        }
    }
    let together_min = together.as_ref().map(|t| t.0);
    let apart_min = apart.as_ref().map(|a| a.0);
    let threshold = match (together_min, apart_min) {
        (Some(k), Some(d)) => Some((k - d) / lambda),
        _ => None,
    };
    Ok(ForcingAnalysis {
        edge,
        n,
        lambda,
        p,
        together_min,
        apart_min,
        threshold,
        feasible_together: together.is_some(),
        feasible_apart: apart.is_some(),
        together_witness: together.map(|t| t.1),
        apart_witness: apart.map(|a| a.1),
    })
}

/// Edge weight above which every minimizer keeps the endpoints of `edge`
/// in one block. At exactly the threshold the two classes may tie.
pub fn force_together_threshold(
    graph: &WeightedGraph,
    n: usize,
    lambda: f64,
    p: PNorm,
    edge: usize,
    settings: &Settings,
) -> Result<ForcingAnalysis> {
    analyse(graph, n, lambda, p, edge, settings)
}

/// Whether lowering the weight of `edge` can ever make a separating
/// partition optimal.
pub fn separation_feasibility(
    graph: &WeightedGraph,
    n: usize,
    lambda: f64,
    p: PNorm,
    edge: usize,
    settings: &Settings,
) -> Result<SeparationVerdict> {
    let analysis = analyse(graph, n, lambda, p, edge, settings)?;
    let outcome = match (analysis.feasible_together, analysis.feasible_apart, analysis.threshold) {
        (_, false, _) => SeparationOutcome::NoSeparatingPartition,
        (false, true, _) => SeparationOutcome::AlwaysSeparated,
        (true, true, Some(t)) if t > settings.tol => SeparationOutcome::Possible { threshold: t },
        (true, true, Some(t)) => SeparationOutcome::Impossible { threshold: t },
        (true, true, None) => unreachable!("threshold exists when both classes are non-empty"),
    };
    Ok(SeparationVerdict { analysis, outcome })
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsolationAnalysis {
    pub vertex: usize,
    /// Total weight of the edges incident to the vertex.
    pub boundary_weight: f64,
    /// Whether `{v} | rest` is a connected 2-partition.
    pub feasible: bool,
    /// Present only when `feasible`.
    pub details: Option<IsolationDetails>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsolationDetails {
    pub singleton: Partition,
    /// Closed λ-interval on which the singleton partition is minimal with the
    /// current weights.
    pub lambda_interval: Option<(f64, f64)>,
    /// Largest factor `t` such that scaling every boundary edge by any
    /// `t' <= t` makes the singleton partition minimal on some `(λ̄, 1]`.
    /// `None` when every scale works (the singleton is the only 2-partition).
    pub scale_threshold: Option<f64>,
}

/// Boundary edges of `vertex` multiplied by `factor`.
pub fn scale_boundary(graph: &WeightedGraph, vertex: usize, factor: f64) -> Result<WeightedGraph> {
    graph.map_weights(
        |_, m| m,
        |_, e| if e.u == vertex || e.v == vertex { e.weight * factor } else { e.weight },
    )
}

/// Every mass and every non-boundary edge weight multiplied by `factor`.
pub fn scale_interior(graph: &WeightedGraph, vertex: usize, factor: f64) -> Result<WeightedGraph> {
    graph.map_weights(
        |_, m| m * factor,
        |_, e| if e.u == vertex || e.v == vertex { e.weight } else { e.weight * factor },
    )
}

fn singleton_partition(graph: &WeightedGraph, vertex: usize) -> Partition {
    let labels: Vec<usize> = (0..graph.vertex_count()).map(|v| usize::from(v == vertex)).collect();
    Partition::from_labels(&labels)
}

const MAX_SCALE_STEPS: usize = 200;
const SCALE_PRECISION: f64 = 1e-6;

/// Isolation of one vertex in a 2-partition.
pub fn isolation_analysis(
    graph: &WeightedGraph,
    vertex: usize,
    p: PNorm,
    settings: &Settings,
) -> Result<IsolationAnalysis> {
    if graph.vertex_count() < 2 {
        return Err(Error::BlockCountOutOfRange { n: 2, vertices: graph.vertex_count() });
    }
    if vertex >= graph.vertex_count() {
        return Err(Error::UnknownVertex(vertex.to_string()));
    }
    let boundary_weight = graph.incident_edges(vertex).iter().map(|&e| graph.edge(e).weight).sum();
    let rest = graph.all_mask() & !(1u64 << vertex);
    let feasible = graph.is_connected_set(rest);
    if !feasible {
        return Ok(IsolationAnalysis { vertex, boundary_weight, feasible, details: None });
    }
    let singleton = singleton_partition(graph, vertex);
    let diagram = lower_envelope(graph, 2, p, settings)?;
    let lambda_interval = diagram.minimality_interval(&singleton);

    let isolates = |t: f64| -> Result<bool> {
        let scaled = scale_boundary(graph, vertex, t)?;
        let d = lower_envelope(&scaled, 2, p, settings)?;
        let last = d.segments.last().expect("at least one segment");
        Ok(last.minimizers.contains(&singleton) && last.lambda_low < 1.0)
    };

    let scale_threshold = if crate::partition::count_partitions_with(graph, 2, settings)? == 1 {
        None
    } else {
        let (mut lo, mut hi);
        if isolates(1.0)? {
            lo = 1.0;
            hi = 2.0;
            let mut steps = 0;
            while isolates(hi)? {
                lo = hi;
                hi *= 2.0;
                steps += 1;
                if steps > MAX_SCALE_STEPS {
                    return Err(Error::Unsupported("boundary scale search diverged".into()));
                }
            }
        } else {
            hi = 1.0;
            lo = 0.5;
            let mut steps = 0;
            while !isolates(lo)? {
                hi = lo;
                lo *= 0.5;
                steps += 1;
                if steps > MAX_SCALE_STEPS {
                    return Err(Error::Unsupported("no boundary scale isolates the vertex".into()));
                }
            }
        }
        while (hi - lo) > SCALE_PRECISION * lo {
            let mid = 0.5 * (lo + hi);
            if isolates(mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(lo)
    };

    Ok(IsolationAnalysis {
        vertex,
        boundary_weight,
        feasible,
        details: Some(IsolationDetails { singleton, lambda_interval, scale_threshold }),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PigeonholeVerdict {
    pub vertex: usize,
    pub n: usize,
    /// Connected components left after deleting the vertex.
    pub components: usize,
    /// Whether some connected N-partition has `{vertex}` as a block.
    pub feasible: bool,
    /// Components that must share the vertex's block in every N-partition.
    pub forced_components: usize,
}

/// Counting argument for isolating `vertex` in an N-partition: the
/// components of the graph minus the vertex can only be split, never merged,
/// without it, so the singleton needs `components <= N − 1`.
pub fn isolation_pigeonhole(graph: &WeightedGraph, vertex: usize, n: usize) -> Result<PigeonholeVerdict> {
    if vertex >= graph.vertex_count() {
        return Err(Error::UnknownVertex(vertex.to_string()));
    }
    let rest = graph.all_mask() & !(1u64 << vertex);
    let components = graph.components_of(rest).len();
    let feasible = n >= 1 && n <= graph.vertex_count() && components + 1 <= n;
    let forced_components = (components + 1).saturating_sub(n);
    Ok(PigeonholeVerdict { vertex, n, components, feasible, forced_components })
}
