//! Parametric analysis in λ.
//!
//! For a fixed partition the energy is affine in λ: `deviation + λ (cut −
//! deviation)`. The optimal energy is the lower envelope of these lines,
//! a concave piecewise-affine function on `[0, 1]`. Only lines that are not
//! beaten by another line at both `λ = 0` and `λ = 1` (by more than the
//! tolerance) can touch the envelope; those are collected from the partition
//! stream and the envelope is traced over them.

use crate::energy::{combine, deviation_of, PNorm};
use crate::error::Result;
use crate::graph::WeightedGraph;
use crate::partition::{check_block_count, ensure_valid, fan_out, Partition};
use crate::Settings;

/// Energy of one partition as a function of λ.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineLine {
    pub cut: f64,
    pub deviation: f64,
    pub partition: Partition,
}

impl AffineLine {
    pub fn slope(&self) -> f64 {
        self.cut - self.deviation
    }

    pub fn intercept(&self) -> f64 {
        self.deviation
    }

    pub fn at(&self, lambda: f64) -> f64 {
        combine(lambda, self.cut, self.deviation)
    }

    fn dominated_by(&self, other: &AffineLine, tol: f64) -> bool {
        other.deviation < self.deviation - tol && other.cut < self.cut - tol
    }
}

pub fn energy_line(graph: &WeightedGraph, partition: &Partition, p: PNorm) -> Result<AffineLine> {
    ensure_valid(graph, partition)?;
    Ok(AffineLine {
        cut: crate::energy::cut_unchecked(graph, partition),
        deviation: crate::energy::deviation_unchecked(graph, partition, p),
        partition: partition.clone(),
    })
}

/// A maximal λ-interval on which one line is optimal.
#[derive(Clone, Debug, PartialEq)]
pub struct Segment {
    pub lambda_low: f64,
    pub lambda_high: f64,
    pub cut: f64,
    pub deviation: f64,
    /// Every partition whose line coincides with the envelope on the segment.
    pub minimizers: Vec<Partition>,
}

impl Segment {
    pub fn slope(&self) -> f64 {
        self.cut - self.deviation
    }
}

/// Minimizers at a single λ (the endpoints and each breakpoint).
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    pub lambda: f64,
    pub value: f64,
    pub minimizers: Vec<Partition>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransitionDiagram {
    pub n: usize,
    pub p: PNorm,
    /// Interior transition values, ascending.
    pub breakpoints: Vec<f64>,
    pub segments: Vec<Segment>,
    /// At `0`, each breakpoint, and `1`.
    pub points: Vec<PointSet>,
    pub lambda_first: f64,
    pub lambda_last: f64,
    pub tol: f64,
    candidates: Vec<AffineLine>,
}

impl TransitionDiagram {
    /// Optimal energy at `lambda`.
    pub fn value_at(&self, lambda: f64) -> f64 {
        self.candidates.iter().map(|l| l.at(lambda)).fold(f64::INFINITY, f64::min)
    }

    /// Partitions within tolerance of the optimum at `lambda`, canonical order.
    pub fn minimizers_at(&self, lambda: f64) -> Vec<Partition> {
        let best = self.value_at(lambda);
        self.candidates
            .iter()
            .filter(|l| l.at(lambda) <= best + self.tol)
            .map(|l| l.partition.clone())
            .collect()
    }

    /// Lines that can be optimal somewhere on `[0, 1]`, canonical order.
    pub fn candidate_lines(&self) -> &[AffineLine] {
        &self.candidates
    }

    /// Whether `line` is strictly above the envelope (beyond tolerance) on all of `[0, 1]`.
    pub fn never_minimal(&self, line: &AffineLine) -> bool {
        // line − envelope is convex, so its minimum sits at a breakpoint or an endpoint.
        self.points.iter().all(|pt| line.at(pt.lambda) > pt.value + self.tol)
    }

    /// The closed λ-interval on which `partition` is a minimizer, if any.
    pub fn minimality_interval(&self, partition: &Partition) -> Option<(f64, f64)> {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for s in &self.segments {
            if s.minimizers.contains(partition) {
                lo = lo.min(s.lambda_low);
                hi = hi.max(s.lambda_high);
            }
        }
        for pt in &self.points {
            if pt.minimizers.contains(partition) {
                lo = lo.min(pt.lambda);
                hi = hi.max(pt.lambda);
            }
        }
        (lo <= hi).then_some((lo, hi))
    }
}

/// Result of a first/last transition query.
#[derive(Clone, Debug, PartialEq)]
pub struct Transition {
    pub lambda: f64,
    pub witnesses: Vec<Partition>,
}

pub fn lower_envelope(
    graph: &WeightedGraph,
    n: usize,
    p: PNorm,
    settings: &Settings,
) -> Result<TransitionDiagram> {
    check_block_count(graph, n)?;
    let tol = settings.tol;
    let total_mass = graph.total_mass();

    let fronts = fan_out(graph, n, settings, |mut w| {
        let mut masses = vec![0.0; n];
        let mut front: Vec<AffineLine> = Vec::new();
        while w.advance(|_| false) {
            w.leaf_masses(&mut masses);
            let line = AffineLine {
                cut: w.leaf_cut(),
                deviation: deviation_of(&masses, total_mass, p),
                partition: w.partition(),
            };
            insert_front(&mut front, line, tol);
        }
        front
    });
    let seen: Vec<AffineLine> = fronts.into_iter().flatten().collect();
    // Order-independent survivor set: keep what no collected line dominates.
    let candidates: Vec<AffineLine> = seen
        .iter()
        .filter(|l| !seen.iter().any(|o| l.dominated_by(o, tol)))
        .cloned()
        .collect();

    Ok(build_diagram(n, p, candidates, tol))
}

fn insert_front(front: &mut Vec<AffineLine>, line: AffineLine, tol: f64) {
    if front.iter().any(|o| line.dominated_by(o, tol)) {
        return;
    }
    front.retain(|o| !o.dominated_by(&line, tol));
    front.push(line);
}

fn build_diagram(n: usize, p: PNorm, mut candidates: Vec<AffineLine>, tol: f64) -> TransitionDiagram {
    candidates.sort_by(|a, b| a.partition.cmp(&b.partition));

    // Trace the envelope left to right: active line indices and where each starts.
    let min0 = candidates.iter().map(|l| l.intercept()).fold(f64::INFINITY, f64::min);
    let mut current = pick_steepest_descent(
        &candidates,
        (0..candidates.len()).filter(|&i| candidates[i].intercept() <= min0 + tol),
    );
    let mut active: Vec<(usize, f64)> = vec![(current, 0.0)];
    let mut at = 0.0;
    loop {
        let cur = &candidates[current];
        let crossings: Vec<(usize, f64)> = candidates
            .iter()
            .enumerate()
            .filter(|(_, l)| l.slope() < cur.slope())
            .map(|(i, l)| {
                let x = (l.intercept() - cur.intercept()) / (cur.slope() - l.slope());
                (i, x.max(at))
            })
            .collect();
        let Some(first) = crossings.iter().map(|c| c.1).reduce(f64::min) else {
            break;
        };
        if first >= 1.0 - tol {
            break;
        }
        let group = crossings.iter().filter(|c| c.1 <= first + tol).map(|c| c.0);
        current = pick_steepest_descent(&candidates, group);
        if first <= at + tol {
            // Switch without a new breakpoint (tie at the current point).
            active.last_mut().expect("non-empty").0 = current;
        } else {
            active.push((current, first));
        }
        at = first.max(at);
    }

    let breakpoints: Vec<f64> = active.iter().skip(1).map(|a| a.1).collect();
    let value_at = |lambda: f64| candidates.iter().map(|l| l.at(lambda)).fold(f64::INFINITY, f64::min);

    let mut segments = Vec::with_capacity(active.len());
    for (i, &(line, low)) in active.iter().enumerate() {
        let high = active.get(i + 1).map_or(1.0, |a| a.1);
        let (vlo, vhi) = (value_at(low), value_at(high));
        let minimizers = candidates
            .iter()
            .filter(|l| l.at(low) <= vlo + tol && l.at(high) <= vhi + tol)
            .map(|l| l.partition.clone())
            .collect();
        segments.push(Segment {
            lambda_low: low,
            lambda_high: high,
            cut: candidates[line].cut,
            deviation: candidates[line].deviation,
            minimizers,
        });
    }

    let mut points = Vec::with_capacity(breakpoints.len() + 2);
    for lambda in std::iter::once(0.0).chain(breakpoints.iter().copied()).chain(std::iter::once(1.0)) {
        let value = value_at(lambda);
        let minimizers = candidates
            .iter()
            .filter(|l| l.at(lambda) <= value + tol)
            .map(|l| l.partition.clone())
            .collect();
        points.push(PointSet { lambda, value, minimizers });
    }

    let lambda_first = breakpoints.first().copied().unwrap_or(1.0);
    let lambda_last = breakpoints.last().copied().unwrap_or(0.0);
    TransitionDiagram { n, p, breakpoints, segments, points, lambda_first, lambda_last, tol, candidates }
}

/// Among the given lines, the one with the smallest slope
/// (ties: smaller intercept, then canonical order).
fn pick_steepest_descent(lines: &[AffineLine], among: impl Iterator<Item = usize>) -> usize {
    let mut best: Option<usize> = None;
    for i in among {
        let l = &lines[i];
        best = match best {
            None => Some(i),
            Some(b) => {
                let cur = &lines[b];
                if (l.slope(), l.intercept()) < (cur.slope(), cur.intercept()) {
                    Some(i)
                } else {
                    Some(b)
                }
            }
        };
    }
    best.expect("at least one line")
}

/// Largest λ up to which a deviation-optimal partition stays optimal.
pub fn first_transition(
    graph: &WeightedGraph,
    n: usize,
    p: PNorm,
    settings: &Settings,
) -> Result<Transition> {
    let d = lower_envelope(graph, n, p, settings)?;
    Ok(d.first_transition())
}

/// Smallest λ from which a minimum-cut partition stays optimal up to 1.
pub fn last_transition(
    graph: &WeightedGraph,
    n: usize,
    p: PNorm,
    settings: &Settings,
) -> Result<Transition> {
    let d = lower_envelope(graph, n, p, settings)?;
    Ok(d.last_transition())
}

impl TransitionDiagram {
    pub fn first_transition(&self) -> Transition {
        let s = self.segments.first().expect("at least one segment");
        Transition { lambda: self.lambda_first, witnesses: s.minimizers.clone() }
    }

    pub fn last_transition(&self) -> Transition {
        let s = self.segments.last().expect("at least one segment");
        Transition { lambda: self.lambda_last, witnesses: s.minimizers.clone() }
    }
}
