//! Masses, cut energy, p-deviation energy and the combined functional.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::partition::{ensure_valid, Partition};

/// Exponent of the deviation norm: a finite real `p >= 1`, or the max-norm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PNorm {
    Finite(f64),
    Infinity,
}

impl PNorm {
    pub fn new(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(PNorm::Infinity)
        } else if p.is_finite() && p >= 1.0 {
            Ok(PNorm::Finite(p))
        } else {
            Err(Error::InvalidNorm(p.to_string()))
        }
    }

    pub fn value(self) -> f64 {
        match self {
            PNorm::Finite(p) => p,
            PNorm::Infinity => f64::INFINITY,
        }
    }

    /// Norm of a deviation vector.
    pub fn norm(self, xs: impl IntoIterator<Item = f64>) -> f64 {
        match self {
            PNorm::Infinity => xs.into_iter().fold(0.0, |m, x| m.max(x.abs())),
            PNorm::Finite(p) if p == 1.0 => xs.into_iter().map(f64::abs).sum(),
            PNorm::Finite(p) if p == 2.0 => xs.into_iter().map(|x| x * x).sum::<f64>().sqrt(),
            PNorm::Finite(p) => xs.into_iter().map(|x| x.abs().powf(p)).sum::<f64>().powf(1.0 / p),
        }
    }
}

impl fmt::Display for PNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PNorm::Finite(p) => write!(f, "{p}"),
            PNorm::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for PNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(PNorm::Infinity),
            t => t
                .parse::<f64>()
                .map_err(|_| Error::InvalidNorm(s.to_string()))
                .and_then(PNorm::new),
        }
    }
}

impl Serialize for PNorm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PNorm::Finite(p) => s.serialize_f64(*p),
            PNorm::Infinity => s.serialize_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EnergyBreakdown {
    pub cut: f64,
    pub deviation: f64,
    pub lambda: f64,
    pub p: PNorm,
    pub total: f64,
}

pub(crate) fn check_lambda(lambda: f64) -> Result<()> {
    if (0.0..=1.0).contains(&lambda) {
        Ok(())
    } else {
        Err(Error::LambdaOutOfRange(lambda))
    }
}

/// Total mass of a set of vertices.
pub fn mass(graph: &WeightedGraph, block: &[usize]) -> Result<f64> {
    if block.is_empty() {
        return Err(Error::EmptyBlock);
    }
    block
        .iter()
        .map(|&v| {
            if v < graph.vertex_count() {
                Ok(graph.mass(v))
            } else {
                Err(Error::UnknownVertex(v.to_string()))
            }
        })
        .sum()
}

/// Deviation of block masses from the mean `total / blocks`.
pub(crate) fn deviation_of(block_masses: &[f64], total: f64, p: PNorm) -> f64 {
    let mean = total / block_masses.len() as f64;
    p.norm(block_masses.iter().map(|m| m - mean))
}

pub(crate) fn block_masses(graph: &WeightedGraph, partition: &Partition) -> Vec<f64> {
    let mut out = vec![0.0; partition.num_blocks()];
    for (v, b) in partition.labels().enumerate() {
        out[b] += graph.mass(v);
    }
    out
}

pub(crate) fn cut_unchecked(graph: &WeightedGraph, partition: &Partition) -> f64 {
    graph
        .edges()
        .iter()
        .filter(|e| !partition.same_block(e.u, e.v))
        .map(|e| e.weight)
        .sum()
}

pub(crate) fn deviation_unchecked(graph: &WeightedGraph, partition: &Partition, p: PNorm) -> f64 {
    deviation_of(&block_masses(graph, partition), graph.total_mass(), p)
}

pub fn cut_energy(graph: &WeightedGraph, partition: &Partition) -> Result<f64> {
    ensure_valid(graph, partition)?;
    Ok(cut_unchecked(graph, partition))
}

pub fn deviation_energy(graph: &WeightedGraph, partition: &Partition, p: PNorm) -> Result<f64> {
    ensure_valid(graph, partition)?;
    Ok(deviation_unchecked(graph, partition, p))
}

pub fn total_energy(
    graph: &WeightedGraph,
    partition: &Partition,
    lambda: f64,
    p: PNorm,
) -> Result<EnergyBreakdown> {
    check_lambda(lambda)?;
    ensure_valid(graph, partition)?;
    let cut = cut_unchecked(graph, partition);
    let deviation = deviation_unchecked(graph, partition, p);
    Ok(EnergyBreakdown { cut, deviation, lambda, p, total: combine(lambda, cut, deviation) })
}

#[inline]
pub(crate) fn combine(lambda: f64, cut: f64, deviation: f64) -> f64 {
    lambda * cut + (1.0 - lambda) * deviation
}
