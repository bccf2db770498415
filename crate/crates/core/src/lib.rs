//! Exact solver and analysis toolkit for districting a weighted graph into
//! connected blocks under the energy
//!
//! ```text
//! F(λ, p) = λ · (weight of cut edges) + (1 − λ) · ‖block mass − mean mass‖_p
//! ```
//!
//! Everything is computed by exhaustive enumeration of connected partitions,
//! which is exact and fast for graphs of a few dozen vertices at most.

pub mod cli;
pub mod energy;
pub mod envelope;
pub mod error;
pub mod fixtures;
pub mod forcing;
pub mod graph;
pub mod partition;
pub mod refinement;
pub mod reproduction;
pub mod solver;

pub use energy::{cut_energy, deviation_energy, mass, total_energy, EnergyBreakdown, PNorm};
pub use envelope::{
    energy_line, first_transition, last_transition, lower_envelope, AffineLine, Transition,
    TransitionDiagram,
};
pub use error::{Error, Result};
pub use fixtures::{load_fixture, Fixture, FixtureParams};
pub use forcing::{
    force_together_threshold, isolation_analysis, isolation_pigeonhole, separation_feasibility,
    ForcingAnalysis, IsolationAnalysis, PigeonholeVerdict, SeparationOutcome,
};
pub use graph::{parse_graph, scale_weights, serialize, validate, RawGraph, WeightedGraph};
pub use partition::{
    count_partitions, cut_set, enumerate_partitions, is_valid_partition, CutSet, Partition,
};
pub use refinement::{is_j_refining, refinement_gap, RefinementReport};
pub use solver::{minimize, minimize_cut, minimize_deviation, MinimizerSet};

/// Absolute tolerance for every energy comparison.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Numerical and execution settings shared by the solvers.
#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    /// Absolute tie tolerance.
    pub tol: f64,
    /// Worker threads; `1` runs on the calling thread.
    pub workers: usize,
    /// Branch-and-bound pruning in [`minimize`].
    pub prune: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL, workers: 1, prune: true }
    }
}

impl Settings {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }

    pub(crate) fn install<T: Send>(&self, job: impl FnOnce() -> T + Send) -> T {
        if self.workers <= 1 {
            return job();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(self.workers).build() {
            Ok(pool) => pool.install(job),
            Err(_) => job(),
        }
    }
}
