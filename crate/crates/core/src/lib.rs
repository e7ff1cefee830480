//! # moea-glu
//!
//! A decomposition-based evolutionary algorithm for multi- and many-objective
//! minimization. Every weight vector owns exactly one individual, and each
//! new offspring is routed to the weight vector it sits closest to
//! (perpendicular distance). If it beats the incumbent there, the two swap and
//! the displaced individual goes looking for its own home, cascading until
//! somebody loses a comparison. This *global loop update* keeps all `N`
//! directions occupied for the whole run.
//!
//! Alongside the algorithm the crate ships the pieces needed to benchmark it:
//!
//! * [`weights`] – simplex-lattice weight vectors (single and two-layer) and neighborhoods
//! * [`problems`] – DTLZ1–4 and WFG1–9, scalable in the number of objectives
//! * [`criteria`] – dominance, PBI, distance and the two hybrid comparison rules
//! * [`operators`] – SBX crossover, polynomial mutation, mating selection
//! * [`algorithm`] – the main loop, the global loop update and the local-update baselines
//! * [`metrics`] – IGD, exact (WFG) and Monte Carlo hypervolume
//! * [`harness`] – experiment configuration, repeated seeded runs, statistics and exports
//!
//! ## Quick start
//!
//! ```rust
//! use moea_glu::harness::{ExperimentConfig, run_experiment};
//!
//! let mut config = ExperimentConfig::new("DTLZ2", 3);
//! config.generations = Some(20);
//! config.runs = 2;
//! let summary = run_experiment(&config.resolve().unwrap()).unwrap();
//! let igd = summary.metric("igd").unwrap();
//! assert!(igd.best <= igd.median && igd.median <= igd.worst);
//! ```

pub mod algorithm;
pub mod criteria;
mod error;
pub mod harness;
pub mod metrics;
pub mod operators;
pub mod problems;
pub mod weights;

pub use algorithm::{AlgorithmState, Individual, RunResult, UpdateReport, Variant};
pub use criteria::{dominates, ComparisonContext, CriterionKind};
pub use error::{Error, Result};
pub use operators::VariationParams;
pub use problems::{Problem, ProblemId};
pub use weights::{WeightSet, WeightVector};

/// Seeded generator used throughout the crate. ChaCha8 gives identical streams
/// on every platform, which the determinism guarantees rely on.
pub type Rng = rand_chacha::ChaCha8Rng;

/// Builds the crate's generator from a 64-bit seed.
pub fn seeded_rng(seed: u64) -> Rng {
    use rand::SeedableRng;
    Rng::seed_from_u64(seed)
}
