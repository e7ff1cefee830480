//! Quality indicators: inverted generational distance and hypervolume.

mod hypervolume;

pub use hypervolume::{hv_exact, hv_monte_carlo, HvEstimate};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seeded_rng;

/// Above this many objectives [`HvMethod::Auto`] switches to sampling.
pub const DEFAULT_EXACT_HV_MAX_OBJECTIVES: usize = 14;

/// Default Monte Carlo sample count.
pub const DEFAULT_HV_SAMPLES: usize = 1_000_000;

/// Mean distance from each reference point to its nearest solution.
pub fn igd(solutions: &[Vec<f64>], reference: &[Vec<f64>]) -> Result<f64> {
    if solutions.is_empty() {
        return Err(Error::Contract("IGD of an empty solution set".into()));
    }
    if reference.is_empty() {
        return Err(Error::Contract("IGD against an empty reference set".into()));
    }
    let total: f64 = reference
        .iter()
        .map(|r| {
            solutions
                .iter()
                .map(|s| {
                    r.iter()
                        .zip(s)
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum::<f64>()
                })
                .fold(f64::INFINITY, f64::min)
                .sqrt()
        })
        .sum();
    Ok(total / reference.len() as f64)
}

/// How to compute a hypervolume.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum HvMethod {
    Exact,
    MonteCarlo { samples: usize, seed: u64 },
    /// Exact up to `exact_max_objectives`, sampling beyond.
    Auto {
        exact_max_objectives: usize,
        samples: usize,
        seed: u64,
    },
}

impl Default for HvMethod {
    fn default() -> Self {
        HvMethod::Auto {
            exact_max_objectives: DEFAULT_EXACT_HV_MAX_OBJECTIVES,
            samples: DEFAULT_HV_SAMPLES,
            seed: 0,
        }
    }
}

/// Hypervolume divided by the volume of the box `[0, z_ref]`.
pub fn hv_normalized(solutions: &[Vec<f64>], z_ref: &[f64], method: HvMethod) -> Result<f64> {
    if z_ref.iter().any(|&z| !(z.is_finite() && z > 0.0)) {
        return Err(Error::Contract(format!(
            "normalized hypervolume needs a strictly positive reference point, got {z_ref:?}"
        )));
    }
    let divisor: f64 = z_ref.iter().product();
    let exact = match method {
        HvMethod::Exact => true,
        HvMethod::MonteCarlo { .. } => false,
        HvMethod::Auto {
            exact_max_objectives,
            ..
        } => z_ref.len() <= exact_max_objectives,
    };
    let volume = if exact {
        hv_exact(solutions, z_ref)
    } else {
        let (samples, seed) = match method {
            HvMethod::MonteCarlo { samples, seed } | HvMethod::Auto { samples, seed, .. } => {
                (samples, seed)
            }
            HvMethod::Exact => unreachable!(),
        };
        hv_monte_carlo(solutions, z_ref, samples, &mut seeded_rng(seed))?.value
    };
    Ok(volume / divisor)
}
