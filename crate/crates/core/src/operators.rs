//! Variation: mating selection, simulated binary crossover (SBX) and
//! polynomial mutation, both in their bounded forms.

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::algorithm::Individual;
use crate::error::{Error, Result};
use crate::weights::WeightSet;
use crate::Rng;

const EPS: f64 = 1e-14;

/// Crossover, mutation and mating parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VariationParams {
    /// Probability that a parent pair is crossed at all.
    pub crossover_prob: f64,
    /// SBX distribution index.
    pub crossover_eta: f64,
    /// Per-variable mutation probability.
    pub mutation_prob: f64,
    /// Polynomial-mutation distribution index.
    pub mutation_eta: f64,
    /// Probability of drawing both parents from the neighborhood.
    pub neighborhood_prob: f64,
}

impl VariationParams {
    /// `pc = 1.0`, `eta_c = 30`, `pm = 0.6 / n`, `eta_m = 20`, `ps = 0.9`.
    pub fn defaults_for(variables: usize) -> Self {
        Self {
            crossover_prob: 1.0,
            crossover_eta: 30.0,
            mutation_prob: 0.6 / variables as f64,
            mutation_eta: 20.0,
            neighborhood_prob: 0.9,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, p) in [
            ("crossover probability", self.crossover_prob),
            ("mutation probability", self.mutation_prob),
            ("neighborhood probability", self.neighborhood_prob),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Config(format!("{name} must lie in [0, 1], got {p}")));
            }
        }
        for (name, eta) in [
            ("crossover index", self.crossover_eta),
            ("mutation index", self.mutation_eta),
        ] {
            if eta.is_nan() || eta < 0.0 {
                return Err(Error::Config(format!("{name} must be >= 0, got {eta}")));
            }
        }
        Ok(())
    }
}

/// Picks two distinct parent slots for weight `slot`: from its neighborhood
/// with probability `neighborhood_prob`, otherwise from the whole population.
/// Distinctness is retried as many times as the pool has members; after that
/// the pair may coincide.
pub fn select_mating_parents(
    slot: usize,
    weights: &WeightSet,
    neighborhood_prob: f64,
    rng: &mut Rng,
) -> (usize, usize) {
    let n = weights.len();
    let from_neighborhood = rng.random::<f64>() < neighborhood_prob;
    let pick = |rng: &mut Rng| {
        if from_neighborhood {
            let row = weights.neighborhood(slot);
            row[rng.random_range(0..row.len())]
        } else {
            rng.random_range(0..n)
        }
    };
    let pool = if from_neighborhood {
        weights.neighborhood_size()
    } else {
        n
    };
    let a = pick(rng);
    let mut b = pick(rng);
    let mut tries = 0;
    while b == a && tries < pool {
        b = pick(rng);
        tries += 1;
    }
    (a, b)
}

/// Bounded SBX. With probability `prob` the pair is crossed; each variable is
/// then recombined with probability 0.5 and the two children swap that
/// variable with probability 0.5.
pub fn sbx_crossover(
    p1: &[f64],
    p2: &[f64],
    lower: &[f64],
    upper: &[f64],
    prob: f64,
    eta: f64,
    rng: &mut Rng,
) -> (Vec<f64>, Vec<f64>) {
    let mut c1 = p1.to_vec();
    let mut c2 = p2.to_vec();
    if rng.random::<f64>() > prob || prob == 0.0 {
        return (c1, c2);
    }
    for i in 0..p1.len() {
        if rng.random::<f64>() > 0.5 || (p1[i] - p2[i]).abs() <= EPS {
            continue;
        }
        let (y1, y2) = if p1[i] < p2[i] {
            (p1[i], p2[i])
        } else {
            (p2[i], p1[i])
        };
        let (lo, hi) = (lower[i], upper[i]);
        let u = rng.random::<f64>();
        let spread = |beta: f64| {
            let alpha = 2.0 - beta.powf(-(eta + 1.0));
            if u <= 1.0 / alpha {
                (u * alpha).powf(1.0 / (eta + 1.0))
            } else {
                (1.0 / (2.0 - u * alpha)).powf(1.0 / (eta + 1.0))
            }
        };
        let gap = y2 - y1;
        let bq1 = spread(1.0 + 2.0 * (y1 - lo) / gap);
        let bq2 = spread(1.0 + 2.0 * (hi - y2) / gap);
        let a = (0.5 * ((y1 + y2) - bq1 * gap)).clamp(lo, hi);
        let b = (0.5 * ((y1 + y2) + bq2 * gap)).clamp(lo, hi);
        if rng.random::<f64>() <= 0.5 {
            c1[i] = b;
            c2[i] = a;
        } else {
            c1[i] = a;
            c2[i] = b;
        }
    }
    (c1, c2)
}

/// Bounded polynomial mutation applied per variable with probability `prob`.
pub fn polynomial_mutation(
    x: &mut [f64],
    lower: &[f64],
    upper: &[f64],
    prob: f64,
    eta: f64,
    rng: &mut Rng,
) {
    if prob == 0.0 {
        return;
    }
    let power = 1.0 / (eta + 1.0);
    for i in 0..x.len() {
        if rng.random::<f64>() > prob {
            continue;
        }
        let (lo, hi) = (lower[i], upper[i]);
        let width = hi - lo;
        if width <= 0.0 {
            continue;
        }
        let y = x[i];
        let delta1 = (y - lo) / width;
        let delta2 = (hi - y) / width;
        let u = rng.random::<f64>();
        let deltaq = if u <= 0.5 {
            let val = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - delta1).powf(eta + 1.0);
            val.powf(power) - 1.0
        } else {
            let val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - delta2).powf(eta + 1.0);
            1.0 - val.powf(power)
        };
        x[i] = (y + deltaq * width).clamp(lo, hi);
    }
}

/// One offspring for weight `slot`: select parents, cross them, keep one of
/// the two children at random and mutate it. The result is not evaluated.
pub fn reproduce(
    slot: usize,
    weights: &WeightSet,
    population: &[Individual],
    lower: &[f64],
    upper: &[f64],
    params: &VariationParams,
    rng: &mut Rng,
) -> Vec<f64> {
    let (a, b) = select_mating_parents(slot, weights, params.neighborhood_prob, rng);
    let (c1, c2) = sbx_crossover(
        &population[a].x,
        &population[b].x,
        lower,
        upper,
        params.crossover_prob,
        params.crossover_eta,
        rng,
    );
    let mut child = if rng.random::<bool>() { c1 } else { c2 };
    polynomial_mutation(
        &mut child,
        lower,
        upper,
        params.mutation_prob,
        params.mutation_eta,
        rng,
    );
    child
}
