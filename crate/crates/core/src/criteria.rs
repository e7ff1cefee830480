//! Rules for deciding whether a candidate solution should displace an
//! incumbent.
//!
//! All rules are strict: when neither solution is strictly better the
//! incumbent is kept.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which comparison rule to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CriterionKind {
    /// Pareto dominance only.
    Dominance,
    /// Penalty-based boundary intersection `d1 + theta * d2`.
    Pbi,
    /// Perpendicular distance `d2`, ties broken on `d1`.
    Distance,
    /// Dominance, falling back to PBI for mutually non-dominated pairs.
    H1,
    /// Dominance, falling back to `d2` for mutually non-dominated pairs.
    H2,
}

impl CriterionKind {
    pub const ALL: [CriterionKind; 5] = [
        CriterionKind::Dominance,
        CriterionKind::Pbi,
        CriterionKind::Distance,
        CriterionKind::H1,
        CriterionKind::H2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CriterionKind::Dominance => "dominance",
            CriterionKind::Pbi => "pbi",
            CriterionKind::Distance => "distance",
            CriterionKind::H1 => "h1",
            CriterionKind::H2 => "h2",
        }
    }
}

impl fmt::Display for CriterionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CriterionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CriterionKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown criterion {s:?}; expected one of dominance, pbi, distance, h1, h2"
                ))
            })
    }
}

/// Reference direction, ideal point and PBI penalty for one comparison.
#[derive(Debug, Clone, Copy)]
pub struct ComparisonContext<'a> {
    pub weight: &'a [f64],
    pub ideal: &'a [f64],
    pub theta: f64,
}

impl<'a> ComparisonContext<'a> {
    pub fn new(weight: &'a [f64], ideal: &'a [f64], theta: f64) -> Result<Self> {
        if weight.len() != ideal.len() {
            return Err(Error::Contract(format!(
                "weight has {} components, ideal point has {}",
                weight.len(),
                ideal.len()
            )));
        }
        if weight.iter().all(|&w| w == 0.0) {
            return Err(Error::Contract("weight vector must be nonzero".into()));
        }
        if ideal.iter().any(|v| !v.is_finite()) {
            return Err(Error::Contract("ideal point must be finite".into()));
        }
        if theta.is_nan() || theta < 0.0 {
            return Err(Error::Contract(format!("theta must be >= 0, got {theta}")));
        }
        Ok(Self {
            weight,
            ideal,
            theta,
        })
    }
}

/// `a` dominates `b`: no worse anywhere and strictly better somewhere.
///
/// # Panics
///
/// If the vectors differ in length.
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    assert_eq!(a.len(), b.len(), "objective vectors differ in length");
    let mut strictly = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly = true;
        }
    }
    strictly
}

/// Projection length `d1` along the weight from the ideal point, and
/// perpendicular distance `d2` from that line.
pub fn pbi_distances(f: &[f64], ctx: &ComparisonContext<'_>) -> (f64, f64) {
    assert_eq!(f.len(), ctx.weight.len(), "objective vector length mismatch");
    let norm = ctx.weight.iter().map(|w| w * w).sum::<f64>().sqrt();
    let d1 = f
        .iter()
        .zip(ctx.ideal)
        .zip(ctx.weight)
        .map(|((fi, zi), wi)| (fi - zi) * wi)
        .sum::<f64>()
        .abs()
        / norm;
    let d2 = f
        .iter()
        .zip(ctx.ideal)
        .zip(ctx.weight)
        .map(|((fi, zi), wi)| {
            let r = fi - (zi + d1 * wi / norm);
            r * r
        })
        .sum::<f64>()
        .sqrt();
    (d1, d2)
}

pub fn pbi_scalar(f: &[f64], ctx: &ComparisonContext<'_>) -> f64 {
    let (d1, d2) = pbi_distances(f, ctx);
    d1 + ctx.theta * d2
}

/// Perpendicular distance only; used to route an individual to its weight.
pub fn perpendicular_distance(f: &[f64], weight: &[f64], ideal: &[f64]) -> f64 {
    pbi_distances(
        f,
        &ComparisonContext {
            weight,
            ideal,
            theta: 0.0,
        },
    )
    .1
}

/// Does `candidate` beat `incumbent` under `kind`?
pub fn better(
    kind: CriterionKind,
    candidate: &[f64],
    incumbent: &[f64],
    ctx: &ComparisonContext<'_>,
) -> bool {
    match kind {
        CriterionKind::Dominance => dominates(candidate, incumbent),
        CriterionKind::Pbi => pbi_scalar(candidate, ctx) < pbi_scalar(incumbent, ctx),
        CriterionKind::Distance => {
            let (c1, c2) = pbi_distances(candidate, ctx);
            let (i1, i2) = pbi_distances(incumbent, ctx);
            c2 < i2 || (c2 == i2 && c1 < i1)
        }
        CriterionKind::H1 | CriterionKind::H2 => {
            if dominates(candidate, incumbent) {
                true
            } else if dominates(incumbent, candidate) {
                false
            } else if kind == CriterionKind::H1 {
                pbi_scalar(candidate, ctx) < pbi_scalar(incumbent, ctx)
            } else {
                pbi_distances(candidate, ctx).1 < pbi_distances(incumbent, ctx).1
            }
        }
    }
}
