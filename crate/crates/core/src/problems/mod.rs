//! Scalable benchmark problems: DTLZ1–4 and WFG1–9.
//!
//! All problems are minimization problems with box-bounded decision
//! variables. The DTLZ problems use `n = M + r - 1` variables (`r = 5` for
//! DTLZ1, `r = 10` otherwise) in `[0, 1]`. The WFG problems use `k = 2(M-1)`
//! position and `l = 20` distance parameters, variable `i` (1-based) ranging
//! over `[0, 2i]`.

mod dtlz;
mod wfg;

use std::fmt;
use std::str::FromStr;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weights::WeightSet;
use crate::Rng;

pub use wfg::{wfg_optimal_solution, WFG_DISTANCE_PARAMS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum ProblemId {
    Dtlz1,
    Dtlz2,
    Dtlz3,
    Dtlz4,
    Wfg1,
    Wfg2,
    Wfg3,
    Wfg4,
    Wfg5,
    Wfg6,
    Wfg7,
    Wfg8,
    Wfg9,
}

impl ProblemId {
    pub const ALL: [ProblemId; 13] = [
        ProblemId::Dtlz1,
        ProblemId::Dtlz2,
        ProblemId::Dtlz3,
        ProblemId::Dtlz4,
        ProblemId::Wfg1,
        ProblemId::Wfg2,
        ProblemId::Wfg3,
        ProblemId::Wfg4,
        ProblemId::Wfg5,
        ProblemId::Wfg6,
        ProblemId::Wfg7,
        ProblemId::Wfg8,
        ProblemId::Wfg9,
    ];

    pub fn is_dtlz(self) -> bool {
        matches!(
            self,
            ProblemId::Dtlz1 | ProblemId::Dtlz2 | ProblemId::Dtlz3 | ProblemId::Dtlz4
        )
    }

    pub fn is_wfg(self) -> bool {
        !self.is_dtlz()
    }

    pub fn name(self) -> &'static str {
        match self {
            ProblemId::Dtlz1 => "DTLZ1",
            ProblemId::Dtlz2 => "DTLZ2",
            ProblemId::Dtlz3 => "DTLZ3",
            ProblemId::Dtlz4 => "DTLZ4",
            ProblemId::Wfg1 => "WFG1",
            ProblemId::Wfg2 => "WFG2",
            ProblemId::Wfg3 => "WFG3",
            ProblemId::Wfg4 => "WFG4",
            ProblemId::Wfg5 => "WFG5",
            ProblemId::Wfg6 => "WFG6",
            ProblemId::Wfg7 => "WFG7",
            ProblemId::Wfg8 => "WFG8",
            ProblemId::Wfg9 => "WFG9",
        }
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProblemId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown problem {s:?}")))
    }
}

impl TryFrom<String> for ProblemId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ProblemId> for String {
    fn from(id: ProblemId) -> String {
        id.name().to_string()
    }
}

/// A benchmark instance: a problem family fixed to a number of objectives.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    id: ProblemId,
    objectives: usize,
    lower: Vec<f64>,
    upper: Vec<f64>,
    wfg_k: usize,
    wfg_l: usize,
}

impl Problem {
    /// Instance with the standard variable counts.
    pub fn new(id: ProblemId, objectives: usize) -> Result<Self> {
        if objectives < 2 {
            return Err(Error::Config(format!(
                "{id} needs at least 2 objectives, got {objectives}"
            )));
        }
        if id.is_dtlz() {
            let r = if id == ProblemId::Dtlz1 { 5 } else { 10 };
            let n = objectives + r - 1;
            Ok(Self {
                id,
                objectives,
                lower: vec![0.0; n],
                upper: vec![1.0; n],
                wfg_k: 0,
                wfg_l: 0,
            })
        } else {
            Self::wfg(id, objectives, 2 * (objectives - 1), WFG_DISTANCE_PARAMS)
        }
    }

    /// WFG instance with explicit position (`k`) and distance (`l`) counts.
    pub fn wfg(id: ProblemId, objectives: usize, k: usize, l: usize) -> Result<Self> {
        if !id.is_wfg() {
            return Err(Error::Config(format!("{id} is not a WFG problem")));
        }
        if objectives < 2 || k == 0 || !k.is_multiple_of(objectives - 1) {
            return Err(Error::Config(format!(
                "WFG position count k={k} must be a positive multiple of M-1={}",
                objectives.saturating_sub(1)
            )));
        }
        if l == 0 || (matches!(id, ProblemId::Wfg2 | ProblemId::Wfg3) && !l.is_multiple_of(2)) {
            return Err(Error::Config(format!(
                "WFG distance count l={l} must be positive (and even for WFG2/WFG3)"
            )));
        }
        let n = k + l;
        Ok(Self {
            id,
            objectives,
            lower: vec![0.0; n],
            upper: (1..=n).map(|i| 2.0 * i as f64).collect(),
            wfg_k: k,
            wfg_l: l,
        })
    }

    pub fn id(&self) -> ProblemId {
        self.id
    }

    pub fn objectives(&self) -> usize {
        self.objectives
    }

    pub fn variables(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Position-parameter count (WFG only, 0 for DTLZ).
    pub fn wfg_k(&self) -> usize {
        self.wfg_k
    }

    /// Distance-parameter count (WFG only, 0 for DTLZ).
    pub fn wfg_l(&self) -> usize {
        self.wfg_l
    }

    /// Objective vector for decision vector `x`. Inputs of the wrong length or
    /// outside the bounds are rejected, never repaired.
    pub fn evaluate(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.variables() {
            return Err(Error::Contract(format!(
                "{} expects {} variables, got {}",
                self.id,
                self.variables(),
                x.len()
            )));
        }
        for (i, ((&v, &lo), &hi)) in x.iter().zip(&self.lower).zip(&self.upper).enumerate() {
            if !(lo..=hi).contains(&v) {
                return Err(Error::Contract(format!(
                    "{} variable {i} = {v} outside [{lo}, {hi}]",
                    self.id
                )));
            }
        }
        let m = self.objectives;
        Ok(match self.id {
            ProblemId::Dtlz1 => dtlz::dtlz1(x, m),
            ProblemId::Dtlz2 => dtlz::dtlz2(x, m),
            ProblemId::Dtlz3 => dtlz::dtlz3(x, m),
            ProblemId::Dtlz4 => dtlz::dtlz4(x, m),
            id => wfg::evaluate(id, x, m, self.wfg_k),
        })
    }

    /// Uniform random point inside the bounds.
    pub fn random_solution(&self, rng: &mut Rng) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(&lo, &hi)| lo + (hi - lo) * rng.random::<f64>())
            .collect()
    }

    /// Reference front for IGD: the intersection of each weight direction with
    /// the Pareto front. DTLZ1's front is the plane `sum f = 0.5`; DTLZ2–4 share
    /// the unit sphere.
    pub fn dtlz_pf_reference(&self, weights: &WeightSet) -> Result<Vec<Vec<f64>>> {
        if !self.id.is_dtlz() {
            return Err(Error::Unsupported(format!(
                "no reference front for {}; WFG problems are scored by hypervolume only",
                self.id
            )));
        }
        if weights.objectives() != self.objectives {
            return Err(Error::Config(format!(
                "weight set has {} objectives, problem has {}",
                weights.objectives(),
                self.objectives
            )));
        }
        let linear = self.id == ProblemId::Dtlz1;
        Ok(weights
            .vectors()
            .iter()
            .map(|w| {
                let scale = if linear {
                    0.5 / w.iter().sum::<f64>()
                } else {
                    1.0 / w.iter().map(|c| c * c).sum::<f64>().sqrt()
                };
                w.iter().map(|c| c * scale).collect()
            })
            .collect())
    }
}
