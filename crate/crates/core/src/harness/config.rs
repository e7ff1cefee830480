use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algorithm::{AlgorithmSettings, Variant};
use crate::criteria::CriterionKind;
use crate::error::{Error, Result};
use crate::metrics::{HvMethod, DEFAULT_EXACT_HV_MAX_OBJECTIVES, DEFAULT_HV_SAMPLES};
use crate::operators::VariationParams;
use crate::problems::{Problem, ProblemId};
use crate::weights::{generate_simplex_weights, generate_two_layer, WeightSet};

pub const DEFAULT_RUNS: usize = 20;
pub const DEFAULT_THETA: f64 = 5.0;
pub const DEFAULT_NEIGHBORHOOD: usize = 20;
pub const DEFAULT_SHRINKAGE: f64 = 0.5;
pub const WFG_GENERATIONS: usize = 3000;

/// Lattice divisions: one layer, or boundary plus inside layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Divisions {
    Single(usize),
    TwoLayer([usize; 2]),
}

impl Divisions {
    /// Standard divisions by objective count.
    pub fn default_for(objectives: usize) -> Option<Self> {
        match objectives {
            3 => Some(Divisions::Single(12)),
            5 => Some(Divisions::Single(6)),
            8 | 10 => Some(Divisions::TwoLayer([3, 2])),
            15 => Some(Divisions::TwoLayer([2, 1])),
            _ => None,
        }
    }
}

impl fmt::Display for Divisions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Divisions::Single(d) => write!(f, "{d}"),
            Divisions::TwoLayer([a, b]) => write!(f, "{a},{b}"),
        }
    }
}

impl FromStr for Divisions {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let num = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| Error::Config(format!("invalid divisions {s:?}")))
        };
        match parts.as_slice() {
            [d] => Ok(Divisions::Single(num(d)?)),
            [a, b] => Ok(Divisions::TwoLayer([num(a)?, num(b)?])),
            _ => Err(Error::Config(format!("invalid divisions {s:?}"))),
        }
    }
}

/// Standard generation budget for DTLZ1–4; WFG problems always use 3000.
pub fn default_generations(problem: ProblemId, objectives: usize) -> Option<usize> {
    let column = match objectives {
        3 => 0,
        5 => 1,
        8 => 2,
        10 => 3,
        15 => 4,
        _ => return problem.is_wfg().then_some(WFG_GENERATIONS),
    };
    let row: [usize; 5] = match problem {
        ProblemId::Dtlz1 => [400, 600, 750, 1000, 1500],
        ProblemId::Dtlz2 => [250, 350, 500, 750, 1000],
        ProblemId::Dtlz3 => [1000, 1000, 1000, 1500, 2000],
        ProblemId::Dtlz4 => [600, 1000, 1250, 2000, 3000],
        _ => return Some(WFG_GENERATIONS),
    };
    Some(row[column])
}

/// Standard hypervolume reference point: all ones for DTLZ1, all twos for
/// DTLZ2–4 and `(3, 5, ..., 2M + 1)` for WFG.
pub fn default_hv_reference(problem: ProblemId, objectives: usize) -> Vec<f64> {
    match problem {
        ProblemId::Dtlz1 => vec![1.0; objectives],
        p if p.is_dtlz() => vec![2.0; objectives],
        _ => (1..=objectives).map(|i| 2.0 * i as f64 + 1.0).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Igd,
    Hv,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Igd => "igd",
            Metric::Hv => "hv",
        }
    }

    /// IGD is minimized, HV maximized.
    pub fn lower_is_better(self) -> bool {
        matches!(self, Metric::Igd)
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "igd" => Ok(Metric::Igd),
            "hv" => Ok(Metric::Hv),
            _ => Err(Error::Config(format!("unknown metric {s:?}; expected igd or hv"))),
        }
    }
}

/// One experiment as written in a config file. Unset fields take the
/// standard defaults for the (problem, objectives) pair when resolved.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub problem: ProblemId,
    pub objectives: usize,
    #[serde(default = "default_variant")]
    pub variant: Variant,
    #[serde(default = "default_criterion")]
    pub criterion: CriterionKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisions: Option<Divisions>,
    #[serde(default = "default_shrinkage")]
    pub shrinkage: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generations: Option<usize>,
    #[serde(default = "default_runs")]
    pub runs: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_theta")]
    pub theta: f64,
    #[serde(default = "default_neighborhood")]
    pub neighborhood_size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crossover_prob: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crossover_eta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mutation_prob: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mutation_eta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub neighborhood_prob: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metrics: Option<Vec<Metric>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hv_reference: Option<Vec<f64>>,
    #[serde(default = "default_hv_samples")]
    pub hv_samples: usize,
    #[serde(default = "default_exact_limit")]
    pub exact_hv_max_objectives: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

fn default_variant() -> Variant {
    Variant::Glu
}
fn default_criterion() -> CriterionKind {
    CriterionKind::Pbi
}
fn default_shrinkage() -> f64 {
    DEFAULT_SHRINKAGE
}
fn default_runs() -> usize {
    DEFAULT_RUNS
}
fn default_theta() -> f64 {
    DEFAULT_THETA
}
fn default_neighborhood() -> usize {
    DEFAULT_NEIGHBORHOOD
}
fn default_hv_samples() -> usize {
    DEFAULT_HV_SAMPLES
}
fn default_exact_limit() -> usize {
    DEFAULT_EXACT_HV_MAX_OBJECTIVES
}

impl ExperimentConfig {
    /// Config with every optional field unset.
    ///
    /// # Panics
    ///
    /// If `problem` is not a known problem id.
    pub fn new(problem: &str, objectives: usize) -> Self {
        Self {
            problem: problem.parse().expect("unknown problem id"),
            objectives,
            variant: default_variant(),
            criterion: default_criterion(),
            divisions: None,
            shrinkage: DEFAULT_SHRINKAGE,
            generations: None,
            runs: DEFAULT_RUNS,
            seed: 0,
            theta: DEFAULT_THETA,
            neighborhood_size: DEFAULT_NEIGHBORHOOD,
            crossover_prob: None,
            crossover_eta: None,
            mutation_prob: None,
            mutation_eta: None,
            neighborhood_prob: None,
            metrics: None,
            hv_reference: None,
            hv_samples: DEFAULT_HV_SAMPLES,
            exact_hv_max_objectives: DEFAULT_EXACT_HV_MAX_OBJECTIVES,
            output: None,
        }
    }

    /// Fills in defaults and builds the problem and weight set.
    pub fn resolve(&self) -> Result<ResolvedConfig> {
        let problem = Problem::new(self.problem, self.objectives)?;
        let m = self.objectives;
        if self.runs == 0 {
            return Err(Error::Config("runs must be at least 1".into()));
        }
        let divisions = match self.divisions {
            Some(d) => d,
            None => Divisions::default_for(m).ok_or_else(|| {
                Error::Config(format!(
                    "no default divisions for {m} objectives; set `divisions`"
                ))
            })?,
        };
        let generations = match self.generations {
            Some(g) => g,
            None => default_generations(self.problem, m).ok_or_else(|| {
                Error::Config(format!(
                    "no default generation count for {} with {m} objectives; set `generations`",
                    self.problem
                ))
            })?,
        };
        let lattice = match divisions {
            Divisions::Single(d) => generate_simplex_weights(d, m)?,
            Divisions::TwoLayer([a, b]) => generate_two_layer(a, b, m, self.shrinkage)?,
        };
        if lattice.has_duplicates() {
            return Err(Error::Config(format!(
                "divisions {divisions} with shrinkage {} produce duplicate weight vectors",
                self.shrinkage
            )));
        }
        if self.neighborhood_size > lattice.len() {
            return Err(Error::Config(format!(
                "neighborhood size {} exceeds population size {}",
                self.neighborhood_size,
                lattice.len()
            )));
        }
        let weights = lattice.with_neighborhoods(self.neighborhood_size)?;

        let defaults = VariationParams::defaults_for(problem.variables());
        let variation = VariationParams {
            crossover_prob: self.crossover_prob.unwrap_or(defaults.crossover_prob),
            crossover_eta: self.crossover_eta.unwrap_or(defaults.crossover_eta),
            mutation_prob: self.mutation_prob.unwrap_or(defaults.mutation_prob),
            mutation_eta: self.mutation_eta.unwrap_or(defaults.mutation_eta),
            neighborhood_prob: self.neighborhood_prob.unwrap_or(defaults.neighborhood_prob),
        };
        variation.validate()?;
        if self.theta.is_nan() || self.theta < 0.0 {
            return Err(Error::Config(format!("theta must be >= 0, got {}", self.theta)));
        }

        let metrics = match &self.metrics {
            Some(list) if list.is_empty() => {
                return Err(Error::Config("metric list is empty".into()));
            }
            Some(list) => {
                let mut list = list.clone();
                list.sort();
                list.dedup();
                list
            }
            None if self.problem.is_dtlz() => vec![Metric::Igd, Metric::Hv],
            None => vec![Metric::Hv],
        };
        if metrics.contains(&Metric::Igd) && self.problem.is_wfg() {
            return Err(Error::Config(format!(
                "IGD is not available for {}: WFG problems are scored by hypervolume only",
                self.problem
            )));
        }
        let hv_reference = match &self.hv_reference {
            Some(r) if r.len() != m => {
                return Err(Error::Config(format!(
                    "hv_reference has {} components for {m} objectives",
                    r.len()
                )));
            }
            Some(r) if r.iter().any(|&z| !(z.is_finite() && z > 0.0)) => {
                return Err(Error::Config("hv_reference components must be positive".into()));
            }
            Some(r) => r.clone(),
            None => default_hv_reference(self.problem, m),
        };
        if metrics.contains(&Metric::Hv) && self.hv_samples == 0 {
            return Err(Error::Config("hv_samples must be at least 1".into()));
        }

        Ok(ResolvedConfig {
            source: self.clone(),
            settings: AlgorithmSettings {
                variant: self.variant,
                criterion: self.criterion,
                variation,
                theta: self.theta,
            },
            problem,
            weights,
            divisions,
            generations,
            metrics,
            hv_reference,
        })
    }
}

/// A validated experiment with every default filled in.
#[derive(Debug, Clone)]
pub struct ResolvedConfig {
    pub source: ExperimentConfig,
    pub problem: Problem,
    pub weights: WeightSet,
    pub divisions: Divisions,
    pub settings: AlgorithmSettings,
    pub generations: usize,
    pub metrics: Vec<Metric>,
    pub hv_reference: Vec<f64>,
}

impl ResolvedConfig {
    pub fn population_size(&self) -> usize {
        self.weights.len()
    }

    pub fn runs(&self) -> usize {
        self.source.runs
    }

    pub fn seed_for(&self, run: usize) -> u64 {
        self.source.seed.wrapping_add(run as u64)
    }

    /// Hypervolume method for a run seeded with `seed`.
    pub fn hv_method(&self, seed: u64) -> HvMethod {
        HvMethod::Auto {
            exact_max_objectives: self.source.exact_hv_max_objectives,
            samples: self.source.hv_samples,
            seed,
        }
    }
}

fn parse_err(path: &Path, message: impl fmt::Display) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        message: message.to_string(),
    }
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

/// Reads one experiment from a `.toml` or `.json` file and validates it.
pub fn load_config(path: impl AsRef<Path>) -> Result<ExperimentConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let config: ExperimentConfig = if is_json(path) {
        serde_json::from_str(&text).map_err(|e| parse_err(path, e))?
    } else {
        toml::from_str(&text).map_err(|e| parse_err(path, e))?
    };
    config.resolve()?;
    Ok(config)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GridFile {
    experiment: Vec<ExperimentConfig>,
}

/// Reads a list of experiments: a TOML file of `[[experiment]]` tables, or a
/// JSON array of experiment objects.
pub fn load_grid(path: impl AsRef<Path>) -> Result<Vec<ExperimentConfig>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let list: Vec<ExperimentConfig> = if is_json(path) {
        serde_json::from_str(&text).map_err(|e| parse_err(path, e))?
    } else {
        toml::from_str::<GridFile>(&text)
            .map_err(|e| parse_err(path, e))?
            .experiment
    };
    if list.is_empty() {
        return Err(parse_err(path, "grid lists no experiments"));
    }
    for c in &list {
        c.resolve()?;
    }
    Ok(list)
}
