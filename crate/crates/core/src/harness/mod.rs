//! Running repeated, seeded experiments and summarizing them.
//!
//! An [`ExperimentConfig`] names a problem and objective count; everything
//! else defaults to the standard setup for that pair. [`run_experiment`]
//! executes the independent runs in parallel (run `i` uses seed
//! `seed + i`), scores each final population and reports best, median and
//! worst per metric.

mod config;
mod export;

pub use config::{
    default_generations, default_hv_reference, load_config, load_grid, Divisions,
    ExperimentConfig, Metric, ResolvedConfig, DEFAULT_NEIGHBORHOOD, DEFAULT_RUNS,
    DEFAULT_SHRINKAGE, DEFAULT_THETA, WFG_GENERATIONS,
};
pub use export::{
    emit_point_cloud, export_results, file_stem, summaries_to_csv, summary_from_json,
    summary_to_json, ExportFormat,
};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algorithm::{run, RunResult, Variant};
use crate::criteria::CriterionKind;
use crate::error::Result;
use crate::metrics::{hv_normalized, igd};
use crate::operators::VariationParams;
use crate::problems::ProblemId;

/// The fully resolved settings an experiment ran with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub problem: ProblemId,
    pub objectives: usize,
    pub variables: usize,
    pub variant: Variant,
    pub criterion: CriterionKind,
    pub divisions: Divisions,
    pub shrinkage: f64,
    pub population_size: usize,
    pub neighborhood_size: usize,
    pub generations: usize,
    pub runs: usize,
    pub seed: u64,
    pub theta: f64,
    pub variation: VariationParams,
    pub hv_reference: Vec<f64>,
    pub hv_samples: usize,
    pub exact_hv_max_objectives: usize,
}

impl ConfigEcho {
    fn of(r: &ResolvedConfig) -> Self {
        Self {
            problem: r.problem.id(),
            objectives: r.problem.objectives(),
            variables: r.problem.variables(),
            variant: r.settings.variant,
            criterion: r.settings.criterion,
            divisions: r.divisions,
            shrinkage: r.source.shrinkage,
            population_size: r.population_size(),
            neighborhood_size: r.weights.neighborhood_size(),
            generations: r.generations,
            runs: r.runs(),
            seed: r.source.seed,
            theta: r.settings.theta,
            variation: r.settings.variation,
            hv_reference: r.hv_reference.clone(),
            hv_samples: r.source.hv_samples,
            exact_hv_max_objectives: r.source.exact_hv_max_objectives,
        }
    }
}

/// One metric over all runs. `values[i]` belongs to `StatsSummary::seeds[i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricSummary {
    pub metric: Metric,
    pub best: f64,
    pub median: f64,
    pub worst: f64,
    pub values: Vec<f64>,
}

impl MetricSummary {
    /// `best` is the minimum for IGD and the maximum for HV.
    pub fn from_values(metric: Metric, values: Vec<f64>) -> Self {
        assert!(!values.is_empty(), "metric summary of zero runs");
        let mut sorted = values.clone();
        sorted.sort_by(f64::total_cmp);
        let (lo, hi) = (sorted[0], sorted[sorted.len() - 1]);
        let (best, worst) = if metric.lower_is_better() { (lo, hi) } else { (hi, lo) };
        Self {
            metric,
            best,
            median: median(&sorted),
            worst,
            values,
        }
    }
}

/// Median of ascending `sorted`; the mean of the middle pair for even lengths.
pub fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    assert!(n > 0, "median of an empty slice");
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsSummary {
    pub config: ConfigEcho,
    pub seeds: Vec<u64>,
    pub metrics: Vec<MetricSummary>,
}

impl StatsSummary {
    /// Looks a metric up by name (`"igd"` or `"hv"`).
    pub fn metric(&self, name: &str) -> Option<&MetricSummary> {
        let wanted: Metric = name.parse().ok()?;
        self.metrics.iter().find(|m| m.metric == wanted)
    }
}

/// A summary together with every run's final population.
#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub summary: StatsSummary,
    pub runs: Vec<RunResult>,
}

/// Scores one final population with the configured metrics, in config order.
pub fn score_population(config: &ResolvedConfig, objectives: &[Vec<f64>], seed: u64) -> Result<Vec<f64>> {
    let reference = if config.metrics.contains(&Metric::Igd) {
        Some(config.problem.dtlz_pf_reference(&config.weights)?)
    } else {
        None
    };
    config
        .metrics
        .iter()
        .map(|m| match m {
            Metric::Igd => igd(objectives, reference.as_deref().expect("reference built above")),
            Metric::Hv => hv_normalized(objectives, &config.hv_reference, config.hv_method(seed)),
        })
        .collect()
}

pub fn run_experiment(config: &ResolvedConfig) -> Result<StatsSummary> {
    run_experiment_detailed(config).map(|o| o.summary)
}

/// Runs every seed in parallel and keeps the final populations.
pub fn run_experiment_detailed(config: &ResolvedConfig) -> Result<ExperimentOutcome> {
    let seeds: Vec<u64> = (0..config.runs()).map(|i| config.seed_for(i)).collect();
    let scored: Vec<(RunResult, Vec<f64>)> = seeds
        .par_iter()
        .map(|&seed| {
            let result = run(
                &config.problem,
                &config.weights,
                config.settings,
                config.generations,
                seed,
            )?;
            let scores = score_population(config, &result.objectives(), seed)?;
            Ok((result, scores))
        })
        .collect::<Result<_>>()?;

    let metrics = config
        .metrics
        .iter()
        .enumerate()
        .map(|(k, &m)| MetricSummary::from_values(m, scored.iter().map(|(_, s)| s[k]).collect()))
        .collect();
    Ok(ExperimentOutcome {
        summary: StatsSummary {
            config: ConfigEcho::of(config),
            seeds,
            metrics,
        },
        runs: scored.into_iter().map(|(r, _)| r).collect(),
    })
}
