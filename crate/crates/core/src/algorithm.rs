//! The evolutionary main loop and its population-update strategies.
//!
//! Every weight vector owns exactly one slot of the population. Each
//! generation visits the slots in order, breeds one offspring per slot, folds
//! its objectives into the ideal point and hands it to the configured update:
//!
//! * [`Variant::Glu`]: the global loop update. The offspring is routed to the
//!   weight with the smallest perpendicular distance; if it beats the
//!   occupant there they swap, and the evicted individual is routed in turn.
//!   The cascade stops at the first lost comparison (or after `N` rounds).
//! * [`Variant::Lu`]: classic local update, replacing every worse occupant in
//!   the current neighborhood.
//! * [`Variant::ModifiedLu`]: local update restricted to one randomly chosen
//!   neighbor.

use std::fmt;
use std::str::FromStr;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::criteria::{better, perpendicular_distance, ComparisonContext, CriterionKind};
use crate::error::{Error, Result};
use crate::operators::{reproduce, VariationParams};
use crate::problems::Problem;
use crate::weights::WeightSet;
use crate::{seeded_rng, Rng};

/// A decision vector with its (always current) objective vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub x: Vec<f64>,
    pub f: Vec<f64>,
    /// Index of the weight slot this individual occupies.
    pub attached: usize,
}

/// Population-update strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Glu,
    Lu,
    ModifiedLu,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Glu => "glu",
            Variant::Lu => "lu",
            Variant::ModifiedLu => "modified-lu",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Variant::Glu, Variant::Lu, Variant::ModifiedLu]
            .into_iter()
            .find(|v| v.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown variant {s:?}; expected glu, lu or modified-lu"
                ))
            })
    }
}

/// Everything about a run except the problem, weights and seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgorithmSettings {
    pub variant: Variant,
    pub criterion: CriterionKind,
    pub variation: VariationParams,
    /// PBI penalty.
    pub theta: f64,
}

impl AlgorithmSettings {
    /// Global loop update with PBI, `theta = 5` and the default variation
    /// parameters for `problem`.
    pub fn defaults_for(problem: &Problem) -> Self {
        Self {
            variant: Variant::Glu,
            criterion: CriterionKind::Pbi,
            variation: VariationParams::defaults_for(problem.variables()),
            theta: 5.0,
        }
    }
}

/// What a single population update did.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UpdateReport {
    /// Weight slots whose occupant changed, in order.
    pub displaced_chain: Vec<usize>,
    /// True if the offspring entered the population.
    pub accepted: bool,
    /// Comparisons made (for the global loop update: weight look-ups).
    pub loop_iterations: usize,
}

/// Per-generation counters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GenerationReport {
    pub evaluations: usize,
    pub replacements: usize,
    pub max_loop_iterations: usize,
    /// Slots holding an individual attached to that slot.
    pub occupied_slots: usize,
}

/// Mutable state of one run.
#[derive(Debug, Clone)]
pub struct AlgorithmState {
    problem: Problem,
    weights: WeightSet,
    population: Vec<Individual>,
    ideal: Vec<f64>,
    generation: usize,
    evaluations: usize,
    settings: AlgorithmSettings,
}

impl AlgorithmState {
    /// Random population, individual `i` attached to weight `i` regardless of
    /// where it lands in objective space.
    pub fn initialize(
        problem: &Problem,
        weights: &WeightSet,
        settings: AlgorithmSettings,
        rng: &mut Rng,
    ) -> Result<Self> {
        let population = (0..weights.len())
            .map(|i| {
                let x = problem.random_solution(rng);
                let f = problem.evaluate(&x)?;
                Ok(Individual { x, f, attached: i })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut state = Self::from_population(problem, weights, population, settings)?;
        state.evaluations = weights.len();
        Ok(state)
    }

    /// State around an existing population; slot `i` must hold the individual
    /// attached to weight `i`. The ideal point starts as the componentwise
    /// minimum of the population.
    pub fn from_population(
        problem: &Problem,
        weights: &WeightSet,
        population: Vec<Individual>,
        settings: AlgorithmSettings,
    ) -> Result<Self> {
        settings.variation.validate()?;
        if weights.objectives() != problem.objectives() {
            return Err(Error::Config(format!(
                "weights have {} objectives, problem has {}",
                weights.objectives(),
                problem.objectives()
            )));
        }
        if weights.neighborhood_size() == 0 {
            return Err(Error::Config("weight set has no neighborhood table".into()));
        }
        if population.len() != weights.len() {
            return Err(Error::Config(format!(
                "population of {} for {} weight vectors",
                population.len(),
                weights.len()
            )));
        }
        if let Some((i, _)) = population.iter().enumerate().find(|(i, p)| p.attached != *i) {
            return Err(Error::Contract(format!("slot {i} holds an individual attached elsewhere")));
        }
        if settings.theta.is_nan() || settings.theta < 0.0 {
            return Err(Error::Config(format!("theta must be >= 0, got {}", settings.theta)));
        }
        let m = problem.objectives();
        let mut ideal = vec![f64::INFINITY; m];
        for ind in &population {
            for (z, &v) in ideal.iter_mut().zip(&ind.f) {
                *z = z.min(v);
            }
        }
        Ok(Self {
            problem: problem.clone(),
            weights: weights.clone(),
            population,
            ideal,
            generation: 0,
            evaluations: 0,
            settings,
        })
    }

    pub fn problem(&self) -> &Problem {
        &self.problem
    }

    pub fn weights(&self) -> &WeightSet {
        &self.weights
    }

    pub fn population(&self) -> &[Individual] {
        &self.population
    }

    pub fn ideal(&self) -> &[f64] {
        &self.ideal
    }

    pub fn generation(&self) -> usize {
        self.generation
    }

    pub fn evaluations(&self) -> usize {
        self.evaluations
    }

    pub fn settings(&self) -> &AlgorithmSettings {
        &self.settings
    }

    pub fn update_ideal(&mut self, f: &[f64]) {
        for (z, &v) in self.ideal.iter_mut().zip(f) {
            if v < *z {
                *z = v;
            }
        }
    }

    fn context(&self, slot: usize) -> ComparisonContext<'_> {
        ComparisonContext {
            weight: self.weights.get(slot),
            ideal: &self.ideal,
            theta: self.settings.theta,
        }
    }

    fn beats(&self, candidate: &[f64], slot: usize) -> bool {
        better(
            self.settings.criterion,
            candidate,
            &self.population[slot].f,
            &self.context(slot),
        )
    }

    /// Global loop update. The caller must already have folded
    /// `offspring.f` into the ideal point.
    pub fn glu_update(&mut self, offspring: Individual) -> UpdateReport {
        let n = self.weights.len();
        let mut report = UpdateReport::default();
        let mut candidate = offspring;
        while report.loop_iterations < n {
            report.loop_iterations += 1;
            let slot = find_attached_weight(&candidate.f, &self.weights, &self.ideal);
            if !self.beats(&candidate.f, slot) {
                break;
            }
            candidate.attached = slot;
            std::mem::swap(&mut candidate, &mut self.population[slot]);
            debug_assert!(
                !self.beats(&candidate.f, slot),
                "swap into slot {slot} did not strictly improve it"
            );
            report.displaced_chain.push(slot);
            report.accepted = true;
        }
        report
    }

    /// Classic local update over `neighborhood`: every worse occupant is
    /// replaced by a copy of the offspring.
    pub fn lu_update(&mut self, offspring: &Individual, neighborhood: &[usize]) -> UpdateReport {
        let mut report = UpdateReport::default();
        for &slot in neighborhood {
            report.loop_iterations += 1;
            if self.beats(&offspring.f, slot) {
                self.population[slot] = Individual {
                    attached: slot,
                    ..offspring.clone()
                };
                report.displaced_chain.push(slot);
                report.accepted = true;
            }
        }
        report
    }

    /// Local update against a single, uniformly chosen neighbor.
    pub fn modified_lu_update(
        &mut self,
        offspring: Individual,
        neighborhood: &[usize],
        rng: &mut Rng,
    ) -> UpdateReport {
        let slot = neighborhood[rng.random_range(0..neighborhood.len())];
        let mut report = UpdateReport {
            loop_iterations: 1,
            ..UpdateReport::default()
        };
        if self.beats(&offspring.f, slot) {
            self.population[slot] = Individual {
                attached: slot,
                ..offspring
            };
            report.displaced_chain.push(slot);
            report.accepted = true;
        }
        report
    }

    /// One pass over all weight slots: exactly `N` evaluations.
    pub fn step_generation(&mut self, rng: &mut Rng) -> Result<GenerationReport> {
        let n = self.weights.len();
        let mut report = GenerationReport::default();
        for slot in 0..n {
            let x = reproduce(
                slot,
                &self.weights,
                &self.population,
                self.problem.lower(),
                self.problem.upper(),
                &self.settings.variation,
                rng,
            );
            let f = self.problem.evaluate(&x)?;
            report.evaluations += 1;
            self.update_ideal(&f);
            let offspring = Individual { x, f, attached: slot };
            let update = match self.settings.variant {
                Variant::Glu => self.glu_update(offspring),
                Variant::Lu => {
                    let row = self.weights.neighborhood(slot).to_vec();
                    self.lu_update(&offspring, &row)
                }
                Variant::ModifiedLu => {
                    let row = self.weights.neighborhood(slot).to_vec();
                    self.modified_lu_update(offspring, &row, rng)
                }
            };
            report.replacements += update.displaced_chain.len();
            report.max_loop_iterations = report.max_loop_iterations.max(update.loop_iterations);
        }
        self.evaluations += report.evaluations;
        self.generation += 1;
        report.occupied_slots = self
            .population
            .iter()
            .enumerate()
            .filter(|(i, p)| p.attached == *i)
            .count();
        Ok(report)
    }

    pub fn into_result(self, seed: u64) -> RunResult {
        RunResult {
            seed,
            generations: self.generation,
            evaluations: self.evaluations,
            ideal: self.ideal,
            population: self.population,
        }
    }
}

/// Index of the weight with the smallest perpendicular distance to `f`
/// (relative to `ideal`); the lowest index wins ties.
pub fn find_attached_weight(f: &[f64], weights: &WeightSet, ideal: &[f64]) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (j, w) in weights.vectors().iter().enumerate() {
        let d = perpendicular_distance(f, w, ideal);
        if d < best_d {
            best_d = d;
            best = j;
        }
    }
    best
}

/// Final state of a finished run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub seed: u64,
    pub generations: usize,
    pub evaluations: usize,
    pub ideal: Vec<f64>,
    pub population: Vec<Individual>,
}

impl RunResult {
    pub fn objectives(&self) -> Vec<Vec<f64>> {
        self.population.iter().map(|p| p.f.clone()).collect()
    }
}

/// Initializes from `seed` and runs `generations` generations.
pub fn run(
    problem: &Problem,
    weights: &WeightSet,
    settings: AlgorithmSettings,
    generations: usize,
    seed: u64,
) -> Result<RunResult> {
    run_observed(problem, weights, settings, generations, seed, |_, _| {})
}

/// Like [`run`], calling `observe` after every generation.
pub fn run_observed(
    problem: &Problem,
    weights: &WeightSet,
    settings: AlgorithmSettings,
    generations: usize,
    seed: u64,
    mut observe: impl FnMut(&AlgorithmState, &GenerationReport),
) -> Result<RunResult> {
    let mut rng = seeded_rng(seed);
    let mut state = AlgorithmState::initialize(problem, weights, settings, &mut rng)?;
    for _ in 0..generations {
        let report = state.step_generation(&mut rng)?;
        observe(&state, &report);
    }
    Ok(state.into_result(seed))
}
