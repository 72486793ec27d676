//! Grover adaptive search.
//!
//! Each iteration draws `j` uniformly from `0..floor(m)`, runs `j` rotations
//! with the oracle threshold at the best cost so far and measures. An
//! improvement resets `m` to 1, anything else grows it by `lambda` up to
//! `sqrt(N)`. The run ends once the summed `j` exceeds the rotation budget.

mod backend;
mod spectrum;
mod study;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use backend::{AnalyticBackend, MeasurementBackend, StatevectorBackend, Storage};
pub use spectrum::{grover_probability, optimal_rotations, GroverSpectrum};
pub use study::{
    convergence, derive_seed, fraction_at_or_below, run_many, write_convergence_csv, write_trace_csv, ConvergencePoint,
};

use crate::error::{invalid_arg, Error, Result};
use crate::model::{evaluate_schedule, ModelConfig, Schedule};

/// Random generator used by the search and the sampling backends.
pub type GasRng = ChaCha8Rng;

#[derive(Debug, Clone, PartialEq)]
pub struct GasParams {
    /// Growth factor, `1 < lambda <= 4/3`.
    pub lambda: f64,
    /// Threshold before anything has been measured.
    pub initial_best_cost: i64,
    pub stop_total_rotations: u64,
    pub seed: u64,
    /// Safety bound on iterations.
    pub max_steps: usize,
}

impl GasParams {
    /// `lambda = 6/5`, initial best three above the largest possible cost,
    /// budget `ceil(sqrt(N))`.
    pub fn for_config(config: &ModelConfig) -> Self {
        let n = config.search_space_size().unwrap_or(u64::MAX);
        GasParams {
            lambda: 6.0 / 5.0,
            initial_best_cost: config.max_daily_cost() * config.n_days as i64 + 3,
            stop_total_rotations: (n as f64).sqrt().ceil() as u64,
            seed: 0,
            max_steps: 1_000_000,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > 1.0 && self.lambda <= 4.0 / 3.0) {
            return Err(invalid_arg(format!("lambda must be in (1, 4/3], got {}", self.lambda)));
        }
        if self.max_steps == 0 {
            return Err(invalid_arg("max_steps must be positive"));
        }
        Ok(())
    }
}

/// One iteration of the search.
#[derive(Debug, Clone, PartialEq)]
pub struct GasStep {
    pub j: u64,
    pub cum_rotations: u64,
    pub measured: Schedule,
    pub measured_cost: i64,
    pub measured_feasible: bool,
    pub best_cost: i64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GasRunRecord {
    pub initial_best_cost: i64,
    pub steps: Vec<GasStep>,
    pub final_best: Option<(Schedule, i64)>,
}

impl GasRunRecord {
    /// Best cost known once at most `rotations` rotations have been spent.
    pub fn best_at(&self, rotations: u64) -> i64 {
        self.steps
            .iter()
            .take_while(|s| s.cum_rotations <= rotations)
            .last()
            .map_or(self.initial_best_cost, |s| s.best_cost)
    }

    pub fn total_rotations(&self) -> u64 {
        self.steps.last().map_or(0, |s| s.cum_rotations)
    }
}

/// Runs one search. Feasibility of a measurement is checked classically
/// against the buffer and volume constraints.
pub fn run_gas(config: &ModelConfig, params: &GasParams, backend: &mut dyn MeasurementBackend) -> Result<GasRunRecord> {
    params.validate()?;
    config.validate()?;
    if backend.n_days() != config.n_days {
        return Err(invalid_arg("backend and configuration disagree on the number of days"));
    }
    let base = config.clone().with_c_max(None);
    let sqrt_n = (backend.search_space() as f64).sqrt();
    let mut rng = GasRng::seed_from_u64(params.seed);
    let mut m = 1.0f64;
    let mut best = params.initial_best_cost;
    let mut best_schedule = None;
    let mut cum = 0u64;
    let mut steps = Vec::new();
    while cum <= params.stop_total_rotations {
        if steps.len() == params.max_steps {
            return Err(Error::InvalidState(format!("search did not finish within {} steps", params.max_steps)));
        }
        let j = rng.gen_range(0..(m.floor() as u64).max(1));
        cum += j;
        let measured = backend.measure(best, j, &mut rng)?;
        let eval = evaluate_schedule(&base, &measured)?;
        if eval.feasible && eval.cost < best {
            best = eval.cost;
            best_schedule = Some(measured.clone());
            m = 1.0;
        } else {
            m = (params.lambda * m).min(sqrt_n);
        }
        steps.push(GasStep {
            j,
            cum_rotations: cum,
            measured,
            measured_cost: eval.cost,
            measured_feasible: eval.feasible,
            best_cost: best,
        });
    }
    Ok(GasRunRecord {
        initial_best_cost: params.initial_best_cost,
        steps,
        final_best: best_schedule.map(|s| (s, best)),
    })
}
