//! Simulated-annealing baseline that collects feasible schedules it visits.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{evaluate_unchecked, volume_window, EvaluationResult, ModelConfig, Schedule, ShiftCode};
use crate::error::{invalid_arg, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SaParams {
    pub iterations: u64,
    pub initial_temp: f64,
    /// Geometric factor applied to the temperature after every move.
    pub cooling_rate: f64,
    pub seed: u64,
    /// Stop recording once this many distinct feasible schedules are stored.
    pub max_solutions: usize,
}

impl Default for SaParams {
    fn default() -> Self {
        Self { iterations: 100_000, initial_temp: 100.0, cooling_rate: 0.9999, seed: 0, max_solutions: 5000 }
    }
}

impl SaParams {
    // Negated comparisons also reject NaN.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    fn validate(&self) -> Result<()> {
        if self.iterations == 0 || !(self.initial_temp > 0.0) {
            return Err(invalid_arg("iterations and initial_temp must be positive"));
        }
        if !(self.cooling_rate > 0.0 && self.cooling_rate < 1.0) {
            return Err(invalid_arg("cooling_rate must lie in (0, 1)"));
        }
        Ok(())
    }
}

/// Units of constraint violation: buffer overflow summed over days plus the
/// distance of the output volume from its window plus cost overrun.
fn violation(config: &ModelConfig, e: &EvaluationResult) -> i64 {
    let (v_low, v_up) = volume_window(config);
    let overflow: i64 = e.buffer_trajectory.iter().map(|&b| (b - config.b_max).max(0)).sum();
    let volume = (v_low - e.v_out).max(0) + (e.v_out - v_up).max(0);
    let cost = config.c_max.map_or(0, |cap| (e.cost - cap + 1).max(0));
    overflow + volume + cost
}

/// Anneals over schedules with energy `cost + penalty * violation` and returns
/// the distinct feasible schedules encountered, in discovery order.
pub fn simulated_annealing(config: &ModelConfig, params: &SaParams) -> Result<Vec<(Schedule, EvaluationResult)>> {
    config.validate()?;
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let penalty = 100 * config.cost_per_hour_s1.max(config.cost_per_hour_s2).max(1);
    let energy = |e: &EvaluationResult| (e.cost + penalty * violation(config, e)) as f64;

    let random_code = |rng: &mut ChaCha8Rng| ShiftCode::ALL[rng.gen_range(0..4)];
    let mut current =
        Schedule::new((0..config.n_days).map(|_| (random_code(&mut rng), random_code(&mut rng))).collect());
    let mut current_eval = evaluate_unchecked(config, &current);
    let mut current_energy = energy(&current_eval);

    let mut seen = HashSet::new();
    let mut found = Vec::new();
    let mut record = |s: &Schedule, e: &EvaluationResult, found: &mut Vec<_>| {
        if e.feasible && found.len() < params.max_solutions && seen.insert(s.clone()) {
            found.push((s.clone(), e.clone()));
        }
    };
    record(&current, &current_eval, &mut found);

    let mut temp = params.initial_temp;
    for _ in 0..params.iterations {
        let day = rng.gen_range(0..config.n_days);
        let (a, b) = current.day(day);
        let new_code = random_code(&mut rng);
        let moved = if rng.gen_bool(0.5) { (new_code, b) } else { (a, new_code) };
        if moved != (a, b) {
            current.set(day, moved);
            let eval = evaluate_unchecked(config, &current);
            let e = energy(&eval);
            let accept = e <= current_energy || rng.gen::<f64>() < ((current_energy - e) / temp).exp();
            if accept {
                current_energy = e;
                current_eval = eval;
                record(&current, &current_eval, &mut found);
            } else {
                current.set(day, (a, b));
            }
        }
        temp *= params.cooling_rate;
    }
    Ok(found)
}
