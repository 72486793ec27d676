//! Exact classical semantics of the shift scheduling model.
//!
//! Everything here is integer arithmetic and serves as the ground truth the
//! quantum circuits are checked against.

mod anneal;
mod config;
mod schedule;

use std::collections::BTreeMap;
use std::io::Write;

pub use anneal::{simulated_annealing, SaParams};
pub use config::{default_delta, ModelConfig, Shop};
pub use schedule::{Schedule, ShiftCode};

use crate::error::{invalid_arg, Error, Result};

/// Default ceiling on `n_days` for exhaustive enumeration.
pub const DEFAULT_BRUTE_FORCE_DAYS: usize = 8;

/// Hours worked by `shop` for shift `code` (Table-1 style lookup).
pub fn shift_hours(config: &ModelConfig, shop: Shop, code: u8) -> Result<i64> {
    let code = ShiftCode::new(code)?;
    Ok(config.hours_table(shop)[code.index()])
}

/// Outcome of running one schedule through the model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationResult {
    /// Buffer content after each day, after clamping at zero.
    pub buffer_trajectory: Vec<i64>,
    /// Buffer content after each day, before clamping.
    pub buffer_pre_clamp: Vec<i64>,
    pub v_out: i64,
    pub cost: i64,
    /// `B_k <= b_max` per day.
    pub c1_per_day: Vec<bool>,
    /// `v_out >= v_target - delta`.
    pub c2: bool,
    /// `v_out <= v_target + delta`.
    pub c3: bool,
    /// `cost < c_max`, present only when the config carries a cost cap.
    pub c_cost: Option<bool>,
    pub feasible: bool,
}

impl EvaluationResult {
    /// Condition bits in condition-register order: c1 per day, c2, c3, then c_cost if set.
    pub fn condition_bits(&self) -> String {
        let bit = |b: bool| if b { '1' } else { '0' };
        self.c1_per_day.iter().copied().chain([self.c2, self.c3]).chain(self.c_cost).map(bit).collect()
    }

    pub fn final_buffer(&self) -> i64 {
        *self.buffer_trajectory.last().expect("at least one day")
    }
}

/// Runs the buffer recurrence `B_k = max(0, B_{k-1} + S1_k - S2_k)` and
/// evaluates every constraint.
pub fn evaluate_schedule(config: &ModelConfig, schedule: &Schedule) -> Result<EvaluationResult> {
    if schedule.n_days() != config.n_days {
        return Err(invalid_arg(format!("schedule has {} days, config expects {}", schedule.n_days(), config.n_days)));
    }
    Ok(evaluate_unchecked(config, schedule))
}

pub(crate) fn evaluate_unchecked(config: &ModelConfig, schedule: &Schedule) -> EvaluationResult {
    let units1 = config.units_table(Shop::S1);
    let units2 = config.units_table(Shop::S2);
    let cost1 = config.cost_table(Shop::S1);
    let cost2 = config.cost_table(Shop::S2);

    let n = schedule.n_days();
    let mut buffer = config.b_init;
    let mut produced = 0;
    let mut cost = 0;
    let mut buffer_trajectory = Vec::with_capacity(n);
    let mut buffer_pre_clamp = Vec::with_capacity(n);
    let mut c1_per_day = Vec::with_capacity(n);
    for &(a, b) in schedule.days() {
        let raw = buffer + units1[a.index()] - units2[b.index()];
        buffer = raw.max(0);
        produced += units1[a.index()];
        cost += cost1[a.index()] + cost2[b.index()];
        buffer_pre_clamp.push(raw);
        buffer_trajectory.push(buffer);
        c1_per_day.push(buffer <= config.b_max);
    }
    let v_out = config.b_init + produced - buffer;
    let (v_low, v_up) = volume_window(config);
    let c2 = v_out >= v_low;
    let c3 = v_out <= v_up;
    let c_cost = config.c_max.map(|cap| cost < cap);
    let feasible = c1_per_day.iter().all(|&c| c) && c2 && c3 && c_cost.unwrap_or(true);
    EvaluationResult { buffer_trajectory, buffer_pre_clamp, v_out, cost, c1_per_day, c2, c3, c_cost, feasible }
}

/// `(V* - delta, V* + delta)`, the allowed output volume range.
pub fn volume_window(config: &ModelConfig) -> (i64, i64) {
    (config.v_target - config.delta, config.v_target + config.delta)
}

/// Cost of the labour needed to reach the minimum volume: shop 1 must move
/// `V* - delta - b_init` units and shop 2 must move `V* - delta` units.
/// Each term is clamped at zero and rounded up to whole hours.
pub fn lower_bound_cost(config: &ModelConfig) -> i64 {
    let (v_low, _) = volume_window(config);
    let units_s1 = (v_low - config.b_init).max(0);
    let units_s2 = v_low.max(0);
    let hours = |units: i64| (units + config.units_per_hour - 1) / config.units_per_hour;
    hours(units_s1) * config.cost_per_hour_s1 + hours(units_s2) * config.cost_per_hour_s2
}

/// All feasible schedules of an instance.
#[derive(Debug, Clone)]
pub struct FeasibleSet {
    pub entries: Vec<(Schedule, EvaluationResult)>,
    pub total_space_size: u64,
    pub cost_histogram: BTreeMap<i64, usize>,
    /// `None` when nothing is feasible.
    pub min_cost: Option<i64>,
}

impl FeasibleSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Flat schedule indices with their costs, sorted by index.
    pub fn indexed_costs(&self) -> Vec<(u64, i64)> {
        self.entries.iter().map(|(s, e)| (s.index(), e.cost)).collect()
    }

    pub fn contains(&self, schedule: &Schedule) -> bool {
        let idx = schedule.index();
        self.entries.binary_search_by_key(&idx, |(s, _)| s.index()).is_ok()
    }

    /// CSV with columns `schedule_bits,cost,v_out,feasible_flags`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["schedule_bits", "cost", "v_out", "feasible_flags"])?;
        for (s, e) in &self.entries {
            w.write_record([s.to_bits(), e.cost.to_string(), e.v_out.to_string(), e.condition_bits()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Enumerates all `16^n_days` schedules (refuses above [`DEFAULT_BRUTE_FORCE_DAYS`]).
pub fn brute_force(config: &ModelConfig) -> Result<FeasibleSet> {
    brute_force_with_limit(config, DEFAULT_BRUTE_FORCE_DAYS)
}

pub fn brute_force_with_limit(config: &ModelConfig, max_days: usize) -> Result<FeasibleSet> {
    config.validate()?;
    let total =
        config.search_space_size().filter(|_| config.n_days <= max_days).ok_or_else(|| Error::ResourceLimit {
            what: "exhaustive enumeration".into(),
            required: format!("16^{} schedules", config.n_days),
            limit: format!("{max_days} days"),
            hint: "raise the day limit explicitly (brute_force_with_limit / --max-days) to override".into(),
        })?;

    // Necessary conditions for reaching the lower volume bound: shop 2 must
    // move at least V- units and shop 1 at least V- - b_init units.
    let (v_low, _) = volume_window(config);
    let units1 = config.units_table(Shop::S1);
    let units2 = config.units_table(Shop::S2);

    let mut entries = Vec::new();
    let mut cost_histogram = BTreeMap::new();
    for index in 0..total {
        let schedule = Schedule::from_index(index, config.n_days);
        let (sum1, sum2) =
            schedule.days().iter().fold((0, 0), |(x, y), &(a, b)| (x + units1[a.index()], y + units2[b.index()]));
        if sum2 < v_low || config.b_init + sum1 < v_low {
            continue;
        }
        let eval = evaluate_unchecked(config, &schedule);
        if eval.feasible {
            *cost_histogram.entry(eval.cost).or_insert(0) += 1;
            entries.push((schedule, eval));
        }
    }
    let min_cost = cost_histogram.keys().next().copied();
    Ok(FeasibleSet { entries, total_space_size: total, cost_histogram, min_cost })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(codes: &[(u8, u8)], config: &ModelConfig) -> EvaluationResult {
        evaluate_schedule(config, &Schedule::from_codes(codes).unwrap()).unwrap()
    }

    /// Independent transcription of the recurrence, written without the
    /// lookup tables used above.
    fn reference_feasible(config: &ModelConfig, s: &Schedule) -> bool {
        let mut b = config.b_init;
        let mut made = 0;
        let mut ok = true;
        let mut spend = 0;
        for d in 0..s.n_days() {
            let (x, y) = s.day(d);
            let h1 = config.shift_hours_s1[x.get() as usize];
            let h2 = config.shift_hours_s2[y.get() as usize];
            made += h1 * config.units_per_hour;
            spend += h1 * config.cost_per_hour_s1 + h2 * config.cost_per_hour_s2;
            b = std::cmp::max(0, b + (h1 - h2) * config.units_per_hour);
            ok &= b <= config.b_max;
        }
        let v = config.b_init + made - b;
        ok && (config.v_target - v).abs() <= config.delta && config.c_max.is_none_or(|c| spend < c)
    }

    #[test]
    fn shift_hours_lookup() {
        let c = ModelConfig::reference(1);
        assert_eq!(shift_hours(&c, Shop::S1, 2).unwrap(), 8);
        assert_eq!(shift_hours(&c, Shop::S2, 3).unwrap(), 9);
        assert_eq!(shift_hours(&c, Shop::S1, 0).unwrap(), 0);
        assert!(matches!(shift_hours(&c, Shop::S1, 4), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn table_rows() {
        let c = ModelConfig::reference(1);
        let e = eval(&[(1, 2)], &c);
        assert_eq!((e.final_buffer(), e.v_out, e.cost), (3, 7, 12));
        assert!(e.c1_per_day[0] && e.c2 && e.c3 && e.feasible);

        let e = eval(&[(2, 0)], &c);
        assert_eq!((e.final_buffer(), e.cost), (13, 8));
        assert!(!e.c1_per_day[0]);

        let e = eval(&[(0, 0)], &c);
        assert_eq!((e.final_buffer(), e.v_out, e.cost), (5, 0, 0));
        assert!(e.c1_per_day[0] && !e.c2 && e.c3);
    }

    #[test]
    fn underflow_clamps_and_idles_shop_two() {
        let c = ModelConfig::reference(1);
        let e = eval(&[(0, 2)], &c);
        assert_eq!(e.buffer_pre_clamp, vec![-2]);
        assert_eq!(e.buffer_trajectory, vec![0]);
        assert_eq!(e.v_out, 5);
        assert!(e.c1_per_day[0]);
    }

    #[test]
    fn cost_cap_is_strict() {
        let c = ModelConfig::reference(1).with_c_max(Some(12));
        let e = eval(&[(1, 2)], &c);
        assert_eq!(e.c_cost, Some(false));
        assert!(!e.feasible);
        let c = ModelConfig::reference(1).with_c_max(Some(13));
        assert!(eval(&[(1, 2)], &c).feasible);
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let c = ModelConfig::reference(2);
        assert!(evaluate_schedule(&c, &Schedule::from_codes(&[(0, 0)]).unwrap()).is_err());
    }

    #[test]
    fn brute_force_counts() {
        let one = brute_force(&ModelConfig::reference(1)).unwrap();
        assert_eq!((one.len(), one.total_space_size), (6, 16));
        assert_eq!(one.min_cost, Some(12));
        let two = brute_force(&ModelConfig::reference(2)).unwrap();
        assert_eq!((two.len(), two.total_space_size), (22, 256));
        let three = brute_force(&ModelConfig::reference(3)).unwrap();
        assert_eq!(three.min_cost, Some(41));
        assert_eq!(three.total_space_size, 4096);
        assert_eq!(three.cost_histogram.values().sum::<usize>(), three.len());
    }

    #[test]
    fn brute_force_matches_reference_membership() {
        for config in [
            ModelConfig::reference(1),
            ModelConfig::reference(2),
            ModelConfig::reference(2).with_c_max(Some(30)),
            ModelConfig::reference(3),
        ] {
            let set = brute_force(&config).unwrap();
            for index in 0..set.total_space_size {
                let s = Schedule::from_index(index, config.n_days);
                assert_eq!(set.contains(&s), reference_feasible(&config, &s), "{}", s.codes_string());
            }
        }
    }

    #[test]
    fn feasible_costs_respect_lower_bound() {
        for n in 1..=3 {
            let config = ModelConfig::reference(n);
            let set = brute_force(&config).unwrap();
            let lb = lower_bound_cost(&config);
            assert!(set.entries.iter().all(|(_, e)| e.cost >= lb));
        }
    }

    #[test]
    fn larger_buffer_never_shrinks_feasible_set() {
        for n in 1..=3 {
            let mut config = ModelConfig::reference(n);
            let mut previous = brute_force(&config).unwrap();
            for b_max in 11..=16 {
                config.b_max = b_max;
                let next = brute_force(&config).unwrap();
                assert!(previous.entries.iter().all(|(s, _)| next.contains(s)));
                previous = next;
            }
        }
    }

    #[test]
    fn brute_force_guard() {
        let config = ModelConfig::reference(9);
        match brute_force(&config) {
            Err(Error::ResourceLimit { hint, .. }) => assert!(hint.contains("override")),
            other => panic!("expected guard, got {other:?}"),
        }
    }

    #[test]
    fn lower_bound_values() {
        assert_eq!(lower_bound_cost(&ModelConfig::reference(365)), 5543);
        assert_eq!(lower_bound_cost(&ModelConfig::reference(3)), 41);
        let mut c = ModelConfig::reference(1);
        c.v_target = 6;
        c.delta = 1;
        // V* - delta == b_init: shop-1 term vanishes
        assert_eq!(lower_bound_cost(&c), 5);
    }

    #[test]
    fn volume_window_values() {
        assert_eq!(volume_window(&ModelConfig::reference(1)), (7, 9));
        assert_eq!(volume_window(&ModelConfig::reference(365)), (2774, 3066));
        let mut c = ModelConfig::reference(1);
        c.delta = 0;
        assert_eq!(volume_window(&c), (8, 8));
    }

    #[test]
    fn csv_export_columns() {
        let set = brute_force(&ModelConfig::reference(1)).unwrap();
        let mut buf = Vec::new();
        set.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("schedule_bits,cost,v_out,feasible_flags"));
        assert!(text.contains("0110,12,7,111"));
        assert_eq!(lines.count(), 6);
    }
}
