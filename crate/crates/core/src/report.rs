//! Tabular outputs: the one-day truth table, measurement histograms,
//! annealing scatter data and brute-force summaries.

use std::collections::BTreeMap;
use std::io::Write;

use rand::distributions::WeightedIndex;
use rand::prelude::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{invalid_arg, Result};
use crate::model::{evaluate_schedule, lower_bound_cost, volume_window, Shop};
use crate::{EvaluationResult, FeasibleSet, ModelConfig, Schedule};

/// One row of the one-day truth table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TruthTableRow {
    #[serde(rename = "S1")]
    pub s1: String,
    #[serde(rename = "S2")]
    pub s2: String,
    #[serde(rename = "B_init")]
    pub b_init: i64,
    #[serde(rename = "U(S1)")]
    pub u_s1: i64,
    #[serde(rename = "U(S2)")]
    pub u_s2: i64,
    #[serde(rename = "B_out")]
    pub b_out: i64,
    #[serde(rename = "V_out")]
    pub v_out: i64,
    #[serde(rename = "Cost")]
    pub cost: i64,
    pub c1: u8,
    pub c2: u8,
    pub c3: u8,
}

/// All 16 one-day schedules in shop-code order.
pub fn truth_table_rows(config: &ModelConfig) -> Result<Vec<TruthTableRow>> {
    if config.n_days != 1 {
        return Err(invalid_arg("the truth table is defined for one day"));
    }
    let u1 = config.units_table(Shop::S1);
    let u2 = config.units_table(Shop::S2);
    let mut rows = Vec::with_capacity(16);
    for a in 0..4u8 {
        for b in 0..4u8 {
            let e = evaluate_schedule(config, &Schedule::from_codes(&[(a, b)])?)?;
            rows.push(TruthTableRow {
                s1: format!("{a:02b}"),
                s2: format!("{b:02b}"),
                b_init: config.b_init,
                u_s1: u1[a as usize],
                u_s2: u2[b as usize],
                b_out: e.final_buffer(),
                v_out: e.v_out,
                cost: e.cost,
                c1: e.c1_per_day[0] as u8,
                c2: e.c2 as u8,
                c3: e.c3 as u8,
            });
        }
    }
    Ok(rows)
}

pub fn write_truth_table_csv<W: Write>(rows: &[TruthTableRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HistogramRow {
    pub state_bits: String,
    pub decimal: u64,
    pub count: u64,
    pub is_valid: bool,
}

/// Draws `shots` schedule indices from a distribution over the search space.
pub fn sample_counts(distribution: &[f64], shots: u64, seed: u64) -> Result<BTreeMap<u64, u64>> {
    if shots == 0 {
        return Err(invalid_arg("shots must be positive"));
    }
    let dist = WeightedIndex::new(distribution).map_err(|e| invalid_arg(format!("bad distribution: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = BTreeMap::new();
    for _ in 0..shots {
        *counts.entry(dist.sample(&mut rng) as u64).or_insert(0) += 1;
    }
    Ok(counts)
}

/// Every state is listed for up to two days; beyond that only observed states.
pub fn histogram_rows(counts: &BTreeMap<u64, u64>, valid: &FeasibleSet, n_days: usize) -> Vec<HistogramRow> {
    let row = |index: u64, count: u64| {
        let s = Schedule::from_index(index, n_days);
        HistogramRow { state_bits: s.to_bits(), decimal: index, count, is_valid: valid.contains(&s) }
    };
    if n_days <= 2 {
        (0..1u64 << (4 * n_days)).map(|i| row(i, counts.get(&i).copied().unwrap_or(0))).collect()
    } else {
        counts.iter().map(|(&i, &c)| row(i, c)).collect()
    }
}

pub fn write_histogram_csv<W: Write>(rows: &[HistogramRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Scatter data `cost,v_out,schedule_bits`, one row per solution.
pub fn write_anneal_csv<W: Write>(solutions: &[(Schedule, EvaluationResult)], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["cost", "v_out", "schedule_bits"])?;
    for (s, e) in solutions {
        w.write_record([e.cost.to_string(), e.v_out.to_string(), s.to_bits()])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerBoundReport {
    pub n_days: usize,
    pub v_target: i64,
    pub delta: i64,
    pub v_low: i64,
    pub v_up: i64,
    pub lower_bound_cost: i64,
}

pub fn lower_bound_report(config: &ModelConfig) -> LowerBoundReport {
    let (v_low, v_up) = volume_window(config);
    LowerBoundReport {
        n_days: config.n_days,
        v_target: config.v_target,
        delta: config.delta,
        v_low,
        v_up,
        lower_bound_cost: lower_bound_cost(config),
    }
}

/// Reference valid/invalid counts quoted for the two-day instance.
pub const REFERENCE_TWO_DAY_COUNTS: (u64, u64) = (22, 244);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BruteForceSummary {
    pub n_days: usize,
    pub total_space_size: u64,
    pub feasible: u64,
    pub infeasible: u64,
    pub min_cost: Option<i64>,
    pub cost_histogram: BTreeMap<i64, usize>,
    /// Set for the two-day instance, whose reference counts do not sum to the space size.
    pub note: Option<String>,
}

pub fn brute_force_summary(set: &FeasibleSet, n_days: usize) -> BruteForceSummary {
    let feasible = set.len() as u64;
    let note = (n_days == 2).then(|| {
        let (valid, invalid) = REFERENCE_TWO_DAY_COUNTS;
        format!(
            "reference counts {valid} valid + {invalid} invalid = {} != {}; enumerated count {feasible} is authoritative",
            valid + invalid,
            set.total_space_size
        )
    });
    BruteForceSummary {
        n_days,
        total_space_size: set.total_space_size,
        feasible,
        infeasible: set.total_space_size - feasible,
        min_cost: set.min_cost,
        cost_histogram: set.cost_histogram.clone(),
        note,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::brute_force;

    #[test]
    fn two_day_note() {
        let set = brute_force(&ModelConfig::reference(2)).unwrap();
        let s = brute_force_summary(&set, 2);
        assert_eq!(s.feasible + s.infeasible, 256);
        assert!(s.note.unwrap().contains("266 != 256"));
        assert!(brute_force_summary(&brute_force(&ModelConfig::reference(1)).unwrap(), 1).note.is_none());
    }

    #[test]
    fn sampling_is_seeded() {
        let d = [0.25, 0.0, 0.75];
        let a = sample_counts(&d, 400, 3).unwrap();
        assert_eq!(a, sample_counts(&d, 400, 3).unwrap());
        assert!(!a.contains_key(&1));
        assert_eq!(a.values().sum::<u64>(), 400);
    }
}
