//! Repeated runs and the convergence summary.

use std::io::Write;

use super::{run_gas, GasParams, GasRunRecord, MeasurementBackend};
use crate::error::Result;
use crate::model::ModelConfig;

/// SplitMix64 of `base + run`, giving well-spread per-run seeds.
pub fn derive_seed(base: u64, run: u64) -> u64 {
    let mut z = base.wrapping_add(run.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `runs` independent searches sharing one backend, seeded by [`derive_seed`].
pub fn run_many(
    config: &ModelConfig,
    params: &GasParams,
    runs: usize,
    backend: &mut dyn MeasurementBackend,
) -> Result<Vec<GasRunRecord>> {
    (0..runs as u64)
        .map(|r| {
            let p = GasParams { seed: derive_seed(params.seed, r), ..params.clone() };
            run_gas(config, &p, backend)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergencePoint {
    pub cum_rotations: u64,
    pub mean_best: f64,
    pub median_best: f64,
    pub p5: f64,
    pub p95: f64,
}

/// Nearest-rank percentile of sorted data.
fn percentile(sorted: &[i64], q: f64) -> f64 {
    let rank = ((q / 100.0) * sorted.len() as f64).ceil().max(1.0) as usize;
    sorted[rank.min(sorted.len()) - 1] as f64
}

fn median(sorted: &[i64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2] as f64
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) as f64 / 2.0
    }
}

/// Best-cost statistics across runs at every rotation count `0..=max_rotations`.
pub fn convergence(records: &[GasRunRecord], max_rotations: u64) -> Vec<ConvergencePoint> {
    if records.is_empty() {
        return Vec::new();
    }
    (0..=max_rotations)
        .map(|r| {
            let mut best: Vec<i64> = records.iter().map(|rec| rec.best_at(r)).collect();
            best.sort_unstable();
            ConvergencePoint {
                cum_rotations: r,
                mean_best: best.iter().sum::<i64>() as f64 / best.len() as f64,
                median_best: median(&best),
                p5: percentile(&best, 5.0),
                p95: percentile(&best, 95.0),
            }
        })
        .collect()
}

/// Share of runs whose best cost is at most `cost` after `rotations`.
pub fn fraction_at_or_below(records: &[GasRunRecord], rotations: u64, cost: i64) -> f64 {
    if records.is_empty() {
        return 0.0;
    }
    records.iter().filter(|r| r.best_at(rotations) <= cost).count() as f64 / records.len() as f64
}

pub fn write_trace_csv<W: Write>(records: &[GasRunRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["run_id", "step", "j", "cum_rotations", "measured_cost", "best_cost"])?;
    for (run, rec) in records.iter().enumerate() {
        for (step, s) in rec.steps.iter().enumerate() {
            w.write_record([
                run.to_string(),
                step.to_string(),
                s.j.to_string(),
                s.cum_rotations.to_string(),
                s.measured_cost.to_string(),
                s.best_cost.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_convergence_csv<W: Write>(points: &[ConvergencePoint], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["cum_rotations", "mean_best", "median_best", "p5", "p95"])?;
    for p in points {
        w.write_record([
            p.cum_rotations.to_string(),
            format!("{:.4}", p.mean_best),
            format!("{}", p.median_best),
            format!("{}", p.p5),
            format!("{}", p.p95),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn percentiles() {
        let v: Vec<i64> = (1..=100).collect();
        assert_eq!(percentile(&v, 5.0), 5.0);
        assert_eq!(percentile(&v, 95.0), 95.0);
        assert_eq!(median(&v), 50.5);
        assert_eq!(percentile(&[7], 5.0), 7.0);
    }

    #[test]
    fn seeds_differ() {
        assert_ne!(derive_seed(0, 0), derive_seed(0, 1));
        assert_eq!(derive_seed(3, 9), derive_seed(3, 9));
    }
}
