//! Multi-seed sweeps with per-round aggregation.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::harness::config::ExperimentConfig;
use crate::harness::runner::{primary_suboptimality, run_trial, Trajectory};

/// Cross-seed summary of the primary suboptimality at one logged round.
#[derive(Clone, Copy, Debug)]
pub struct AggregateRow {
    pub t: u64,
    pub mean: f64,
    pub median: f64,
    pub p95: f64,
    pub n_seeds: usize,
}

/// Interpolated percentile of a sorted slice (`q` in [0, 1]).
fn percentile(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    let idx = q.clamp(0.0, 1.0) * (n - 1) as f64;
    let lo = idx.floor() as usize;
    let hi = idx.ceil() as usize;
    if lo == hi || sorted[lo] == sorted[hi] {
        sorted[lo]
    } else {
        let w = idx - lo as f64;
        sorted[lo] * (1.0 - w) + sorted[hi] * w
    }
}

/// Run every seed (in parallel; each trial owns its state) and aggregate the
/// primary suboptimality per logged round. The reduction is order-independent
/// because trials are collected by seed position first.
pub fn sweep(config: &ExperimentConfig) -> Result<Vec<AggregateRow>> {
    if config.seeds.len() < 2 {
        return Err(Error::Config(
            "a sweep needs at least 2 seeds".to_string(),
        ));
    }
    let trials: Vec<Result<Trajectory>> = config
        .seeds
        .par_iter()
        .map(|&seed| run_trial(config, seed))
        .collect();
    let trials: Vec<Trajectory> = trials.into_iter().collect::<Result<_>>()?;

    let reference = &trials[0];
    for trial in &trials[1..] {
        if trial.records.len() != reference.records.len() {
            return Err(Error::Analysis(
                "seeds produced differently sized trajectories".to_string(),
            ));
        }
    }
    let n = trials.len();
    let rows = reference
        .records
        .iter()
        .enumerate()
        .map(|(i, rec)| {
            let mut values: Vec<f64> = trials
                .iter()
                .map(|trial| primary_suboptimality(&trial.records[i]))
                .collect();
            values.sort_by(|a, b| a.partial_cmp(b).expect("suboptimalities are finite"));
            AggregateRow {
                t: rec.t,
                mean: values.iter().sum::<f64>() / n as f64,
                median: percentile(&values, 0.5),
                p95: percentile(&values, 0.95),
                n_seeds: n,
            }
        })
        .collect();
    Ok(rows)
}

pub const AGGREGATE_HEADER: &str = "t,mean,median,p95,n_seeds";

pub fn write_aggregate_csv(w: &mut impl Write, rows: &[AggregateRow]) -> Result<()> {
    writeln!(w, "{AGGREGATE_HEADER}")?;
    for r in rows {
        writeln!(w, "{},{},{},{},{}", r.t, r.mean, r.median, r.p95, r.n_seeds)?;
    }
    Ok(())
}

pub fn write_aggregate_file(path: &Path, rows: &[AggregateRow]) -> Result<()> {
    let file = std::fs::File::create(path)
        .map_err(|e| Error::Config(format!("cannot create {}: {e}", path.display())))?;
    let mut w = std::io::BufWriter::new(file);
    write_aggregate_csv(&mut w, rows)?;
    w.flush()?;
    Ok(())
}
