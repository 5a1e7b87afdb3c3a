//! Trial execution and trajectory CSV I/O.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::conversions::{
    AcceleratedConverter, AnytimeConverter, ClassicConverter, GeneralAnytimeConverter,
    GradientOracle, OptimisticConverter, StepRecord, SurrogateOracle,
};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::harness::config::{AlgoKind, ExperimentConfig};
use crate::learners::{AdaptiveOgd, OptimisticOgd, WeightedFtlStronglyConvex};
use crate::problems::{Objective, ProblemOracle};
use crate::rng::{stream_rng, RunRng, STREAM_NOISE};
use crate::vector::Vector;

/// One logged row of a trial.
#[derive(Clone, Debug)]
pub struct TrajectoryRecord {
    pub t: u64,
    pub alpha: f64,
    pub alpha_cum: f64,
    /// Suboptimality of the solution estimate (`x_t`, or the running average
    /// for the classic conversion).
    pub subopt_x: f64,
    /// Suboptimality of the gradient-step point, for the accelerated scheme.
    pub subopt_y: Option<f64>,
    /// Exact gradient norm at the queried point.
    pub grad_norm_true: f64,
    /// Learner regret measured against the problem's exact optimum.
    pub measured_regret: f64,
    /// The anytime excess-loss bound `measured_regret / alpha_cum`.
    pub bound_value: Option<f64>,
}

/// A full in-memory trial.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub seed: u64,
    pub records: Vec<TrajectoryRecord>,
}

/// The solution estimate a record tracks: `subopt_y` when present.
pub fn primary_suboptimality(record: &TrajectoryRecord) -> f64 {
    record.subopt_y.unwrap_or(record.subopt_x)
}

enum Driver {
    Classic(ClassicConverter<AdaptiveOgd>),
    Anytime(AnytimeConverter<AdaptiveOgd>),
    GeneralSc(GeneralAnytimeConverter<WeightedFtlStronglyConvex>),
    Optimistic(OptimisticConverter<OptimisticOgd>),
    Accelerated(AcceleratedConverter<AdaptiveOgd>),
}

impl Driver {
    fn build(config: &ExperimentConfig, domain: &Domain) -> Result<Driver> {
        Ok(match config.algo {
            AlgoKind::Classic => Driver::Classic(ClassicConverter::new(
                AdaptiveOgd::new(),
                domain,
                config.schedule,
            )?),
            AlgoKind::Anytime => Driver::Anytime(AnytimeConverter::new(
                AdaptiveOgd::new(),
                domain,
                config.schedule,
            )?),
            AlgoKind::GeneralSc => Driver::GeneralSc(GeneralAnytimeConverter::new(
                WeightedFtlStronglyConvex::new(),
                domain,
                config.schedule,
            )?),
            AlgoKind::Optimistic => Driver::Optimistic(OptimisticConverter::new(
                OptimisticOgd::new(),
                domain,
                config.schedule,
            )?),
            AlgoKind::Accelerated => Driver::Accelerated(AcceleratedConverter::new(
                AdaptiveOgd::new(),
                domain.dim(),
                config.bound_b,
                config.accel_c,
            )?),
        })
    }

    fn step(&mut self, oracle: &mut ProblemOracle<'_, RunRng>) -> Result<StepRecord> {
        match self {
            Driver::Classic(c) => c.step(oracle as &mut dyn GradientOracle),
            Driver::Anytime(c) => c.step(oracle as &mut dyn GradientOracle),
            Driver::GeneralSc(c) => c.step(oracle as &mut dyn SurrogateOracle),
            Driver::Optimistic(c) => c.step(oracle as &mut dyn GradientOracle),
            Driver::Accelerated(c) => c.step(oracle as &mut dyn GradientOracle),
        }
    }

    fn learner_regret_against(&self, comparator: &Vector) -> f64 {
        match self {
            Driver::Classic(c) => c.learner_regret_against(comparator),
            Driver::Anytime(c) => c.learner_regret_against(comparator),
            Driver::GeneralSc(c) => c.learner_regret_against(comparator),
            Driver::Optimistic(c) => c.learner_regret_against(comparator),
            Driver::Accelerated(c) => c.learner_regret_against(comparator),
        }
    }
}

/// Rounds that get logged. With `log_every = 0` (the default) the grid is
/// geometric with ratio `2^(1/4)` plus the final round: uniform coverage in
/// `ln t` for log-log rate fits, four points per octave so even short runs
/// leave enough tail points to fit, and still only ~80 rows at a million
/// rounds. Otherwise every `log_every`-th round plus the final.
pub fn log_grid(rounds: u64, log_every: u64) -> Vec<u64> {
    let mut points = Vec::new();
    if rounds == 0 {
        return points;
    }
    if log_every == 0 {
        let mut k = 0u32;
        loop {
            let t = 2f64.powf(k as f64 / 4.0).round() as u64;
            if t > rounds {
                break;
            }
            if points.last() != Some(&t) {
                points.push(t);
            }
            k += 1;
        }
    } else {
        let mut t = log_every;
        while t <= rounds {
            points.push(t);
            t = t.saturating_add(log_every);
        }
    }
    if points.last() != Some(&rounds) {
        points.push(rounds);
    }
    points
}

fn make_record(
    objective: &Objective,
    step: &StepRecord,
    measured_regret: f64,
) -> Result<TrajectoryRecord> {
    let estimate_subopt = match &step.average {
        Some(avg) => objective.suboptimality(avg)?,
        None => step.report.true_value - objective.f_star(),
    };
    let subopt_y = match &step.gradient_step {
        Some(y) => Some(objective.suboptimality(y)?),
        None => None,
    };
    if !estimate_subopt.is_finite() || subopt_y.is_some_and(|s| !s.is_finite()) {
        return Err(Error::Data(format!(
            "non-finite loss at round {}",
            step.t
        )));
    }
    if estimate_subopt < -1e-10 {
        return Err(Error::Data(format!(
            "suboptimality {estimate_subopt} below the exact-optimum floor at round {}",
            step.t
        )));
    }
    Ok(TrajectoryRecord {
        t: step.t,
        alpha: step.alpha,
        alpha_cum: step.alpha_cum,
        subopt_x: estimate_subopt,
        subopt_y,
        grad_norm_true: step.report.true_grad_norm,
        measured_regret,
        bound_value: Some(measured_regret / step.alpha_cum),
    })
}

/// Run one seeded trial, pushing each logged record into `sink` as it is
/// produced. Deterministic given `(config, seed)`.
pub fn stream_records(
    config: &ExperimentConfig,
    seed: u64,
    mut sink: impl FnMut(&TrajectoryRecord) -> Result<()>,
) -> Result<()> {
    let (objective, domain, noise, mu) = config.build_problem(seed)?;
    let mut oracle =
        ProblemOracle::new(&objective, noise, stream_rng(seed, STREAM_NOISE)).with_surrogate_mu(mu);
    let mut driver = Driver::build(config, &domain)?;
    let x_star = objective.x_star().clone();
    let grid = log_grid(config.rounds, config.log_every);
    let mut next = 0usize;
    for t in 1..=config.rounds {
        let step = driver.step(&mut oracle)?;
        if next < grid.len() && grid[next] == t {
            let record = make_record(&objective, &step, driver.learner_regret_against(&x_star))?;
            sink(&record)?;
            next += 1;
        }
    }
    Ok(())
}

/// Run one seeded trial fully in memory.
pub fn run_trial(config: &ExperimentConfig, seed: u64) -> Result<Trajectory> {
    let mut records = Vec::new();
    stream_records(config, seed, |r| {
        records.push(r.clone());
        Ok(())
    })?;
    Ok(Trajectory { seed, records })
}

pub const TRAJECTORY_HEADER: &str =
    "t,alpha,alpha_cum,subopt_x,subopt_y,grad_norm_true,measured_regret,bound";

fn format_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_trajectory_row(w: &mut impl Write, r: &TrajectoryRecord) -> Result<()> {
    writeln!(
        w,
        "{},{},{},{},{},{},{},{}",
        r.t,
        r.alpha,
        r.alpha_cum,
        r.subopt_x,
        format_opt(r.subopt_y),
        r.grad_norm_true,
        r.measured_regret,
        format_opt(r.bound_value),
    )?;
    Ok(())
}

/// Output path for one seed: the configured path itself for a single seed,
/// otherwise the seed is spliced in front of the extension.
pub fn seed_path(out: &Path, seed: u64, multi: bool) -> PathBuf {
    if !multi {
        return out.to_path_buf();
    }
    let stem = out.file_stem().unwrap_or_default().to_string_lossy();
    let name = match out.extension() {
        Some(ext) => format!("{stem}.seed{seed}.{}", ext.to_string_lossy()),
        None => format!("{stem}.seed{seed}"),
    };
    out.with_file_name(name)
}

/// Run every configured seed, writing one trajectory CSV per seed.
///
/// Rows stream to disk as they are produced, so a run aborted by a data error
/// leaves its partial trajectory behind; the error is still returned.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<PathBuf>> {
    let out = config
        .out
        .as_ref()
        .ok_or_else(|| Error::Config("run needs an output path (out=...)".to_string()))?;
    let multi = config.seeds.len() > 1;
    let mut written = Vec::new();
    for &seed in &config.seeds {
        let path = seed_path(out, seed, multi);
        let file = File::create(&path)
            .map_err(|e| Error::Config(format!("cannot create {}: {e}", path.display())))?;
        let mut w = BufWriter::new(file);
        writeln!(w, "{TRAJECTORY_HEADER}")?;
        let run_result = stream_records(config, seed, |r| write_trajectory_row(&mut w, r));
        w.flush()?;
        written.push(path);
        run_result?;
    }
    Ok(written)
}

fn parse_field(field: &str, line: usize) -> Result<f64> {
    field
        .parse()
        .map_err(|_| Error::Data(format!("bad numeric field '{field}' on line {line}")))
}

fn parse_opt_field(field: &str, line: usize) -> Result<Option<f64>> {
    if field.is_empty() {
        Ok(None)
    } else {
        parse_field(field, line).map(Some)
    }
}

/// Read a trajectory CSV back (for `ratefit` and downstream analysis).
pub fn read_trajectory_csv(path: &Path) -> Result<Vec<TrajectoryRecord>> {
    let file = File::open(path)
        .map_err(|e| Error::Data(format!("cannot open {}: {e}", path.display())))?;
    let mut lines = BufReader::new(file).lines();
    let header = lines
        .next()
        .transpose()?
        .ok_or_else(|| Error::Data(format!("{} is empty", path.display())))?;
    if header.trim() != TRAJECTORY_HEADER {
        return Err(Error::Data(format!(
            "{} is not a trajectory CSV (unexpected header)",
            path.display()
        )));
    }
    let mut records = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let lineno = i + 2;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 8 {
            return Err(Error::Data(format!(
                "line {lineno} has {} fields, expected 8",
                fields.len()
            )));
        }
        records.push(TrajectoryRecord {
            t: fields[0]
                .parse()
                .map_err(|_| Error::Data(format!("bad round index on line {lineno}")))?,
            alpha: parse_field(fields[1], lineno)?,
            alpha_cum: parse_field(fields[2], lineno)?,
            subopt_x: parse_field(fields[3], lineno)?,
            subopt_y: parse_opt_field(fields[4], lineno)?,
            grad_norm_true: parse_field(fields[5], lineno)?,
            measured_regret: parse_field(fields[6], lineno)?,
            bound_value: parse_opt_field(fields[7], lineno)?,
        });
    }
    Ok(records)
}
