//! Experiment configuration: key=value parsing, validation, problem building.

use std::path::PathBuf;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::problems::{NoiseModel, Objective};
use crate::rng::{stream_rng, STREAM_PROBLEM};
use crate::schedule::WeightSchedule;
use crate::vector::Vector;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgoKind {
    Classic,
    Anytime,
    GeneralSc,
    Optimistic,
    Accelerated,
}

impl AlgoKind {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "classic" => AlgoKind::Classic,
            "anytime" => AlgoKind::Anytime,
            "general-sc" => AlgoKind::GeneralSc,
            "optimistic" => AlgoKind::Optimistic,
            "accelerated" => AlgoKind::Accelerated,
            other => {
                return Err(Error::Config(format!(
                    "unknown algo '{other}' (expected classic|anytime|general-sc|optimistic|accelerated)"
                )))
            }
        })
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            AlgoKind::Classic => "classic",
            AlgoKind::Anytime => "anytime",
            AlgoKind::GeneralSc => "general-sc",
            AlgoKind::Optimistic => "optimistic",
            AlgoKind::Accelerated => "accelerated",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LearnerKind {
    AdaptiveOgd,
    OptimisticOgd,
    FtlSc,
}

impl LearnerKind {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "adaptive-ogd" => LearnerKind::AdaptiveOgd,
            "optimistic-ogd" => LearnerKind::OptimisticOgd,
            "ftl-sc" => LearnerKind::FtlSc,
            other => {
                return Err(Error::Config(format!(
                    "unknown learner '{other}' (expected adaptive-ogd|optimistic-ogd|ftl-sc)"
                )))
            }
        })
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            LearnerKind::AdaptiveOgd => "adaptive-ogd",
            LearnerKind::OptimisticOgd => "optimistic-ogd",
            LearnerKind::FtlSc => "ftl-sc",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemKind {
    Quadratic,
    Logistic,
    AbsDeviation,
}

impl ProblemKind {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "quadratic" => ProblemKind::Quadratic,
            "logistic" => ProblemKind::Logistic,
            "abs-deviation" | "abs_deviation" => ProblemKind::AbsDeviation,
            other => {
                return Err(Error::Config(format!(
                    "unknown problem '{other}' (expected quadratic|logistic|abs-deviation)"
                )))
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoiseKind {
    None,
    Gaussian,
    Sphere,
}

impl NoiseKind {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "none" => NoiseKind::None,
            "gaussian" => NoiseKind::Gaussian,
            "sphere" => NoiseKind::Sphere,
            other => {
                return Err(Error::Config(format!(
                    "unknown noise '{other}' (expected none|gaussian|sphere)"
                )))
            }
        })
    }
}

fn parse_schedule(s: &str) -> Result<WeightSchedule> {
    if s == "constant" {
        return Ok(WeightSchedule::Constant);
    }
    if s == "linear" {
        return Ok(WeightSchedule::Linear);
    }
    if let Some(k) = s.strip_prefix("poly:") {
        let k: f64 = k
            .parse()
            .map_err(|_| Error::Config(format!("bad polynomial exponent '{k}'")))?;
        return WeightSchedule::polynomial(k).map_err(|e| Error::Config(e.to_string()));
    }
    Err(Error::Config(format!(
        "unknown schedule '{s}' (expected constant|linear|poly:K)"
    )))
}

fn parse_f64(key: &str, v: &str) -> Result<f64> {
    v.parse()
        .map_err(|_| Error::Config(format!("bad numeric value '{v}' for {key}")))
}

fn parse_u64(key: &str, v: &str) -> Result<u64> {
    v.parse()
        .map_err(|_| Error::Config(format!("bad integer value '{v}' for {key}")))
}

fn parse_list(key: &str, v: &str) -> Result<Vec<f64>> {
    v.split(',')
        .map(|part| parse_f64(key, part.trim()))
        .collect()
}

/// Seeds accept either a comma list `1,2,7` or a half-open range `0..100`.
fn parse_seeds(v: &str) -> Result<Vec<u64>> {
    if let Some((lo, hi)) = v.split_once("..") {
        let lo = parse_u64("seeds", lo)?;
        let hi = parse_u64("seeds", hi)?;
        if hi <= lo {
            return Err(Error::Config(format!("empty seed range '{v}'")));
        }
        return Ok((lo..hi).collect());
    }
    v.split(',')
        .map(|part| parse_u64("seeds", part.trim()))
        .collect()
}

/// One experiment: algorithm x learner x schedule x problem x rounds x seeds.
///
/// Built from `key=value` pairs; the same keys serve the config file and the
/// CLI flags, with later pairs overriding earlier ones.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub algo: AlgoKind,
    pub learner: LearnerKind,
    pub schedule: WeightSchedule,
    pub problem: ProblemKind,
    pub dim: usize,
    pub spectrum: Vec<f64>,
    pub x_star: Option<Vec<f64>>,
    pub bound_b: f64,
    pub noise: NoiseKind,
    pub sigma: f64,
    pub rounds: u64,
    pub seeds: Vec<u64>,
    pub accel_c: f64,
    pub mu_surrogate: Option<f64>,
    pub out: Option<PathBuf>,
    pub log_every: u64,
    pub tail_fraction: f64,
    pub delta: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            algo: AlgoKind::Anytime,
            learner: LearnerKind::AdaptiveOgd,
            schedule: WeightSchedule::Constant,
            problem: ProblemKind::Quadratic,
            dim: 10,
            spectrum: vec![0.1, 1.0],
            x_star: None,
            bound_b: 4.0,
            noise: NoiseKind::None,
            sigma: 0.0,
            rounds: 1000,
            seeds: vec![0],
            accel_c: 2.0,
            mu_surrogate: None,
            out: None,
            log_every: 0,
            tail_fraction: 0.5,
            delta: 0.05,
        }
    }
}

impl ExperimentConfig {
    /// Build from ordered `key=value` pairs (file entries first, then flags).
    pub fn from_pairs(pairs: &[(String, String)]) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        let mut learner_set = false;
        let mut schedule_set = false;
        for (key, value) in pairs {
            match key.as_str() {
                "algo" => cfg.algo = AlgoKind::parse(value)?,
                "learner" => {
                    cfg.learner = LearnerKind::parse(value)?;
                    learner_set = true;
                }
                "schedule" => {
                    cfg.schedule = parse_schedule(value)?;
                    schedule_set = true;
                }
                "problem" => cfg.problem = ProblemKind::parse(value)?,
                "dim" => {
                    cfg.dim = parse_u64(key, value)? as usize;
                }
                "spectrum" => cfg.spectrum = parse_list(key, value)?,
                "xstar" => cfg.x_star = Some(parse_list(key, value)?),
                "B" => cfg.bound_b = parse_f64(key, value)?,
                "noise" => cfg.noise = NoiseKind::parse(value)?,
                "sigma" => cfg.sigma = parse_f64(key, value)?,
                "T" => cfg.rounds = parse_u64(key, value)?,
                "seed" => cfg.seeds = vec![parse_u64(key, value)?],
                "seeds" => cfg.seeds = parse_seeds(value)?,
                "c" => cfg.accel_c = parse_f64(key, value)?,
                "mu-surrogate" => cfg.mu_surrogate = Some(parse_f64(key, value)?),
                "out" => cfg.out = Some(PathBuf::from(value)),
                "log-every" => cfg.log_every = parse_u64(key, value)?,
                "tail-frac" => cfg.tail_fraction = parse_f64(key, value)?,
                "delta" => cfg.delta = parse_f64(key, value)?,
                other => return Err(Error::Config(format!("unknown key '{other}'"))),
            }
        }
        if !learner_set {
            cfg.learner = default_learner(cfg.algo);
        }
        if !schedule_set && cfg.algo == AlgoKind::Accelerated {
            cfg.schedule = WeightSchedule::Linear;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::Config("dim must be at least 1".to_string()));
        }
        if self.bound_b <= 0.0 || !self.bound_b.is_finite() {
            return Err(Error::Config(format!(
                "B must be positive and finite, got {}",
                self.bound_b
            )));
        }
        if self.sigma < 0.0 || !self.sigma.is_finite() {
            return Err(Error::Config(format!(
                "sigma must be nonnegative, got {}",
                self.sigma
            )));
        }
        if self.noise == NoiseKind::None && self.sigma > 0.0 {
            return Err(Error::Config(
                "sigma > 0 has no effect with noise=none; pick gaussian or sphere".to_string(),
            ));
        }
        if self.accel_c <= 0.0 || !self.accel_c.is_finite() {
            return Err(Error::Config(format!(
                "c must be positive, got {}",
                self.accel_c
            )));
        }
        if !(self.tail_fraction > 0.0 && self.tail_fraction <= 1.0) {
            return Err(Error::Config(format!(
                "tail-frac must lie in (0, 1], got {}",
                self.tail_fraction
            )));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::Config(format!(
                "delta must lie in (0, 1), got {}",
                self.delta
            )));
        }
        if self.seeds.is_empty() {
            return Err(Error::Config("need at least one seed".to_string()));
        }
        let expected = default_learner(self.algo);
        if self.learner != expected {
            return Err(Error::Config(format!(
                "algo {} requires learner {}, got {}",
                self.algo.as_str(),
                expected.as_str(),
                self.learner.as_str()
            )));
        }
        if self.algo == AlgoKind::Accelerated && self.schedule != WeightSchedule::Linear {
            return Err(Error::Config(
                "the accelerated conversion requires schedule=linear".to_string(),
            ));
        }
        if let Some(mu) = self.mu_surrogate {
            if mu < 0.0 || !mu.is_finite() {
                return Err(Error::Config(format!(
                    "mu-surrogate must be nonnegative, got {mu}"
                )));
            }
        }
        Ok(())
    }

    /// The exact minimizer the problem will use: either the configured one or
    /// the default interior point at distance `B/4` from the center along the
    /// all-ones direction (distinct from the start iterate, safely interior).
    pub fn x_star_vector(&self) -> Result<Vector> {
        let v = match &self.x_star {
            Some(coords) => {
                if coords.len() != self.dim {
                    return Err(Error::Config(format!(
                        "xstar has {} coordinates but dim is {}",
                        coords.len(),
                        self.dim
                    )));
                }
                Vector::from_slice(coords).map_err(|e| Error::Config(e.to_string()))?
            }
            None => {
                let coord = self.bound_b / 4.0 / (self.dim as f64).sqrt();
                Vector::constant(self.dim, coord).map_err(|e| Error::Config(e.to_string()))?
            }
        };
        if v.norm() >= self.bound_b / 2.0 {
            return Err(Error::Config(format!(
                "xstar must lie strictly inside the ball of radius B/2 = {}",
                self.bound_b / 2.0
            )));
        }
        Ok(v)
    }

    fn expanded_spectrum(&self) -> Result<Vec<f64>> {
        if self.spectrum.len() == self.dim {
            return Ok(self.spectrum.clone());
        }
        match self.spectrum.len() {
            1 => Ok(vec![self.spectrum[0]; self.dim]),
            2 => {
                let (lo, hi) = (self.spectrum[0], self.spectrum[1]);
                if self.dim == 1 {
                    return Err(Error::Config(
                        "a two-entry spectrum is ambiguous at dim=1".to_string(),
                    ));
                }
                let step = (hi - lo) / (self.dim as f64 - 1.0);
                Ok((0..self.dim).map(|i| lo + step * i as f64).collect())
            }
            n => Err(Error::Config(format!(
                "spectrum must have 1, 2, or dim={} entries, got {n}",
                self.dim
            ))),
        }
    }

    /// Instantiate the problem for one seed: objective, feasible domain,
    /// noise model, and the surrogate modulus handed to surrogate-driven
    /// conversions.
    pub fn build_problem(&self, seed: u64) -> Result<(Objective, Domain, NoiseModel, f64)> {
        let domain = Domain::ball(Vector::zeros(self.dim), self.bound_b / 2.0)?;
        let objective = match self.problem {
            ProblemKind::Quadratic => {
                let spectrum = self.expanded_spectrum()?;
                let mut rng = stream_rng(seed, STREAM_PROBLEM);
                Objective::quadratic_from_spectrum(&spectrum, self.x_star_vector()?, &mut rng)?
            }
            ProblemKind::Logistic => {
                if self.x_star.is_some() {
                    return Err(Error::Config(
                        "the synthetic logistic problem pins its optimum at the origin; drop xstar"
                            .to_string(),
                    ));
                }
                let mut rng = stream_rng(seed, STREAM_PROBLEM);
                Objective::logistic_synthetic(self.dim, 5 * self.dim, &mut rng)?
            }
            ProblemKind::AbsDeviation => Objective::abs_deviation(self.x_star_vector()?),
        };
        let noise = match self.noise {
            NoiseKind::None => NoiseModel::None,
            NoiseKind::Gaussian => NoiseModel::gaussian(self.sigma)?,
            NoiseKind::Sphere => NoiseModel::sphere(self.sigma)?,
        };
        let mu = match self.algo {
            AlgoKind::GeneralSc => match self
                .mu_surrogate
                .or(objective.info().strong_convexity)
            {
                Some(mu) if mu > 0.0 => mu,
                _ => {
                    return Err(Error::Config(
                        "general-sc needs a positive surrogate modulus: set mu-surrogate or use a strongly convex problem"
                            .to_string(),
                    ))
                }
            },
            _ => 0.0,
        };
        Ok((objective, domain, noise, mu))
    }
}

fn default_learner(algo: AlgoKind) -> LearnerKind {
    match algo {
        AlgoKind::Classic | AlgoKind::Anytime | AlgoKind::Accelerated => LearnerKind::AdaptiveOgd,
        AlgoKind::GeneralSc => LearnerKind::FtlSc,
        AlgoKind::Optimistic => LearnerKind::OptimisticOgd,
    }
}

/// Read a flat `key=value` config file; `#` starts a comment.
pub fn parse_config_file(path: &std::path::Path) -> Result<Vec<(String, String)>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read config file {}: {e}", path.display())))?;
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!(
                "line {} of {} is not key=value: '{raw}'",
                lineno + 1,
                path.display()
            ))
        })?;
        pairs.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(pairs)
}
