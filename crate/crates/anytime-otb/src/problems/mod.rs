//! Synthetic convex objectives with exact optima and controlled noise.
//!
//! Every objective carries exact metadata (smoothness, strong convexity,
//! minimizer, minimum value, Lipschitz bound where one exists), so benchmark
//! suboptimalities and closed-form bounds never rely on estimated quantities.
//! Quadratics are generated from a prescribed spectrum under a seeded random
//! rotation, which makes the extreme eigenvalues inputs rather than outputs.

mod logistic;
mod matrix;

pub use matrix::SymMatrix;

use rand::Rng;

use crate::conversions::{
    GradientOracle, GradientOracleReport, SurrogateOracle, SurrogateReport,
};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::rng::{normal_vector, sample_sphere};
use crate::vector::Vector;

/// Exact facts about an objective, fixed at construction.
#[derive(Clone, Debug)]
pub struct ObjectiveInfo {
    pub dim: usize,
    /// Gradient Lipschitz constant, when the objective is smooth.
    pub smoothness: Option<f64>,
    /// Strong convexity modulus, when positive.
    pub strong_convexity: Option<f64>,
    /// The exact minimizer.
    pub x_star: Vector,
    /// The exact minimum value.
    pub f_star: f64,
    /// A global bound on the (sub)gradient norm, when one exists.
    pub lipschitz: Option<f64>,
}

#[derive(Clone, Debug)]
enum Kind {
    /// `L(x) = 1/2 (x - x*)^T A (x - x*)` for symmetric PSD `A`.
    Quadratic { matrix: SymMatrix },
    /// Mean logistic loss over labeled rows.
    Logistic {
        features: Vec<Vector>,
        labels: Vec<f64>,
    },
    /// `L(x) = 1/d * sum_i |x_i - t_i|`; non-smooth, minimized at the targets.
    AbsDeviation { targets: Vector },
}

/// A synthetic convex objective with exact metadata.
#[derive(Clone, Debug)]
pub struct Objective {
    kind: Kind,
    info: ObjectiveInfo,
}

impl Objective {
    /// Quadratic with the given symmetric PSD matrix, minimized at `x_star`
    /// with minimum value 0. `l_max`/`mu_min` are the extreme eigenvalues and
    /// must be supplied exactly by the caller (the spectrum constructors do).
    fn quadratic_raw(matrix: SymMatrix, x_star: Vector, l_max: f64, mu_min: f64) -> Self {
        let dim = x_star.dim();
        Objective {
            info: ObjectiveInfo {
                dim,
                smoothness: Some(l_max),
                strong_convexity: if mu_min > 0.0 { Some(mu_min) } else { None },
                x_star,
                f_star: 0.0,
                lipschitz: None,
            },
            kind: Kind::Quadratic { matrix },
        }
    }

    /// Quadratic from an eigenvalue spectrum under a random rotation drawn
    /// from `rng`. The largest and smallest spectrum entries are exactly the
    /// smoothness and strong convexity constants.
    pub fn quadratic_from_spectrum(
        spectrum: &[f64],
        x_star: Vector,
        rng: &mut impl Rng,
    ) -> Result<Self> {
        validate_spectrum(spectrum, x_star.dim())?;
        let matrix = SymMatrix::from_spectrum_rotated(spectrum, rng);
        let l_max = spectrum.iter().cloned().fold(f64::MIN, f64::max);
        let mu_min = spectrum.iter().cloned().fold(f64::MAX, f64::min);
        Ok(Self::quadratic_raw(matrix, x_star, l_max, mu_min))
    }

    /// Axis-aligned quadratic (no rotation).
    pub fn quadratic_diag(diag: &[f64], x_star: Vector) -> Result<Self> {
        validate_spectrum(diag, x_star.dim())?;
        let matrix = SymMatrix::diagonal(diag);
        let l_max = diag.iter().cloned().fold(f64::MIN, f64::max);
        let mu_min = diag.iter().cloned().fold(f64::MAX, f64::min);
        Ok(Self::quadratic_raw(matrix, x_star, l_max, mu_min))
    }

    /// Mean logistic loss `1/n sum_i log(1 + exp(-y_i <a_i, x>))`.
    ///
    /// The minimizer is located by a damped Newton solve at construction;
    /// separable data (no finite minimizer) is rejected. Labels must be +-1.
    pub fn logistic(features: Vec<Vector>, labels: Vec<f64>) -> Result<Self> {
        logistic::build(features, labels)
    }

    /// Synthetic logistic instance with a known exact optimum: every random
    /// Gaussian row appears with both labels, so the minimizer is exactly the
    /// origin and the minimum value exactly `ln 2`.
    pub fn logistic_synthetic(dim: usize, pairs: usize, rng: &mut impl Rng) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        if pairs < dim {
            return Err(Error::invalid(format!(
                "need at least dim={dim} mirrored pairs for a unique minimizer, got {pairs}"
            )));
        }
        let mut features = Vec::with_capacity(2 * pairs);
        let mut labels = Vec::with_capacity(2 * pairs);
        for _ in 0..pairs {
            let row = normal_vector(rng, dim);
            features.push(row.clone());
            labels.push(1.0);
            features.push(row);
            labels.push(-1.0);
        }
        logistic::build_with_known_optimum(features, labels, Vector::zeros(dim), 2f64.ln())
    }

    /// Mean absolute deviation `1/d * sum_i |x_i - t_i|`.
    pub fn abs_deviation(targets: Vector) -> Self {
        let dim = targets.dim();
        Objective {
            info: ObjectiveInfo {
                dim,
                smoothness: None,
                strong_convexity: None,
                x_star: targets.clone(),
                f_star: 0.0,
                lipschitz: Some(1.0 / (dim as f64).sqrt()),
            },
            kind: Kind::AbsDeviation { targets },
        }
    }

    pub fn info(&self) -> &ObjectiveInfo {
        &self.info
    }

    pub fn dim(&self) -> usize {
        self.info.dim
    }

    pub fn x_star(&self) -> &Vector {
        &self.info.x_star
    }

    pub fn f_star(&self) -> f64 {
        self.info.f_star
    }

    fn check_dim(&self, x: &Vector) -> Result<()> {
        if x.dim() != self.info.dim {
            return Err(Error::DimensionMismatch {
                expected: self.info.dim,
                got: x.dim(),
            });
        }
        Ok(())
    }

    /// Exact loss value.
    pub fn value(&self, x: &Vector) -> Result<f64> {
        Ok(self.evaluate(x)?.0)
    }

    /// Exact (sub)gradient; at kinks of the absolute deviation the
    /// subgradient uses the convention `sign(0) = 0`.
    pub fn gradient(&self, x: &Vector) -> Result<Vector> {
        Ok(self.evaluate(x)?.1)
    }

    /// Exact value and (sub)gradient in one pass.
    pub fn evaluate(&self, x: &Vector) -> Result<(f64, Vector)> {
        self.check_dim(x)?;
        match &self.kind {
            Kind::Quadratic { matrix } => {
                let diff = x - &self.info.x_star;
                let grad = matrix.matvec(&diff);
                let value = 0.5 * diff.dot(&grad);
                Ok((value, grad))
            }
            Kind::Logistic { features, labels } => {
                Ok(logistic::evaluate(features, labels, x))
            }
            Kind::AbsDeviation { targets } => {
                let d = self.info.dim as f64;
                let mut value = 0.0;
                let mut grad = Vec::with_capacity(targets.dim());
                for (xi, ti) in x.coords().iter().zip(targets.coords()) {
                    let diff = xi - ti;
                    value += diff.abs() / d;
                    let sign = if diff == 0.0 { 0.0 } else { diff.signum() };
                    grad.push(sign / d);
                }
                Ok((value, Vector::new(grad)?))
            }
        }
    }

    /// `L(x) - L(x*)`, using the exact stored optimum.
    pub fn suboptimality(&self, x: &Vector) -> Result<f64> {
        Ok(self.value(x)? - self.info.f_star)
    }
}

fn validate_spectrum(spectrum: &[f64], dim: usize) -> Result<()> {
    if spectrum.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: spectrum.len(),
        });
    }
    if spectrum.iter().any(|l| !l.is_finite() || *l < 0.0) {
        return Err(Error::invalid(
            "spectrum entries must be finite and nonnegative",
        ));
    }
    if spectrum.iter().all(|l| *l == 0.0) {
        return Err(Error::invalid("spectrum must not be identically zero"));
    }
    Ok(())
}

/// Additive gradient noise models.
///
/// The scale convention is total: `sigma^2` bounds `E ||noise||^2`, not the
/// per-coordinate variance. Sphere noise has `||noise|| = sigma` exactly,
/// which is the model to use when an almost-sure gradient bound is required.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NoiseModel {
    None,
    Gaussian { sigma: f64 },
    Sphere { sigma: f64 },
}

impl NoiseModel {
    pub fn gaussian(sigma: f64) -> Result<Self> {
        validate_sigma(sigma)?;
        Ok(NoiseModel::Gaussian { sigma })
    }

    pub fn sphere(sigma: f64) -> Result<Self> {
        validate_sigma(sigma)?;
        Ok(NoiseModel::Sphere { sigma })
    }

    pub fn sigma(&self) -> f64 {
        match self {
            NoiseModel::None => 0.0,
            NoiseModel::Gaussian { sigma } | NoiseModel::Sphere { sigma } => *sigma,
        }
    }

    /// One mean-zero noise draw.
    pub fn draw(&self, dim: usize, rng: &mut impl Rng) -> Vector {
        match self {
            NoiseModel::None => Vector::zeros(dim),
            NoiseModel::Gaussian { sigma } => {
                // Covariance (sigma^2 / d) I, so E||noise||^2 = sigma^2.
                normal_vector(rng, dim).scaled(sigma / (dim as f64).sqrt())
            }
            NoiseModel::Sphere { sigma } => sample_sphere(rng, dim, *sigma),
        }
    }
}

fn validate_sigma(sigma: f64) -> Result<()> {
    if sigma < 0.0 || !sigma.is_finite() {
        return Err(Error::invalid(format!(
            "noise scale must be nonnegative and finite, got {sigma}"
        )));
    }
    Ok(())
}

/// One stochastic gradient: exact subgradient plus a fresh noise draw. The
/// report carries the exact value and exact gradient norm for logging.
pub fn stochastic_gradient(
    objective: &Objective,
    noise: &NoiseModel,
    x: &Vector,
    rng: &mut impl Rng,
) -> Result<GradientOracleReport> {
    let (value, mut grad) = objective.evaluate(x)?;
    let true_grad_norm = grad.norm();
    match noise {
        NoiseModel::None => {}
        _ => grad.add_scaled_mut(1.0, &noise.draw(x.dim(), rng)),
    }
    Ok(GradientOracleReport {
        grad,
        true_value: value,
        true_grad_norm,
    })
}

/// Almost-sure bound `G` on the oracle's gradient norm over a domain.
///
/// Exact loss gradients are bounded via the objective's structure (for a
/// quadratic, `l_max * max_dist(domain, x*)`); sphere noise adds exactly
/// `sigma`. Gaussian noise is unbounded and therefore rejected.
pub fn gradient_bound(
    objective: &Objective,
    domain: &Domain,
    noise: &NoiseModel,
) -> Result<f64> {
    if domain.dim() != objective.dim() {
        return Err(Error::DimensionMismatch {
            expected: objective.dim(),
            got: domain.dim(),
        });
    }
    let noise_part = match noise {
        NoiseModel::None => 0.0,
        NoiseModel::Sphere { sigma } => *sigma,
        NoiseModel::Gaussian { .. } => {
            return Err(Error::invalid(
                "gaussian noise admits no almost-sure gradient bound",
            ))
        }
    };
    let exact_part = match &objective.kind {
        Kind::Quadratic { .. } => {
            let l_max = objective
                .info
                .smoothness
                .expect("quadratics always store their smoothness");
            l_max * domain.farthest_distance(&objective.info.x_star)?
        }
        Kind::Logistic { .. } | Kind::AbsDeviation { .. } => objective
            .info
            .lipschitz
            .expect("globally Lipschitz objectives store their bound"),
    };
    Ok(exact_part + noise_part)
}

/// Bundles an objective, a noise model and a private RNG stream into the
/// oracle interface the conversions consume. `surrogate_mu` is the curvature
/// reported to surrogate-driven conversions (zero means linear losses).
pub struct ProblemOracle<'a, R: Rng> {
    objective: &'a Objective,
    noise: NoiseModel,
    rng: R,
    surrogate_mu: f64,
}

impl<'a, R: Rng> ProblemOracle<'a, R> {
    pub fn new(objective: &'a Objective, noise: NoiseModel, rng: R) -> Self {
        ProblemOracle {
            objective,
            noise,
            rng,
            surrogate_mu: 0.0,
        }
    }

    pub fn with_surrogate_mu(mut self, mu: f64) -> Self {
        self.surrogate_mu = mu;
        self
    }

    pub fn objective(&self) -> &Objective {
        self.objective
    }
}

impl<R: Rng> GradientOracle for ProblemOracle<'_, R> {
    fn query(&mut self, point: &Vector) -> GradientOracleReport {
        stochastic_gradient(self.objective, &self.noise, point, &mut self.rng)
            .expect("oracle queried at a point of mismatched dimension")
    }
}

impl<R: Rng> SurrogateOracle for ProblemOracle<'_, R> {
    fn query_surrogate(&mut self, point: &Vector) -> SurrogateReport {
        let report = self.query(point);
        SurrogateReport {
            grad: report.grad,
            mu: self.surrogate_mu,
            true_value: report.true_value,
            true_grad_norm: report.true_grad_norm,
        }
    }
}
