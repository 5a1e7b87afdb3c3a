//! Online-to-batch conversions.
//!
//! Each converter drives an [`OnlineLearner`](crate::learners::OnlineLearner)
//! and a stochastic gradient oracle for one round per `step` call. The family:
//!
//! * [`AnytimeConverter`]: plays the weighted running average of the
//!   learner's iterates and queries the oracle *there*, so every played point
//!   carries an excess-loss bound of `regret_t / alpha_{1:t}`.
//! * [`GeneralAnytimeConverter`]: same averaging, but the learner observes a
//!   quadratic surrogate loss instead of a linear one; with follow-the-leader
//!   this recovers the fast strongly convex rates.
//! * [`OptimisticConverter`]: additionally forwards last round's gradient as
//!   a hint, which on smooth losses shrinks the regret of an optimistic
//!   learner because averaged iterates move slowly.
//! * [`AcceleratedConverter`]: couples the learner sequence with an adaptive
//!   gradient-step sequence; with linear weights this accelerates on smooth
//!   losses while remaining safe on non-smooth ones.
//! * [`ClassicConverter`]: the traditional conversion (gradients at the
//!   learner's own iterates, average reported at the end), kept as the
//!   comparison baseline.

mod accelerated;
mod anytime;
mod classic;
mod general;
mod optimistic;

pub use accelerated::{AcceleratedConverter, StepSizeSums};
pub use anytime::AnytimeConverter;
pub use classic::ClassicConverter;
pub use general::GeneralAnytimeConverter;
pub use optimistic::OptimisticConverter;

use crate::vector::Vector;

/// What a stochastic gradient oracle returns for one query.
///
/// `grad` is the noisy subgradient the algorithms consume; the exact loss
/// value and exact gradient norm ride along for logging only and never enter
/// any update.
#[derive(Clone, Debug)]
pub struct GradientOracleReport {
    pub grad: Vector,
    pub true_value: f64,
    pub true_grad_norm: f64,
}

/// A stochastic gradient oracle: unbiased subgradients at the queried point.
pub trait GradientOracle {
    fn query(&mut self, point: &Vector) -> GradientOracleReport;
}

impl<F> GradientOracle for F
where
    F: FnMut(&Vector) -> GradientOracleReport,
{
    fn query(&mut self, point: &Vector) -> GradientOracleReport {
        self(point)
    }
}

/// Oracle for quadratic surrogate losses
/// `l_t(x) = <grad, x> + mu/2 * ||x - point||^2` anchored at the query point.
pub trait SurrogateOracle {
    fn query_surrogate(&mut self, point: &Vector) -> SurrogateReport;
}

#[derive(Clone, Debug)]
pub struct SurrogateReport {
    pub grad: Vector,
    pub mu: f64,
    pub true_value: f64,
    pub true_grad_norm: f64,
}

impl<F> SurrogateOracle for F
where
    F: FnMut(&Vector) -> SurrogateReport,
{
    fn query_surrogate(&mut self, point: &Vector) -> SurrogateReport {
        self(point)
    }
}

/// Everything one conversion round produced, for logging and tests.
#[derive(Clone, Debug)]
pub struct StepRecord {
    pub t: u64,
    pub alpha: f64,
    pub alpha_cum: f64,
    /// The point the oracle was queried at this round.
    pub play: Vector,
    /// The learner iterate `w_t` committed before the query.
    pub learner_iterate: Vector,
    /// Gradient-step point of the accelerated scheme, when applicable.
    pub gradient_step: Option<Vector>,
    /// Weighted running average of learner iterates (classic conversion).
    pub average: Option<Vector>,
    /// Step size of the accelerated scheme, when applicable.
    pub step_size: Option<f64>,
    pub report: GradientOracleReport,
}

/// Measured regret of the conversion's own played points at a comparator,
/// together with the factor by which the played regret can exceed the
/// learner's: `1 + log(alpha_{1:T} / alpha_1)`.
#[derive(Clone, Copy, Debug)]
pub struct RegretReport {
    pub measured_regret: f64,
    pub inflation_factor: f64,
}

pub(crate) fn inflation_factor(alpha_first: f64, alpha_cum: f64) -> f64 {
    1.0 + (alpha_cum / alpha_first).ln()
}
