//! Online learners and their regret accounting.
//!
//! A learner commits to an iterate, then observes the (weighted) loss for the
//! round; its quality is measured by regret against any fixed comparator. The
//! conversions in this crate treat learners as black boxes through the
//! [`OnlineLearner`] trait: they feed weighted gradients (plus an optional
//! hint ahead of each round, for optimistic learners) and read iterates back.
//!
//! Three learners cover the regret bounds the conversions rely on:
//!
//! * [`AdaptiveOgd`]: projected gradient steps with the adaptive step size
//!   `B / sqrt(2 * sum ||g||^2)`, giving regret at most `B sqrt(2 sum ||g||^2)`.
//! * [`OptimisticOgd`]: a two-point variant whose regret scales with the
//!   hint error, `B sqrt(2 sum ||g - h||^2)`.
//! * [`WeightedFtlStronglyConvex`]: exact follow-the-leader on quadratic
//!   surrogate losses, for strongly convex objectives.

mod adaptive_ogd;
mod ftl;
mod optimistic_ogd;

pub use adaptive_ogd::AdaptiveOgd;
pub use ftl::WeightedFtlStronglyConvex;
pub use optimistic_ogd::OptimisticOgd;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::vector::Vector;

/// Side information delivered along with each weighted gradient.
///
/// `play_point` is where the gradient was taken. `mu` is the curvature of the
/// quadratic surrogate loss around `play_point`; it is zero when the loss is
/// plain linear.
#[derive(Debug)]
pub struct ObservationContext<'a> {
    pub alpha: f64,
    pub play_point: &'a Vector,
    pub mu: f64,
}

/// A stateful regret-minimizing algorithm over a convex domain.
///
/// Protocol per round `t`: optionally `observe_hint`, then the caller reads
/// `current_iterate()` (this commits `w_t`), then `observe_gradient` delivers
/// the weighted loss gradient. Iterates always lie in the domain, and they
/// depend only on the losses and hints of earlier rounds.
pub trait OnlineLearner {
    /// Bind the learner to its feasible set and reset all state.
    fn init(&mut self, domain: &Domain) -> Result<()>;

    /// The iterate the learner currently commits to.
    fn current_iterate(&self) -> Result<&Vector>;

    fn supports_hints(&self) -> bool {
        false
    }

    /// Deliver the hint for the upcoming round, ahead of its gradient.
    fn observe_hint(&mut self, hint: &Vector) -> Result<()> {
        let _ = hint;
        Err(Error::Config(
            "this learner does not accept hints".to_string(),
        ))
    }

    /// Deliver the weighted gradient for the round just played.
    fn observe_gradient(&mut self, weighted_grad: &Vector, ctx: &ObservationContext<'_>)
        -> Result<()>;
}

fn uninitialized() -> Error {
    Error::State("learner used before init".to_string())
}

/// Running sums that make regret against any comparator computable after the
/// fact, without replaying the loss sequence.
///
/// For linear losses it tracks `sum <g~_t, w_t>` and `sum g~_t`; quadratic
/// surrogate terms add the moments needed to evaluate
/// `sum alpha_t * mu/2 * ||u - x_t||^2` at an arbitrary comparator `u`.
#[derive(Clone, Debug)]
pub struct RegretLedger {
    played_loss: f64,
    grad_sum: Vector,
    quad_weight: f64,
    quad_center: Vector,
    quad_center_sq: f64,
    rounds: u64,
}

impl RegretLedger {
    pub fn new(dim: usize) -> Self {
        RegretLedger {
            played_loss: 0.0,
            grad_sum: Vector::zeros(dim),
            quad_weight: 0.0,
            quad_center: Vector::zeros(dim),
            quad_center_sq: 0.0,
            rounds: 0,
        }
    }

    /// Record a linear loss `x -> <weighted_grad, x>` played at `play`.
    pub fn observe_linear(&mut self, play: &Vector, weighted_grad: &Vector) {
        self.played_loss += weighted_grad.dot(play);
        self.grad_sum.add_scaled_mut(1.0, weighted_grad);
        self.rounds += 1;
    }

    /// Record a surrogate loss `x -> <weighted_grad, x> + alpha*mu/2 ||x - center||^2`
    /// played at `play`.
    pub fn observe_quadratic(
        &mut self,
        play: &Vector,
        weighted_grad: &Vector,
        alpha: f64,
        mu: f64,
        center: &Vector,
    ) {
        let am = alpha * mu;
        let d = play.dist(center);
        self.played_loss += weighted_grad.dot(play) + 0.5 * am * d * d;
        self.grad_sum.add_scaled_mut(1.0, weighted_grad);
        self.quad_weight += am;
        self.quad_center.add_scaled_mut(am, center);
        self.quad_center_sq += am * center.norm_sq();
        self.rounds += 1;
    }

    /// Cumulative loss the recorded plays incurred, minus the cumulative loss
    /// the fixed comparator would have incurred.
    pub fn regret_against(&self, comparator: &Vector) -> f64 {
        let linear = self.grad_sum.dot(comparator);
        let quad = 0.5 * self.quad_weight * comparator.norm_sq()
            - self.quad_center.dot(comparator)
            + 0.5 * self.quad_center_sq;
        self.played_loss - (linear + quad)
    }

    pub fn rounds(&self) -> u64 {
        self.rounds
    }

    pub fn grad_sum(&self) -> &Vector {
        &self.grad_sum
    }

    /// `sum_t loss_t(w_t)` over the recorded rounds.
    pub fn played_loss(&self) -> f64 {
        self.played_loss
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(coords: &[f64]) -> Vector {
        Vector::from_slice(coords).unwrap()
    }

    #[test]
    fn linear_ledger_matches_direct_sum() {
        let mut ledger = RegretLedger::new(2);
        let plays = [v(&[1.0, 0.0]), v(&[0.5, -0.5]), v(&[0.0, 1.0])];
        let grads = [v(&[1.0, 2.0]), v(&[-1.0, 0.5]), v(&[0.25, 0.25])];
        for (w, g) in plays.iter().zip(&grads) {
            ledger.observe_linear(w, g);
        }
        let u = v(&[0.3, 0.7]);
        let direct: f64 = plays
            .iter()
            .zip(&grads)
            .map(|(w, g)| g.dot(w) - g.dot(&u))
            .sum();
        assert!((ledger.regret_against(&u) - direct).abs() < 1e-12);
    }

    #[test]
    fn quadratic_ledger_matches_direct_sum() {
        let mut ledger = RegretLedger::new(2);
        let plays = [v(&[1.0, 0.0]), v(&[0.5, -0.5])];
        let grads = [v(&[1.0, 2.0]), v(&[-1.0, 0.5])];
        let centers = [v(&[0.1, 0.1]), v(&[-0.2, 0.4])];
        let alphas = [1.0, 2.0];
        let mu = 0.7;
        for i in 0..2 {
            ledger.observe_quadratic(&plays[i], &grads[i], alphas[i], mu, &centers[i]);
        }
        let u = v(&[0.3, 0.7]);
        let loss = |x: &Vector, i: usize| {
            grads[i].dot(x) + 0.5 * alphas[i] * mu * x.dist(&centers[i]).powi(2)
        };
        let direct: f64 = (0..2).map(|i| loss(&plays[i], i) - loss(&u, i)).sum();
        assert!((ledger.regret_against(&u) - direct).abs() < 1e-12);
    }
}
