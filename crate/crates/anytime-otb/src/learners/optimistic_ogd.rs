//! Optimistic projected gradient descent driven by per-round hints.

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::learners::{uninitialized, ObservationContext, OnlineLearner};
use crate::vector::Vector;

/// Two-point optimistic OGD.
///
/// The learner keeps a base point `z`. When the hint `h` for the upcoming
/// round arrives it commits to `w = project(z - eta * h)`; when the round's
/// gradient `g` arrives it moves the base, `z <- project(z - eta * g)`, after
/// folding `||g - h||^2` into the step-size sum. With
/// `eta_t = B / sqrt(2 * sum_{i<=t} ||g_i - h_i||^2)` the regret stays within
/// `B * sqrt(2 * sum ||g - h||^2)`: hints that predict the gradients well make
/// both the steps and the regret small.
///
/// While the error sum is still zero the finite step is undefined; the update
/// then takes the infinite-step limit `project(z - s*dir), s -> inf`, so a
/// run of perfect hints plays the support point of the hint direction and
/// collects zero regret.
#[derive(Clone, Debug, Default)]
pub struct OptimisticOgd {
    inner: Option<State>,
}

#[derive(Clone, Debug)]
struct State {
    domain: Domain,
    diameter: f64,
    base: Vector,
    iterate: Vector,
    hint_gap_sq: f64,
    pending_hint: Option<Vector>,
}

impl OptimisticOgd {
    pub fn new() -> Self {
        OptimisticOgd { inner: None }
    }

    /// `B * sqrt(2 * sum ||g - h||^2)` over the rounds observed so far.
    pub fn advertised_regret_bound(&self) -> Result<f64> {
        let state = self.inner.as_ref().ok_or_else(uninitialized)?;
        Ok(state.diameter * (2.0 * state.hint_gap_sq).sqrt())
    }
}

impl State {
    /// `project(point - eta * dir)` with the current adaptive step size, or
    /// its infinite-step limit while the error sum is still zero.
    fn stepped(&self, point: &Vector, dir: &Vector) -> Result<Vector> {
        if self.hint_gap_sq > 0.0 {
            let eta = self.diameter / (2.0 * self.hint_gap_sq).sqrt();
            self.domain
                .project(&Vector::lincomb(1.0, point, -eta, dir))
        } else {
            self.domain.ray_limit(point, dir)
        }
    }
}

impl OnlineLearner for OptimisticOgd {
    fn init(&mut self, domain: &Domain) -> Result<()> {
        self.inner = Some(State {
            diameter: domain.diameter(),
            base: domain.center(),
            iterate: domain.center(),
            domain: domain.clone(),
            hint_gap_sq: 0.0,
            pending_hint: None,
        });
        Ok(())
    }

    fn current_iterate(&self) -> Result<&Vector> {
        Ok(&self.inner.as_ref().ok_or_else(uninitialized)?.iterate)
    }

    fn supports_hints(&self) -> bool {
        true
    }

    fn observe_hint(&mut self, hint: &Vector) -> Result<()> {
        let state = self.inner.as_mut().ok_or_else(uninitialized)?;
        if hint.dim() != state.domain.dim() {
            return Err(Error::DimensionMismatch {
                expected: state.domain.dim(),
                got: hint.dim(),
            });
        }
        if state.pending_hint.is_some() {
            return Err(Error::ProtocolOrder(
                "second hint before the round's gradient".to_string(),
            ));
        }
        state.iterate = state.stepped(&state.base, hint)?;
        state.pending_hint = Some(hint.clone());
        Ok(())
    }

    fn observe_gradient(
        &mut self,
        weighted_grad: &Vector,
        _ctx: &ObservationContext<'_>,
    ) -> Result<()> {
        let state = self.inner.as_mut().ok_or_else(uninitialized)?;
        if weighted_grad.dim() != state.domain.dim() {
            return Err(Error::DimensionMismatch {
                expected: state.domain.dim(),
                got: weighted_grad.dim(),
            });
        }
        let hint = state.pending_hint.take().ok_or_else(|| {
            Error::ProtocolOrder("gradient delivered before the round's hint".to_string())
        })?;
        let gap = weighted_grad - &hint;
        state.hint_gap_sq += gap.norm_sq();
        state.base = state.stepped(&state.base, weighted_grad)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ball(dim: usize, radius: f64) -> Domain {
        Domain::ball(Vector::zeros(dim), radius).unwrap()
    }

    fn ctx(x: &Vector) -> ObservationContext<'_> {
        ObservationContext {
            alpha: 1.0,
            play_point: x,
            mu: 0.0,
        }
    }

    #[test]
    fn gradient_before_hint_is_a_protocol_error() {
        let mut learner = OptimisticOgd::new();
        learner.init(&ball(2, 1.0)).unwrap();
        let g = Vector::from_slice(&[1.0, 0.0]).unwrap();
        assert!(matches!(
            learner.observe_gradient(&g, &ctx(&Vector::zeros(2))),
            Err(Error::ProtocolOrder(_))
        ));
    }

    #[test]
    fn perfect_hints_jump_to_the_support_point_and_stay() {
        // Constant gradient g, hints equal to it: the first hint moves the
        // iterate to argmin <g, .> over the ball and nothing moves after.
        let mut learner = OptimisticOgd::new();
        learner.init(&ball(2, 1.0)).unwrap();
        let g = Vector::from_slice(&[3.0, 4.0]).unwrap();
        let x = Vector::zeros(2);
        let expected = Vector::from_slice(&[-0.6, -0.8]).unwrap();
        for _ in 0..5 {
            learner.observe_hint(&g).unwrap();
            let w = learner.current_iterate().unwrap();
            assert!(w.dist(&expected) < 1e-12);
            learner.observe_gradient(&g, &ctx(&x)).unwrap();
        }
    }

    #[test]
    fn zero_hints_reproduce_adaptive_ogd() {
        use crate::learners::AdaptiveOgd;
        let domain = ball(3, 2.0);
        let mut opt = OptimisticOgd::new();
        let mut ogd = AdaptiveOgd::new();
        opt.init(&domain).unwrap();
        ogd.init(&domain).unwrap();
        let zero = Vector::zeros(3);
        let grads = [
            Vector::from_slice(&[1.0, -0.5, 0.25]).unwrap(),
            Vector::from_slice(&[-2.0, 0.5, 1.0]).unwrap(),
            Vector::from_slice(&[0.1, 0.2, -0.3]).unwrap(),
        ];
        for g in &grads {
            opt.observe_hint(&zero).unwrap();
            // With a zero hint the exposed iterate equals the base point,
            // which evolves exactly like plain adaptive OGD.
            assert!(opt
                .current_iterate()
                .unwrap()
                .dist(ogd.current_iterate().unwrap())
                < 1e-14);
            opt.observe_gradient(g, &ctx(&zero)).unwrap();
            ogd.observe_gradient(g, &ctx(&zero)).unwrap();
        }
    }
}
