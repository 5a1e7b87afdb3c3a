//! Projected online gradient descent with an adaptive step size.

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::learners::{uninitialized, ObservationContext, OnlineLearner};
use crate::vector::Vector;

/// Projected OGD with step size `eta_t = B / sqrt(2 * S_t)` where `S_t` is the
/// running sum of squared observed gradient norms and `B` the domain diameter.
///
/// This particular constant makes the standard adaptive analysis give regret
/// at most `B * sqrt(2 * S_T)` against every comparator in the domain. Until
/// the first nonzero gradient the step is defined as zero.
#[derive(Clone, Debug, Default)]
pub struct AdaptiveOgd {
    start: Option<Vector>,
    inner: Option<State>,
}

#[derive(Clone, Debug)]
struct State {
    domain: Domain,
    diameter: f64,
    iterate: Vector,
    grad_sq_sum: f64,
}

impl AdaptiveOgd {
    pub fn new() -> Self {
        AdaptiveOgd {
            start: None,
            inner: None,
        }
    }

    /// Use a specific first iterate instead of the domain center. The point
    /// is projected into the domain at `init`.
    pub fn with_start(start: Vector) -> Self {
        AdaptiveOgd {
            start: Some(start),
            inner: None,
        }
    }

    /// `B * sqrt(2 * S_t)`: the regret bound the learner guarantees so far.
    pub fn advertised_regret_bound(&self) -> Result<f64> {
        let state = self.inner.as_ref().ok_or_else(uninitialized)?;
        Ok(state.diameter * (2.0 * state.grad_sq_sum).sqrt())
    }
}

impl OnlineLearner for AdaptiveOgd {
    fn init(&mut self, domain: &Domain) -> Result<()> {
        let iterate = match &self.start {
            Some(p) => domain.project(p)?,
            None => domain.center(),
        };
        self.inner = Some(State {
            diameter: domain.diameter(),
            iterate,
            domain: domain.clone(),
            grad_sq_sum: 0.0,
        });
        Ok(())
    }

    fn current_iterate(&self) -> Result<&Vector> {
        Ok(&self.inner.as_ref().ok_or_else(uninitialized)?.iterate)
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
        state.grad_sq_sum += weighted_grad.norm_sq();
        if state.grad_sq_sum > 0.0 {
            let eta = state.diameter / (2.0 * state.grad_sq_sum).sqrt();
            let candidate = Vector::lincomb(1.0, &state.iterate, -eta, weighted_grad);
            state.iterate = state.domain.project(&candidate)?;
        }
        Ok(())
    }
}
