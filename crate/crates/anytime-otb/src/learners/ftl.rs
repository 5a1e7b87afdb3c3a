//! Follow-the-leader over weighted quadratic surrogate losses.

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::learners::{uninitialized, ObservationContext, OnlineLearner};
use crate::vector::Vector;

/// Exact follow-the-leader for losses of the form
/// `alpha_t * (<g_t, x> + mu/2 * ||x - x_t||^2)` with a fixed modulus `mu > 0`.
///
/// The weighted sum of these losses is a scaled squared distance from
/// `u / (mu * A)` where `A = sum alpha_t` and `u = sum alpha_t (mu x_t - g_t)`,
/// so its constrained minimizer is the projection of that point. The learner
/// therefore maintains only `(A, u)` and commits to the exact leader in O(d)
/// per round.
#[derive(Clone, Debug, Default)]
pub struct WeightedFtlStronglyConvex {
    inner: Option<State>,
}

#[derive(Clone, Debug)]
struct State {
    domain: Domain,
    iterate: Vector,
    weight_sum: f64,
    pull: Vector,
    mu: Option<f64>,
}

impl WeightedFtlStronglyConvex {
    pub fn new() -> Self {
        WeightedFtlStronglyConvex { inner: None }
    }
}

impl OnlineLearner for WeightedFtlStronglyConvex {
    fn init(&mut self, domain: &Domain) -> Result<()> {
        self.inner = Some(State {
            iterate: domain.center(),
            pull: Vector::zeros(domain.dim()),
            domain: domain.clone(),
            weight_sum: 0.0,
            mu: None,
        });
        Ok(())
    }

    fn current_iterate(&self) -> Result<&Vector> {
        Ok(&self.inner.as_ref().ok_or_else(uninitialized)?.iterate)
    }

    fn observe_gradient(
        &mut self,
        weighted_grad: &Vector,
        ctx: &ObservationContext<'_>,
    ) -> Result<()> {
        let state = self.inner.as_mut().ok_or_else(uninitialized)?;
        if weighted_grad.dim() != state.domain.dim() {
            return Err(Error::DimensionMismatch {
                expected: state.domain.dim(),
                got: weighted_grad.dim(),
            });
        }
        if ctx.mu <= 0.0 || !ctx.mu.is_finite() {
            return Err(Error::invalid(format!(
                "follow-the-leader needs a positive surrogate modulus, got {}",
                ctx.mu
            )));
        }
        match state.mu {
            None => state.mu = Some(ctx.mu),
            Some(mu) if mu == ctx.mu => {}
            Some(mu) => {
                return Err(Error::invalid(format!(
                    "surrogate modulus changed from {mu} to {} mid-run",
                    ctx.mu
                )))
            }
        }
        state.weight_sum += ctx.alpha;
        // u += alpha * (mu * x_t - g_t); the weighted gradient already carries alpha.
        state.pull.add_scaled_mut(ctx.alpha * ctx.mu, ctx.play_point);
        state.pull.add_scaled_mut(-1.0, weighted_grad);
        let unconstrained = state.pull.scaled(1.0 / (ctx.mu * state.weight_sum));
        state.iterate = state.domain.project(&unconstrained)?;
        Ok(())
    }
}
