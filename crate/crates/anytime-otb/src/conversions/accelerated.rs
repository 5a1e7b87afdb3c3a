//! Adaptive acceleration via coupling with a gradient-step sequence.

use crate::conversions::{inflation_factor, GradientOracle, RegretReport, StepRecord};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::learners::{ObservationContext, OnlineLearner, RegretLedger};
use crate::vector::Vector;

/// Accelerated conversion with linear weights `alpha_t = t`.
///
/// Each round couples the learner iterate with a gradient-step point:
/// `x_t = (1 - tau_t) y_{t-1} + tau_t w_t` with `tau_t = alpha_t / alpha_{1:t}`,
/// the oracle is queried at `x_t`, and
/// `y_t = x_t - eta_t g_t` with `eta_t = c B / sqrt(1 + sum beta_i ||g_i||^2)`
/// where `beta_i = alpha_{1:i}`. The learner lives on the centered ball of
/// radius `B/2`; `y_t` is *not* projected, so the loss must be defined on the
/// whole space. `y_t` is the output the guarantee covers, and the step sizes
/// adapt to smoothness and gradient variance without knowing either.
pub struct AcceleratedConverter<L> {
    learner: L,
    t: u64,
    y: Vector,
    bound_b: f64,
    c: f64,
    gradient_mass: f64,
    weighted_eta: f64,
    weighted_eta_sq: f64,
    learner_ledger: RegretLedger,
    play_ledger: RegretLedger,
}

/// Running sums over `beta_t ||g_t||^2` that the adaptive step sizes keep
/// bounded: `sum beta ||g||^2 eta <= 2cB sqrt(1 + sum beta ||g||^2)` and
/// `sum beta ||g||^2 eta^2 <= c^2 B^2 log(1 + sum beta ||g||^2)`.
#[derive(Clone, Copy, Debug)]
pub struct StepSizeSums {
    pub gradient_mass: f64,
    pub weighted_eta: f64,
    pub weighted_eta_sq: f64,
}

impl<L: OnlineLearner> AcceleratedConverter<L> {
    /// `bound_b` must satisfy `||x*|| <= bound_b / 2`; the learner's domain is
    /// the centered ball of radius `bound_b / 2`. `c` defaults to 2 in the
    /// harness; it scales the gradient steps.
    pub fn new(mut learner: L, dim: usize, bound_b: f64, c: f64) -> Result<Self> {
        if bound_b <= 0.0 || !bound_b.is_finite() {
            return Err(Error::invalid(format!(
                "the norm bound must be positive and finite, got {bound_b}"
            )));
        }
        if c <= 0.0 || !c.is_finite() {
            return Err(Error::invalid(format!(
                "the step-size constant must be positive and finite, got {c}"
            )));
        }
        let domain = Domain::ball(Vector::zeros(dim), bound_b / 2.0)?;
        learner.init(&domain)?;
        let y = learner.current_iterate()?.clone();
        Ok(AcceleratedConverter {
            learner,
            t: 0,
            y,
            bound_b,
            c,
            gradient_mass: 0.0,
            weighted_eta: 0.0,
            weighted_eta_sq: 0.0,
            learner_ledger: RegretLedger::new(dim),
            play_ledger: RegretLedger::new(dim),
        })
    }

    pub fn step(&mut self, oracle: &mut dyn GradientOracle) -> Result<StepRecord> {
        self.t += 1;
        let alpha = self.t as f64;
        let alpha_cum = alpha * (alpha + 1.0) / 2.0;
        let tau = alpha / alpha_cum;
        let w = self.learner.current_iterate()?.clone();
        let x = Vector::lincomb(1.0 - tau, &self.y, tau, &w);
        let report = oracle.query(&x);
        if !report.grad.is_finite() {
            return Err(Error::Data(
                "oracle returned a non-finite gradient".to_string(),
            ));
        }
        let grad_sq = report.grad.norm_sq();
        self.gradient_mass += alpha_cum * grad_sq;
        let eta = self.c * self.bound_b / (1.0 + self.gradient_mass).sqrt();
        self.weighted_eta += alpha_cum * grad_sq * eta;
        self.weighted_eta_sq += alpha_cum * grad_sq * eta * eta;
        self.y = Vector::lincomb(1.0, &x, -eta, &report.grad);
        let weighted = report.grad.scaled(alpha);
        self.learner_ledger.observe_linear(&w, &weighted);
        self.play_ledger.observe_linear(&x, &weighted);
        self.learner.observe_gradient(
            &weighted,
            &ObservationContext {
                alpha,
                play_point: &x,
                mu: 0.0,
            },
        )?;
        Ok(StepRecord {
            t: self.t,
            alpha,
            alpha_cum,
            play: x,
            learner_iterate: w,
            gradient_step: Some(self.y.clone()),
            average: None,
            step_size: Some(eta),
            report,
        })
    }

    pub fn rounds(&self) -> u64 {
        self.t
    }

    /// The gradient-step point `y_t`: the designated output.
    pub fn current_estimate(&self) -> &Vector {
        &self.y
    }

    pub fn learner(&self) -> &L {
        &self.learner
    }

    pub fn step_size_sums(&self) -> StepSizeSums {
        StepSizeSums {
            gradient_mass: self.gradient_mass,
            weighted_eta: self.weighted_eta,
            weighted_eta_sq: self.weighted_eta_sq,
        }
    }

    pub fn bound_b(&self) -> f64 {
        self.bound_b
    }

    pub fn step_constant(&self) -> f64 {
        self.c
    }

    pub fn learner_regret_against(&self, comparator: &Vector) -> f64 {
        self.learner_ledger.regret_against(comparator)
    }

    pub fn play_regret_against(&self, comparator: &Vector) -> f64 {
        self.play_ledger.regret_against(comparator)
    }

    pub fn regret_report(&self, comparator: &Vector) -> Result<RegretReport> {
        if self.t == 0 {
            return Err(Error::Analysis("no rounds have been played".to_string()));
        }
        let alpha_cum = (self.t as f64) * (self.t as f64 + 1.0) / 2.0;
        Ok(RegretReport {
            measured_regret: self.play_regret_against(comparator),
            inflation_factor: inflation_factor(1.0, alpha_cum),
        })
    }
}
