//! The anytime conversion over arbitrary convex surrogate losses.

use crate::conversions::{
    inflation_factor, GradientOracleReport, RegretReport, StepRecord, SurrogateOracle,
};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::learners::{ObservationContext, OnlineLearner, RegretLedger};
use crate::schedule::{ScheduleCursor, WeightSchedule};
use crate::vector::{running_average_update, Vector};

/// Like [`AnytimeConverter`](crate::conversions::AnytimeConverter), but the
/// round-`t` loss handed to the learner is the weighted surrogate
/// `alpha_t * (<g_t, x> + mu/2 ||x - x_t||^2)` rather than its linearization.
///
/// Any surrogate that is convex and upper-bounds the excess loss pointwise in
/// expectation preserves the anytime guarantee; the quadratic form covers the
/// strongly convex case, and `mu = 0` degenerates exactly to the linear
/// conversion.
pub struct GeneralAnytimeConverter<L> {
    learner: L,
    cursor: ScheduleCursor,
    average: Vector,
    alpha_first: f64,
    learner_ledger: RegretLedger,
    play_ledger: RegretLedger,
}

impl<L: OnlineLearner> GeneralAnytimeConverter<L> {
    pub fn new(mut learner: L, domain: &Domain, schedule: WeightSchedule) -> Result<Self> {
        learner.init(domain)?;
        let start = learner.current_iterate()?.clone();
        let dim = domain.dim();
        Ok(GeneralAnytimeConverter {
            learner,
            cursor: ScheduleCursor::new(schedule),
            average: start,
            alpha_first: schedule.weight(1)?,
            learner_ledger: RegretLedger::new(dim),
            play_ledger: RegretLedger::new(dim),
        })
    }

    pub fn step(&mut self, oracle: &mut dyn SurrogateOracle) -> Result<StepRecord> {
        let (alpha, alpha_cum) = self.cursor.advance();
        let w = self.learner.current_iterate()?.clone();
        let x = running_average_update(&self.average, &w, alpha, alpha_cum)?;
        let surrogate = oracle.query_surrogate(&x);
        if !surrogate.grad.is_finite() {
            return Err(Error::Data(
                "oracle returned a non-finite gradient".to_string(),
            ));
        }
        if surrogate.mu < 0.0 || !surrogate.mu.is_finite() {
            return Err(Error::invalid(format!(
                "surrogate modulus must be nonnegative, got {}",
                surrogate.mu
            )));
        }
        let weighted = surrogate.grad.scaled(alpha);
        self.learner_ledger
            .observe_quadratic(&w, &weighted, alpha, surrogate.mu, &x);
        self.play_ledger.observe_linear(&x, &weighted);
        self.learner.observe_gradient(
            &weighted,
            &ObservationContext {
                alpha,
                play_point: &x,
                mu: surrogate.mu,
            },
        )?;
        self.average = x.clone();
        Ok(StepRecord {
            t: self.cursor.t(),
            alpha,
            alpha_cum,
            play: x,
            learner_iterate: w,
            gradient_step: None,
            average: None,
            step_size: None,
            report: GradientOracleReport {
                grad: surrogate.grad,
                true_value: surrogate.true_value,
                true_grad_norm: surrogate.true_grad_norm,
            },
        })
    }

    pub fn rounds(&self) -> u64 {
        self.cursor.t()
    }

    pub fn current_estimate(&self) -> &Vector {
        &self.average
    }

    pub fn learner(&self) -> &L {
        &self.learner
    }

    /// Regret of the surrogate losses the learner received, at a comparator.
    pub fn learner_regret_against(&self, comparator: &Vector) -> f64 {
        self.learner_ledger.regret_against(comparator)
    }

    /// Linearized regret of the played points themselves, at a comparator.
    pub fn play_regret_against(&self, comparator: &Vector) -> f64 {
        self.play_ledger.regret_against(comparator)
    }

    pub fn regret_report(&self, comparator: &Vector) -> Result<RegretReport> {
        if self.cursor.t() == 0 {
            return Err(Error::Analysis("no rounds have been played".to_string()));
        }
        Ok(RegretReport {
            measured_regret: self.play_regret_against(comparator),
            inflation_factor: inflation_factor(self.alpha_first, self.cursor.cumulative()),
        })
    }
}
