//! The anytime conversion with last-gradient hints.

use crate::conversions::{inflation_factor, GradientOracle, RegretReport, StepRecord};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::learners::{ObservationContext, OnlineLearner, RegretLedger};
use crate::schedule::{ScheduleCursor, WeightSchedule};
use crate::vector::{running_average_update, Vector};

/// Anytime conversion for optimistic learners.
///
/// Before each round the learner receives `alpha_t * g_{t-1}` as a hint
/// (`g_0 = 0`), then the round proceeds exactly like the plain anytime
/// conversion. Because consecutive averaged points are at most
/// `alpha_t * B / alpha_{1:t}` apart, consecutive gradients of a smooth loss
/// are close, the hints are accurate, and an optimistic learner's regret
/// collapses accordingly.
pub struct OptimisticConverter<L> {
    learner: L,
    cursor: ScheduleCursor,
    average: Vector,
    prev_grad: Vector,
    alpha_first: f64,
    learner_ledger: RegretLedger,
    play_ledger: RegretLedger,
}

impl<L: OnlineLearner> OptimisticConverter<L> {
    pub fn new(mut learner: L, domain: &Domain, schedule: WeightSchedule) -> Result<Self> {
        if !learner.supports_hints() {
            return Err(Error::Config(
                "the optimistic conversion needs a hint-accepting learner".to_string(),
            ));
        }
        learner.init(domain)?;
        let start = learner.current_iterate()?.clone();
        let dim = domain.dim();
        Ok(OptimisticConverter {
            learner,
            cursor: ScheduleCursor::new(schedule),
            average: start,
            prev_grad: Vector::zeros(dim),
            alpha_first: schedule.weight(1)?,
            learner_ledger: RegretLedger::new(dim),
            play_ledger: RegretLedger::new(dim),
        })
    }

    pub fn step(&mut self, oracle: &mut dyn GradientOracle) -> Result<StepRecord> {
        let (alpha, alpha_cum) = self.cursor.advance();
        let hint = self.prev_grad.scaled(alpha);
        self.learner.observe_hint(&hint)?;
        let w = self.learner.current_iterate()?.clone();
        let x = running_average_update(&self.average, &w, alpha, alpha_cum)?;
        let report = oracle.query(&x);
        if !report.grad.is_finite() {
            return Err(Error::Data(
                "oracle returned a non-finite gradient".to_string(),
            ));
        }
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
        self.prev_grad = report.grad.clone();
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
            report,
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

    pub fn learner_regret_against(&self, comparator: &Vector) -> f64 {
        self.learner_ledger.regret_against(comparator)
    }

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
