//! The anytime conversion: play the average, query the oracle at the average.

use crate::conversions::{inflation_factor, GradientOracle, RegretReport, StepRecord};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::learners::{ObservationContext, OnlineLearner, RegretLedger};
use crate::schedule::{ScheduleCursor, WeightSchedule};
use crate::vector::{running_average_update, Vector};

/// Wraps an online learner so that the *played* sequence is the weighted
/// running average `x_t = sum_{i<=t} alpha_i w_i / alpha_{1:t}`.
///
/// Per round: commit `x_t`, query the oracle at `x_t`, and hand the learner
/// the linear loss with gradient `alpha_t * g_t`. Every `x_t` then satisfies
/// the excess-loss bound `regret_t(x*) / alpha_{1:t}` in expectation, and
/// pathwise when the oracle is deterministic.
pub struct AnytimeConverter<L> {
    learner: L,
    cursor: ScheduleCursor,
    average: Vector,
    alpha_first: f64,
    learner_ledger: RegretLedger,
    play_ledger: RegretLedger,
}

impl<L: OnlineLearner> AnytimeConverter<L> {
    pub fn new(mut learner: L, domain: &Domain, schedule: WeightSchedule) -> Result<Self> {
        learner.init(domain)?;
        let start = learner.current_iterate()?.clone();
        let dim = domain.dim();
        Ok(AnytimeConverter {
            learner,
            cursor: ScheduleCursor::new(schedule),
            average: start,
            alpha_first: schedule.weight(1)?,
            learner_ledger: RegretLedger::new(dim),
            play_ledger: RegretLedger::new(dim),
        })
    }

    /// Run one round against the oracle and return everything it produced.
    pub fn step(&mut self, oracle: &mut dyn GradientOracle) -> Result<StepRecord> {
        let (alpha, alpha_cum) = self.cursor.advance();
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

    /// Rounds completed.
    pub fn rounds(&self) -> u64 {
        self.cursor.t()
    }

    /// The current averaged play point (the solution estimate).
    pub fn current_estimate(&self) -> &Vector {
        &self.average
    }

    pub fn learner(&self) -> &L {
        &self.learner
    }

    /// Regret of the losses the *learner* received, at a comparator.
    pub fn learner_regret_against(&self, comparator: &Vector) -> f64 {
        self.learner_ledger.regret_against(comparator)
    }

    /// Regret of the played points `x_t` themselves, at a comparator.
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
