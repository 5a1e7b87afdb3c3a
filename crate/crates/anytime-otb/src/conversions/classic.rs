//! The classic conversion: gradients at the learner's iterates, average out.

use crate::conversions::{inflation_factor, GradientOracle, RegretReport, StepRecord};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::learners::{ObservationContext, OnlineLearner, RegretLedger};
use crate::schedule::{ScheduleCursor, WeightSchedule};
use crate::vector::{running_average_update, Vector};

/// The traditional online-to-batch baseline.
///
/// The oracle is queried at the learner's own iterate `w_t`; the weighted
/// average of the `w_t` is maintained as the output estimate. Only that
/// average carries a guarantee, the individual `w_t` do not.
pub struct ClassicConverter<L> {
    learner: L,
    cursor: ScheduleCursor,
    average: Vector,
    alpha_first: f64,
    learner_ledger: RegretLedger,
}

impl<L: OnlineLearner> ClassicConverter<L> {
    pub fn new(mut learner: L, domain: &Domain, schedule: WeightSchedule) -> Result<Self> {
        learner.init(domain)?;
        let start = learner.current_iterate()?.clone();
        let dim = domain.dim();
        Ok(ClassicConverter {
            learner,
            cursor: ScheduleCursor::new(schedule),
            average: start,
            alpha_first: schedule.weight(1)?,
            learner_ledger: RegretLedger::new(dim),
        })
    }

    pub fn step(&mut self, oracle: &mut dyn GradientOracle) -> Result<StepRecord> {
        let (alpha, alpha_cum) = self.cursor.advance();
        let w = self.learner.current_iterate()?.clone();
        let report = oracle.query(&w);
        if !report.grad.is_finite() {
            return Err(Error::Data(
                "oracle returned a non-finite gradient".to_string(),
            ));
        }
        let weighted = report.grad.scaled(alpha);
        self.learner_ledger.observe_linear(&w, &weighted);
        self.average = running_average_update(&self.average, &w, alpha, alpha_cum)?;
        self.learner.observe_gradient(
            &weighted,
            &ObservationContext {
                alpha,
                play_point: &w,
                mu: 0.0,
            },
        )?;
        Ok(StepRecord {
            t: self.cursor.t(),
            alpha,
            alpha_cum,
            play: w.clone(),
            learner_iterate: w,
            gradient_step: None,
            average: Some(self.average.clone()),
            step_size: None,
            report,
        })
    }

    pub fn rounds(&self) -> u64 {
        self.cursor.t()
    }

    /// The weighted average of the learner iterates: the output estimate.
    pub fn current_estimate(&self) -> &Vector {
        &self.average
    }

    pub fn learner(&self) -> &L {
        &self.learner
    }

    pub fn learner_regret_against(&self, comparator: &Vector) -> f64 {
        self.learner_ledger.regret_against(comparator)
    }

    /// For the classic conversion the played points are the learner iterates,
    /// so the play regret coincides with the learner regret.
    pub fn play_regret_against(&self, comparator: &Vector) -> f64 {
        self.learner_ledger.regret_against(comparator)
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
