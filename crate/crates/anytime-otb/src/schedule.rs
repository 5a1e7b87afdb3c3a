//! Per-round weight schedules and their cumulative sums.
//!
//! A schedule assigns a positive weight to every round `t >= 1`. Conversions
//! consume weights through a [`ScheduleCursor`], which maintains the running
//! cumulative sum in compensated arithmetic so that fast-growing polynomial
//! weights do not lose the low-order digits the averaging identity depends on.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WeightSchedule {
    /// `weight(t) = 1`.
    Constant,
    /// `weight(t) = t`.
    Linear,
    /// `weight(t) = t^k` for a fixed exponent `k > 0`.
    Polynomial { exponent: f64 },
}

impl WeightSchedule {
    pub fn polynomial(exponent: f64) -> Result<Self> {
        if exponent <= 0.0 || !exponent.is_finite() {
            return Err(Error::invalid(format!(
                "polynomial exponent must be positive and finite, got {exponent}"
            )));
        }
        Ok(WeightSchedule::Polynomial { exponent })
    }

    /// Weight of round `t >= 1`.
    pub fn weight(&self, t: u64) -> Result<f64> {
        if t == 0 {
            return Err(Error::invalid("round index starts at 1"));
        }
        Ok(match self {
            WeightSchedule::Constant => 1.0,
            WeightSchedule::Linear => t as f64,
            WeightSchedule::Polynomial { exponent } => (t as f64).powf(*exponent),
        })
    }

    /// Cumulative weight of the first `t` rounds, with the empty sum being 0.
    ///
    /// Closed forms are used where available; polynomial schedules fall back
    /// to the same compensated summation the cursor uses, so batch and
    /// incremental values agree bit for bit.
    pub fn cumulative(&self, t: u64) -> f64 {
        match self {
            WeightSchedule::Constant => t as f64,
            WeightSchedule::Linear => {
                let tf = t as f64;
                tf * (tf + 1.0) / 2.0
            }
            WeightSchedule::Polynomial { exponent } => {
                let mut sum = 0.0;
                let mut comp = 0.0;
                for i in 1..=t {
                    kahan_add(&mut sum, &mut comp, (i as f64).powf(*exponent));
                }
                sum
            }
        }
    }

    /// `sum_{i<=t} weight(i)^2`, needed by the high-probability bound.
    pub fn cumulative_square(&self, t: u64) -> f64 {
        match self {
            WeightSchedule::Constant => t as f64,
            WeightSchedule::Linear => {
                let tf = t as f64;
                tf * (tf + 1.0) * (2.0 * tf + 1.0) / 6.0
            }
            WeightSchedule::Polynomial { exponent } => {
                let mut sum = 0.0;
                let mut comp = 0.0;
                for i in 1..=t {
                    kahan_add(&mut sum, &mut comp, (i as f64).powf(2.0 * *exponent));
                }
                sum
            }
        }
    }
}

fn kahan_add(sum: &mut f64, comp: &mut f64, x: f64) {
    let y = x - *comp;
    let t = *sum + y;
    *comp = (t - *sum) - y;
    *sum = t;
}

/// Stateful one-pass iterator over a schedule: O(1) per round.
#[derive(Clone, Debug)]
pub struct ScheduleCursor {
    schedule: WeightSchedule,
    t: u64,
    sum: f64,
    comp: f64,
}

impl ScheduleCursor {
    pub fn new(schedule: WeightSchedule) -> Self {
        ScheduleCursor {
            schedule,
            t: 0,
            sum: 0.0,
            comp: 0.0,
        }
    }

    pub fn schedule(&self) -> WeightSchedule {
        self.schedule
    }

    /// Rounds consumed so far.
    pub fn t(&self) -> u64 {
        self.t
    }

    /// Cumulative weight of the rounds consumed so far.
    pub fn cumulative(&self) -> f64 {
        self.sum
    }

    /// Advance to the next round and return `(weight, cumulative)`.
    pub fn advance(&mut self) -> (f64, f64) {
        self.t += 1;
        let w = self
            .schedule
            .weight(self.t)
            .expect("round index is positive");
        match self.schedule {
            // Integer-valued sums stay exact; use the closed forms directly.
            WeightSchedule::Constant | WeightSchedule::Linear => {
                self.sum = self.schedule.cumulative(self.t);
            }
            WeightSchedule::Polynomial { .. } => {
                kahan_add(&mut self.sum, &mut self.comp, w);
            }
        }
        (w, self.sum)
    }
}
