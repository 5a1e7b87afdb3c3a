//! Closed-form convergence and regret bounds, as pure plug-in evaluators.
//!
//! The experiment suites compare measured quantities against these values;
//! each function is a direct transcription of the corresponding guarantee.
//! All logarithms are natural.

use crate::error::{Error, Result};
use crate::schedule::WeightSchedule;

/// Excess-loss bound holding with probability `1 - delta` under an
/// almost-sure gradient bound `grad_bound` on a domain of diameter
/// `diameter`:
/// `(R + 2 B G sqrt(sum_t alpha_t^2 * ln(2/delta))) / alpha_{1:T}`,
/// where `R` bounds the learner's regret.
pub fn high_probability_excess_loss(
    regret: f64,
    diameter: f64,
    grad_bound: f64,
    schedule: WeightSchedule,
    rounds: u64,
    delta: f64,
) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::invalid(format!(
            "confidence level must lie in (0, 1), got {delta}"
        )));
    }
    if rounds == 0 {
        return Err(Error::invalid("need at least one round"));
    }
    let alpha_sq = schedule.cumulative_square(rounds);
    let alpha_cum = schedule.cumulative(rounds);
    let deviation = 2.0 * diameter * grad_bound * (alpha_sq * (2.0 / delta).ln()).sqrt();
    Ok((regret + deviation) / alpha_cum)
}

/// Mean excess loss of the strongly convex conversion with unit weights:
/// `(mu B + G)^2 (ln T + 1) / (2 mu T)`.
pub fn strongly_convex_log_rate(mu: f64, diameter: f64, grad_bound: f64, rounds: u64) -> f64 {
    let t = rounds as f64;
    let lip = mu * diameter + grad_bound;
    lip * lip * (t.ln() + 1.0) / (2.0 * mu * t)
}

/// Mean excess loss of the strongly convex conversion with linear weights
/// (the log factor is gone): `2 (mu B + G)^2 / (mu (T + 1))`.
pub fn strongly_convex_weighted_rate(
    mu: f64,
    diameter: f64,
    grad_bound: f64,
    rounds: u64,
) -> f64 {
    let t = rounds as f64;
    let lip = mu * diameter + grad_bound;
    2.0 * lip * lip / (mu * (t + 1.0))
}

/// Mean excess loss of the optimistic conversion on a smooth loss:
/// `4 sqrt(10) * (L B^2 / T^(3/2) + sigma B / sqrt(T))`.
pub fn optimistic_smooth_rate(smoothness: f64, diameter: f64, sigma: f64, rounds: u64) -> f64 {
    let t = rounds as f64;
    4.0 * 10f64.sqrt() * (smoothness * diameter * diameter / t.powf(1.5) + sigma * diameter / t.sqrt())
}

/// Mean excess loss of the accelerated conversion on a smooth loss:
/// `(4B + 8 L B^2 ln(1 + G^2 T^3)) / T^2 + 4 B sigma sqrt(ln(1 + G^2 T^3)) / sqrt(T)`.
pub fn accelerated_smooth_rate(
    bound_b: f64,
    smoothness: f64,
    grad_bound: f64,
    sigma: f64,
    rounds: u64,
) -> f64 {
    let t = rounds as f64;
    let log_term = (1.0 + grad_bound * grad_bound * t.powi(3)).ln();
    (4.0 * bound_b + 8.0 * smoothness * bound_b * bound_b * log_term) / (t * t)
        + 4.0 * bound_b * sigma * log_term.sqrt() / t.sqrt()
}

/// `1 + ln(alpha_{1:T} / alpha_1)`: the factor by which the conversion's own
/// regret can exceed the wrapped learner's.
pub fn regret_inflation_factor(schedule: WeightSchedule, rounds: u64) -> Result<f64> {
    if rounds == 0 {
        return Err(Error::invalid("need at least one round"));
    }
    let first = schedule.weight(1)?;
    Ok(1.0 + (schedule.cumulative(rounds) / first).ln())
}
