//! Empirical convergence-rate estimation on log-log trajectories.

use crate::error::{Error, Result};

/// Least-squares line through `(ln t, ln subopt)` over the tail of a run.
/// `slope` is the empirical `-p` of an `O(T^-p)` rate.
#[derive(Clone, Copy, Debug)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub tail_fraction: f64,
}

/// Fit the tail of a `(t, suboptimality)` series.
///
/// Points with nonpositive suboptimality are dropped (they have no log);
/// of the rest, the last `tail_fraction` are fitted. On a geometric logging
/// grid that window is also the last fraction of the run in `ln t`. Needs at
/// least 10 usable points.
pub fn fit_rate(series: &[(f64, f64)], tail_fraction: f64) -> Result<RateFit> {
    if !(tail_fraction > 0.0 && tail_fraction <= 1.0) {
        return Err(Error::invalid(format!(
            "tail fraction must lie in (0, 1], got {tail_fraction}"
        )));
    }
    let positive: Vec<(f64, f64)> = series
        .iter()
        .filter(|(t, s)| *t > 0.0 && *s > 0.0 && s.is_finite())
        .cloned()
        .collect();
    let keep = ((positive.len() as f64) * tail_fraction).ceil() as usize;
    let tail = &positive[positive.len().saturating_sub(keep)..];
    if tail.len() < 10 {
        return Err(Error::Analysis(format!(
            "rate fit needs at least 10 positive points in the tail window, got {}",
            tail.len()
        )));
    }

    let n = tail.len() as f64;
    let xs: Vec<f64> = tail.iter().map(|(t, _)| t.ln()).collect();
    let ys: Vec<f64> = tail.iter().map(|(_, s)| s.ln()).collect();
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
        syy += (y - mean_y) * (y - mean_y);
    }
    if sxx == 0.0 {
        return Err(Error::Analysis(
            "rate fit needs at least two distinct round indices".to_string(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(RateFit {
        slope,
        intercept,
        r_squared,
        tail_fraction,
    })
}
