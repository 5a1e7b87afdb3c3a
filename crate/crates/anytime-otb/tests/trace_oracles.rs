//! Scripted step-by-step traces of every conversion, written directly from
//! the update recursions in plain scalar arithmetic, independent of the
//! library's internals. Each trace replays the coupled dynamics (averaging,
//! step sizes, projections) and the library run must match it round for
//! round.

use anytime_otb::conversions::{
    AcceleratedConverter, AnytimeConverter, ClassicConverter, GradientOracleReport,
    OptimisticConverter,
};
use anytime_otb::domain::Domain;
use anytime_otb::learners::{AdaptiveOgd, OptimisticOgd};
use anytime_otb::schedule::WeightSchedule;
use anytime_otb::vector::Vector;

const TOL: f64 = 1e-12;

fn unit_interval() -> Domain {
    // [-1, 1] as a 1-d ball: diameter 2.
    Domain::ball(Vector::zeros(1), 1.0).unwrap()
}

fn scalar(v: f64) -> Vector {
    Vector::from_slice(&[v]).unwrap()
}

/// 1-d quadratic x^2/2: gradient x, exact value x^2/2.
fn quadratic_oracle() -> impl FnMut(&Vector) -> GradientOracleReport {
    |x: &Vector| {
        let v = x.coords()[0];
        GradientOracleReport {
            grad: scalar(v),
            true_value: 0.5 * v * v,
            true_grad_norm: v.abs(),
        }
    }
}


/// 1-d quadratic (x - 1/2)^2 / 2: minimum away from the start iterate.
fn shifted_quadratic_oracle() -> impl FnMut(&Vector) -> GradientOracleReport {
    |x: &Vector| {
        let v = x.coords()[0] - 0.5;
        GradientOracleReport {
            grad: scalar(v),
            true_value: 0.5 * v * v,
            true_grad_norm: v.abs(),
        }
    }
}

fn clamp_unit(x: f64) -> f64 {
    x.clamp(-1.0, 1.0)
}

#[test]
fn anytime_matches_scripted_recursion() {
    // Script: w_1 = 1; per round t:
    //   x_t = ((A - a) x_{t-1} + a w_t) / A   with a = alpha_t, A = alpha_{1:t}
    //   g_t = x_t;  S += g_t^2 (weights are 1);  eta = 2 / sqrt(2 S)
    //   w_{t+1} = clamp(w_t - eta * g_t)
    let diameter = 2.0;
    let mut w = 1.0;
    let mut x = 0.0;
    let mut s = 0.0;
    let mut script: Vec<(f64, f64)> = Vec::new();
    for t in 1..=5u32 {
        let alpha = 1.0;
        let alpha_cum = t as f64;
        x = if t == 1 {
            w
        } else {
            ((alpha_cum - alpha) * x + alpha * w) / alpha_cum
        };
        let g = x;
        script.push((x, w));
        s += g * g;
        if s > 0.0 {
            let eta = diameter / (2.0 * s).sqrt();
            w = clamp_unit(w - eta * g);
        }
    }

    let mut conv = AnytimeConverter::new(
        AdaptiveOgd::with_start(scalar(1.0)),
        &unit_interval(),
        WeightSchedule::Constant,
    )
    .unwrap();
    let mut oracle = quadratic_oracle();
    for (t, (sx, sw)) in script.iter().enumerate() {
        let rec = conv.step(&mut oracle).unwrap();
        assert!(
            (rec.play.coords()[0] - sx).abs() < TOL,
            "round {}: x {} vs scripted {}",
            t + 1,
            rec.play.coords()[0],
            sx
        );
        assert!(
            (rec.learner_iterate.coords()[0] - sw).abs() < TOL,
            "round {}: w {} vs scripted {}",
            t + 1,
            rec.learner_iterate.coords()[0],
            sw
        );
    }
}

#[test]
fn classic_matches_scripted_recursion() {
    // Script: gradients at w_t itself; avg_t is the running mean of the w's.
    let diameter = 2.0;
    let mut w = 0.0; // starts at the domain center
    let mut s = 0.0;
    let mut script: Vec<(f64, f64)> = Vec::new();
    let mut wsum = 0.0;
    for t in 1..=5u32 {
        let g = 0.5 * w + 0.25; // linear-loss gradient field, kept inside [-1,1]
        wsum += w;
        let avg = wsum / t as f64;
        script.push((w, avg));
        s += g * g;
        if s > 0.0 {
            let eta = diameter / (2.0 * s).sqrt();
            w = clamp_unit(w - eta * g);
        }
    }

    let mut conv = ClassicConverter::new(
        AdaptiveOgd::new(),
        &unit_interval(),
        WeightSchedule::Constant,
    )
    .unwrap();
    let mut oracle = |x: &Vector| {
        let v = x.coords()[0];
        GradientOracleReport {
            grad: scalar(0.5 * v + 0.25),
            true_value: 0.0,
            true_grad_norm: (0.5 * v + 0.25).abs(),
        }
    };
    for (t, (sw, savg)) in script.iter().enumerate() {
        let rec = conv.step(&mut oracle).unwrap();
        assert!(
            (rec.play.coords()[0] - sw).abs() < TOL,
            "round {}: w mismatch",
            t + 1
        );
        assert!(
            (rec.average.as_ref().unwrap().coords()[0] - savg).abs() < TOL,
            "round {}: average mismatch",
            t + 1
        );
    }
}

#[test]
fn optimistic_matches_scripted_recursion() {
    // Script of the hinted conversion with linear weights on (x - 1/2)^2/2
    // over [-1, 1], including the two-level learner: before round t the learner
    // sees hint a_t * g_{t-1} (g_0 = 0) and commits w_t = clamp(z - eta * h);
    // after the gradient it moves z with the refreshed step size.
    let diameter = 2.0;
    let mut z: f64 = 0.0;
    #[allow(unused_assignments)]
    let mut w: f64 = 0.0;
    let mut s: f64 = 0.0; // sum of squared hint errors
    let mut prev_g = 0.0;
    let mut x = 0.0;
    let mut script: Vec<(f64, f64)> = Vec::new();
    for t in 1..=5u32 {
        let alpha = t as f64;
        let alpha_cum = alpha * (alpha + 1.0) / 2.0;
        let hint = alpha * prev_g;
        // commit w_t: zero-error sum means an unbounded step along the hint
        if s > 0.0 {
            let eta = diameter / (2.0 * s).sqrt();
            w = clamp_unit(z - eta * hint);
        } else if hint != 0.0 {
            w = if hint > 0.0 { -1.0 } else { 1.0 };
        } else {
            w = z;
        }
        x = if t == 1 {
            w
        } else {
            ((alpha_cum - alpha) * x + alpha * w) / alpha_cum
        };
        let g = x - 0.5;
        script.push((x, w));
        let weighted = alpha * g;
        s += (weighted - hint) * (weighted - hint);
        if s > 0.0 {
            let eta = diameter / (2.0 * s).sqrt();
            z = clamp_unit(z - eta * weighted);
        } else if weighted != 0.0 {
            z = if weighted > 0.0 { -1.0 } else { 1.0 };
        }
        prev_g = g;
    }

    let mut conv = OptimisticConverter::new(
        OptimisticOgd::new(),
        &unit_interval(),
        WeightSchedule::Linear,
    )
    .unwrap();
    let mut oracle = shifted_quadratic_oracle();
    for (t, (sx, sw)) in script.iter().enumerate() {
        let rec = conv.step(&mut oracle).unwrap();
        assert!(
            (rec.play.coords()[0] - sx).abs() < TOL,
            "round {}: x {} vs scripted {}",
            t + 1,
            rec.play.coords()[0],
            sx
        );
        assert!(
            (rec.learner_iterate.coords()[0] - sw).abs() < TOL,
            "round {}: w {} vs scripted {}",
            t + 1,
            rec.learner_iterate.coords()[0],
            sw
        );
    }
}

#[test]
fn accelerated_matches_scripted_recursion() {
    // Script of the coupled scheme on (x - 1/2)^2/2 with B = 2, c = 2: the
    // learner lives on [-1, 1] (radius B/2), y is never projected.
    let b = 2.0;
    let c = 2.0;
    let mut w = 0.0;
    let mut y = 0.0; // y_0 = w_1
    let mut s_eta = 0.0;
    let mut learner_s = 0.0;
    let mut script: Vec<(f64, f64, f64, f64)> = Vec::new();
    for t in 1..=5u32 {
        let alpha = t as f64;
        let alpha_cum = alpha * (alpha + 1.0) / 2.0;
        let tau = alpha / alpha_cum;
        let x = (1.0 - tau) * y + tau * w;
        let g = x - 0.5;
        s_eta += alpha_cum * g * g;
        let eta = c * b / (1.0 + s_eta).sqrt();
        y = x - eta * g;
        script.push((x, y, w, eta));
        let weighted = alpha * g;
        learner_s += weighted * weighted;
        if learner_s > 0.0 {
            let lr = b / (2.0 * learner_s).sqrt();
            w = clamp_unit(w - lr * weighted);
        }
    }

    let mut conv = AcceleratedConverter::new(AdaptiveOgd::new(), 1, b, c).unwrap();
    let mut oracle = shifted_quadratic_oracle();
    for (t, (sx, sy, sw, seta)) in script.iter().enumerate() {
        let rec = conv.step(&mut oracle).unwrap();
        assert!(
            (rec.play.coords()[0] - sx).abs() < TOL,
            "round {}: x {} vs scripted {}",
            t + 1,
            rec.play.coords()[0],
            sx
        );
        assert!(
            (rec.gradient_step.as_ref().unwrap().coords()[0] - sy).abs() < TOL,
            "round {}: y mismatch",
            t + 1
        );
        assert!(
            (rec.learner_iterate.coords()[0] - sw).abs() < TOL,
            "round {}: w mismatch",
            t + 1
        );
        assert!(
            (rec.step_size.unwrap() - seta).abs() < TOL,
            "round {}: eta mismatch",
            t + 1
        );
    }
}
