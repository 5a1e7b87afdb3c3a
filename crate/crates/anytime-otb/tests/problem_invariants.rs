//! Analytic-gradient, self-bounding, and noise-model checks for the
//! synthetic objectives.

use anytime_otb::domain::Domain;
use anytime_otb::problems::{gradient_bound, stochastic_gradient, NoiseModel, Objective};
use anytime_otb::rng::{sample_ball, stream_rng};
use anytime_otb::vector::Vector;

fn smooth_objectives() -> Vec<(&'static str, Objective)> {
    let mut rng = stream_rng(40, 0);
    let quad = Objective::quadratic_from_spectrum(
        &[0.3, 0.7, 1.1, 1.9, 2.5, 4.0],
        Vector::constant(6, 0.25).unwrap(),
        &mut rng,
    )
    .unwrap();
    let logistic = Objective::logistic_synthetic(4, 20, &mut rng).unwrap();
    vec![("quadratic", quad), ("logistic", logistic)]
}

#[test]
fn central_differences_match_the_analytic_gradient() {
    let step = 1e-5;
    for (name, obj) in smooth_objectives() {
        let dim = obj.dim();
        let mut rng = stream_rng(41, 0);
        for trial in 0..100 {
            let x = sample_ball(&mut rng, dim, 2.0);
            let grad = obj.gradient(&x).unwrap();
            let mut fd = Vec::with_capacity(dim);
            for i in 0..dim {
                let mut hi = x.coords().to_vec();
                let mut lo = x.coords().to_vec();
                hi[i] += step;
                lo[i] -= step;
                let vh = obj.value(&Vector::new(hi).unwrap()).unwrap();
                let vl = obj.value(&Vector::new(lo).unwrap()).unwrap();
                fd.push((vh - vl) / (2.0 * step));
            }
            let fd = Vector::new(fd).unwrap();
            let err = fd.dist(&grad);
            let scale = grad.norm().max(1e-8);
            assert!(
                err <= 1e-6 * scale,
                "{name} trial {trial}: finite differences off by {err} at scale {scale}"
            );
        }
    }
}

#[test]
fn smooth_objectives_are_self_bounding() {
    // ||grad L(x)||^2 <= 2 L (L(x) - L(x*)) whenever the minimum is attained,
    // checked on 1000 random points per objective.
    for (name, obj) in smooth_objectives() {
        let l = obj.info().smoothness.unwrap();
        let dim = obj.dim();
        let mut rng = stream_rng(42, 0);
        for trial in 0..1000 {
            let x = sample_ball(&mut rng, dim, 3.0);
            let (value, grad) = obj.evaluate(&x).unwrap();
            let gap = value - obj.f_star();
            assert!(
                grad.norm_sq() <= 2.0 * l * gap + 1e-10,
                "{name} trial {trial}: ||g||^2 = {} vs 2L*gap = {}",
                grad.norm_sq(),
                2.0 * l * gap
            );
        }
    }
}

#[test]
fn sphere_noise_respects_the_almost_sure_bound() {
    let mut rng = stream_rng(43, 0);
    let obj = Objective::quadratic_from_spectrum(
        &[0.5, 1.0, 2.0],
        Vector::constant(3, 0.2).unwrap(),
        &mut rng,
    )
    .unwrap();
    let domain = Domain::ball(Vector::zeros(3), 1.5).unwrap();
    let noise = NoiseModel::sphere(0.75).unwrap();
    let g_bound = gradient_bound(&obj, &domain, &noise).unwrap();
    let mut noise_rng = stream_rng(43, 1);
    let mut point_rng = stream_rng(44, 0);
    for _ in 0..2000 {
        let x = domain
            .project(&sample_ball(&mut point_rng, 3, 1.5))
            .unwrap();
        let rep = stochastic_gradient(&obj, &noise, &x, &mut noise_rng).unwrap();
        assert!(
            rep.grad.norm() <= g_bound + 1e-12,
            "draw exceeded the almost-sure bound: {} > {g_bound}",
            rep.grad.norm()
        );
    }
}

#[test]
fn abs_deviation_subgradients_are_globally_bounded() {
    let obj = Objective::abs_deviation(Vector::constant(4, 0.5).unwrap());
    let g_max = obj.info().lipschitz.unwrap();
    let mut rng = stream_rng(45, 0);
    for _ in 0..500 {
        let x = sample_ball(&mut rng, 4, 5.0);
        let g = obj.gradient(&x).unwrap();
        assert!(g.norm() <= g_max + 1e-15);
    }
    // The bound is attained away from every kink.
    let far = Vector::constant(4, 9.0).unwrap();
    assert!((obj.gradient(&far).unwrap().norm() - g_max).abs() < 1e-15);
}
