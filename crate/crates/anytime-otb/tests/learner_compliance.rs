//! Regret-compliance and protocol tests for the three learners.
//!
//! The load-bearing property: over random loss sequences, the measured regret
//! against every comparator on a dense grid stays within each learner's
//! advertised closed-form bound.

use anytime_otb::domain::Domain;
use anytime_otb::learners::{
    AdaptiveOgd, ObservationContext, OnlineLearner, OptimisticOgd, RegretLedger,
    WeightedFtlStronglyConvex,
};
use anytime_otb::rng::{sample_ball, stream_rng};
use anytime_otb::vector::Vector;

const DIM: usize = 5;
const ROUNDS: usize = 200;
const SEQUENCES: u64 = 20;
const GRID: usize = 1000;
const SLACK: f64 = 1e-8;

fn domain() -> Domain {
    // Ball of radius 1: diameter B = 2.
    Domain::ball(Vector::zeros(DIM), 1.0).unwrap()
}

fn comparator_grid(seed: u64) -> Vec<Vector> {
    let mut rng = stream_rng(seed, 7);
    (0..GRID).map(|_| sample_ball(&mut rng, DIM, 1.0)).collect()
}

fn ctx(x: &Vector) -> ObservationContext<'_> {
    ObservationContext {
        alpha: 1.0,
        play_point: x,
        mu: 0.0,
    }
}

#[test]
fn adaptive_ogd_meets_its_advertised_bound() {
    let domain = domain();
    let grid = comparator_grid(1);
    let zero = Vector::zeros(DIM);
    for seq in 0..SEQUENCES {
        let mut rng = stream_rng(seq, 11);
        let mut learner = AdaptiveOgd::new();
        learner.init(&domain).unwrap();
        let mut ledger = RegretLedger::new(DIM);
        let mut grad_sq = 0.0;
        for _ in 0..ROUNDS {
            let g = sample_ball(&mut rng, DIM, 2.0);
            let w = learner.current_iterate().unwrap().clone();
            assert!(domain.contains(&w, 1e-12), "infeasible iterate");
            ledger.observe_linear(&w, &g);
            grad_sq += g.norm_sq();
            learner.observe_gradient(&g, &ctx(&zero)).unwrap();
        }
        let bound = domain.diameter() * (2.0 * grad_sq).sqrt();
        assert!(
            (learner.advertised_regret_bound().unwrap() - bound).abs() <= 1e-9 * bound,
            "advertised bound bookkeeping drifted"
        );
        for u in &grid {
            let regret = ledger.regret_against(u);
            assert!(
                regret <= bound + SLACK,
                "sequence {seq}: regret {regret} exceeds bound {bound}"
            );
        }
    }
}

#[test]
fn optimistic_ogd_meets_its_hint_error_bound() {
    let domain = domain();
    let grid = comparator_grid(2);
    let zero = Vector::zeros(DIM);
    for seq in 0..SEQUENCES {
        let mut rng = stream_rng(seq, 12);
        let mut learner = OptimisticOgd::new();
        learner.init(&domain).unwrap();
        let mut ledger = RegretLedger::new(DIM);
        let mut gap_sq = 0.0;
        let mut prev = Vector::zeros(DIM);
        for _ in 0..ROUNDS {
            // Hints are last round's gradient: the common optimistic choice.
            let hint = prev.clone();
            learner.observe_hint(&hint).unwrap();
            let w = learner.current_iterate().unwrap().clone();
            assert!(domain.contains(&w, 1e-12), "infeasible iterate");
            let g = sample_ball(&mut rng, DIM, 2.0);
            ledger.observe_linear(&w, &g);
            gap_sq += g.dist(&hint).powi(2);
            learner.observe_gradient(&g, &ctx(&zero)).unwrap();
            prev = g;
        }
        let bound = domain.diameter() * (2.0 * gap_sq).sqrt();
        for u in &grid {
            let regret = ledger.regret_against(u);
            assert!(
                regret <= bound + SLACK,
                "sequence {seq}: regret {regret} exceeds bound {bound}"
            );
        }
    }
}

#[test]
fn optimistic_ogd_with_zero_hints_reverts_to_the_adaptive_bound() {
    let domain = domain();
    let grid = comparator_grid(3);
    let zero = Vector::zeros(DIM);
    let mut rng = stream_rng(77, 12);
    let mut learner = OptimisticOgd::new();
    learner.init(&domain).unwrap();
    let mut ledger = RegretLedger::new(DIM);
    let mut grad_sq = 0.0;
    for _ in 0..ROUNDS {
        learner.observe_hint(&zero).unwrap();
        let w = learner.current_iterate().unwrap().clone();
        let g = sample_ball(&mut rng, DIM, 2.0);
        ledger.observe_linear(&w, &g);
        grad_sq += g.norm_sq();
        learner.observe_gradient(&g, &ctx(&zero)).unwrap();
    }
    let bound = domain.diameter() * (2.0 * grad_sq).sqrt();
    for u in &grid {
        assert!(ledger.regret_against(u) <= bound + SLACK);
    }
}

#[test]
fn perfect_hints_collect_no_regret_against_the_linear_minimizer() {
    // Constant gradient, hints equal to it: the hint-error sum stays zero and
    // the measured regret against the minimizer of <sum g, .> is nonpositive.
    let domain = domain();
    let g = Vector::from_slice(&[0.8, -0.3, 0.1, 0.5, -0.2]).unwrap();
    let zero = Vector::zeros(DIM);
    let mut learner = OptimisticOgd::new();
    learner.init(&domain).unwrap();
    let mut ledger = RegretLedger::new(DIM);
    for _ in 0..ROUNDS {
        learner.observe_hint(&g).unwrap();
        let w = learner.current_iterate().unwrap().clone();
        ledger.observe_linear(&w, &g);
        learner.observe_gradient(&g, &ctx(&zero)).unwrap();
    }
    let minimizer = domain.ray_limit(&domain.center(), &g).unwrap();
    let regret = ledger.regret_against(&minimizer);
    assert!(
        regret <= SLACK,
        "perfect hints should yield zero regret, got {regret}"
    );
}

fn ftl_bound_constant_weights(mu: f64, diameter: f64, grad_bound: f64, rounds: usize) -> f64 {
    let lip = mu * diameter + grad_bound;
    lip * lip * ((rounds as f64).ln() + 1.0) / (2.0 * mu)
}

fn ftl_bound_linear_weights(mu: f64, diameter: f64, grad_bound: f64, rounds: usize) -> f64 {
    let lip = mu * diameter + grad_bound;
    rounds as f64 * lip * lip / mu
}

fn run_ftl_sequence(
    seq: u64,
    mu: f64,
    grad_bound: f64,
    weights: impl Fn(usize) -> f64,
) -> (RegretLedger, Domain) {
    let domain = domain();
    let mut rng = stream_rng(seq, 13);
    let mut learner = WeightedFtlStronglyConvex::new();
    learner.init(&domain).unwrap();
    let mut ledger = RegretLedger::new(DIM);
    for t in 1..=ROUNDS {
        let alpha = weights(t);
        let x_t = sample_ball(&mut rng, DIM, 1.0);
        let g = sample_ball(&mut rng, DIM, grad_bound);
        let w = learner.current_iterate().unwrap().clone();
        assert!(domain.contains(&w, 1e-12), "infeasible iterate");
        let weighted = g.scaled(alpha);
        ledger.observe_quadratic(&w, &weighted, alpha, mu, &x_t);
        learner
            .observe_gradient(
                &weighted,
                &ObservationContext {
                    alpha,
                    play_point: &x_t,
                    mu,
                },
            )
            .unwrap();
    }
    (ledger, domain)
}

#[test]
fn ftl_meets_the_log_bound_with_unit_weights() {
    let mu = 0.8;
    let grad_bound = 1.5;
    let grid = comparator_grid(4);
    for seq in 0..SEQUENCES {
        let (ledger, domain) = run_ftl_sequence(seq, mu, grad_bound, |_| 1.0);
        let bound = ftl_bound_constant_weights(mu, domain.diameter(), grad_bound, ROUNDS);
        for u in &grid {
            let regret = ledger.regret_against(u);
            assert!(
                regret <= bound + SLACK,
                "sequence {seq}: surrogate regret {regret} exceeds {bound}"
            );
        }
    }
}

#[test]
fn ftl_meets_the_linear_weight_bound() {
    let mu = 0.8;
    let grad_bound = 1.5;
    let grid = comparator_grid(5);
    for seq in 0..SEQUENCES {
        let (ledger, domain) = run_ftl_sequence(seq, mu, grad_bound, |t| t as f64);
        let bound = ftl_bound_linear_weights(mu, domain.diameter(), grad_bound, ROUNDS);
        for u in &grid {
            let regret = ledger.regret_against(u);
            assert!(
                regret <= bound + SLACK,
                "sequence {seq}: surrogate regret {regret} exceeds {bound}"
            );
        }
    }
}

#[test]
fn ftl_closed_form_matches_a_numerical_minimizer() {
    // The leader has a closed form; check it against projected gradient
    // descent on the accumulated surrogate objective, run to high precision.
    let domain = domain();
    let mu = 1.3;
    let mut rng = stream_rng(31, 14);
    let mut learner = WeightedFtlStronglyConvex::new();
    learner.init(&domain).unwrap();
    let mut observed: Vec<(f64, Vector, Vector)> = Vec::new(); // (alpha, x_t, g)
    for t in 1..=50usize {
        let alpha = 1.0 + (t % 3) as f64;
        let x_t = sample_ball(&mut rng, DIM, 1.0);
        let g = sample_ball(&mut rng, DIM, 2.0);
        learner
            .observe_gradient(
                &g.scaled(alpha),
                &ObservationContext {
                    alpha,
                    play_point: &x_t,
                    mu,
                },
            )
            .unwrap();
        observed.push((alpha, x_t, g));

        // Independent oracle: minimize sum_i alpha_i (<g_i, w> + mu/2 ||w - x_i||^2)
        // by projected gradient descent with the exact Lipschitz step.
        let total_weight: f64 = observed.iter().map(|(a, _, _)| a).sum();
        let grad = |w: &Vector| {
            let mut out = Vector::zeros(DIM);
            for (a, x_i, g_i) in &observed {
                out.add_scaled_mut(*a, g_i);
                out.add_scaled_mut(a * mu, &(w - x_i));
            }
            out
        };
        let step = 1.0 / (mu * total_weight);
        let mut w = domain.center();
        for _ in 0..4000 {
            let g_w = grad(&w);
            w = domain
                .project(&Vector::lincomb(1.0, &w, -step, &g_w))
                .unwrap();
        }
        let closed = learner.current_iterate().unwrap();
        assert!(
            closed.dist(&w) < 1e-6,
            "round {t}: closed form {closed:?} vs numerical {w:?}"
        );
    }
}

#[test]
fn iterates_only_depend_on_earlier_losses() {
    // Replay a gradient sequence with round t altered: every iterate up to
    // and including w_t must be unchanged (w_t is committed before loss t).
    let domain = domain();
    let zero = Vector::zeros(DIM);
    let altered_round = 10usize;
    let record = |alter: bool| -> Vec<Vector> {
        let mut rng = stream_rng(5, 15);
        let mut learner = AdaptiveOgd::new();
        learner.init(&domain).unwrap();
        let mut iterates = Vec::new();
        for t in 1..=20usize {
            iterates.push(learner.current_iterate().unwrap().clone());
            let mut g = sample_ball(&mut rng, DIM, 1.0);
            if alter && t == altered_round {
                g = g.scaled(-3.5);
            }
            learner.observe_gradient(&g, &ctx(&zero)).unwrap();
        }
        iterates
    };
    let base = record(false);
    let altered = record(true);
    for t in 0..altered_round {
        assert_eq!(base[t], altered[t], "iterate {t} changed retroactively");
    }
    assert_ne!(
        base[altered_round], altered[altered_round],
        "the altered loss must influence the next iterate"
    );
}
