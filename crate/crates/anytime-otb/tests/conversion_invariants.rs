//! Cross-cutting invariants of the conversions.

use anytime_otb::conversions::{
    AnytimeConverter, ClassicConverter, GeneralAnytimeConverter, GradientOracleReport,
};
use anytime_otb::domain::Domain;
use anytime_otb::harness::bounds;
use anytime_otb::learners::{AdaptiveOgd, WeightedFtlStronglyConvex};
use anytime_otb::problems::{gradient_bound, NoiseModel, Objective, ProblemOracle};
use anytime_otb::rng::stream_rng;
use anytime_otb::schedule::WeightSchedule;
use anytime_otb::vector::Vector;

#[test]
fn constant_gradient_makes_classic_and_anytime_agree() {
    // With a linear loss on a box the oracle returns the same gradient
    // wherever it is queried, so both conversions feed the learner identical
    // losses and the classic average equals the anytime play point exactly.
    let dim = 3;
    let lower = Vector::constant(dim, -1.0).unwrap();
    let upper = Vector::constant(dim, 1.0).unwrap();
    let domain = Domain::axis_box(lower, upper).unwrap();
    let slope = Vector::from_slice(&[0.5, -0.25, 0.125]).unwrap();
    let oracle_fn = |slope: Vector| {
        move |x: &Vector| GradientOracleReport {
            grad: slope.clone(),
            true_value: slope.dot(x),
            true_grad_norm: slope.norm(),
        }
    };

    let mut anytime =
        AnytimeConverter::new(AdaptiveOgd::new(), &domain, WeightSchedule::Constant).unwrap();
    let mut classic =
        ClassicConverter::new(AdaptiveOgd::new(), &domain, WeightSchedule::Constant).unwrap();
    let mut oracle_a = oracle_fn(slope.clone());
    let mut oracle_c = oracle_fn(slope);
    for t in 0..200 {
        let a = anytime.step(&mut oracle_a).unwrap();
        let c = classic.step(&mut oracle_c).unwrap();
        assert_eq!(
            a.learner_iterate, c.learner_iterate,
            "learner paths diverged at t={t}"
        );
        assert_eq!(
            a.play,
            c.average.unwrap(),
            "anytime play point must equal the classic average at t={t}"
        );
    }
}

#[test]
fn polynomial_weightings_of_the_played_losses_stay_controlled() {
    // A unit-weight deterministic run simultaneously satisfies every
    // polynomially weighted average bound: for s_t = t^k the weighted average
    // suboptimality stays within a constant multiple of regret_T / T.
    let dim = 5;
    let spectrum = [0.2, 0.4, 0.6, 0.8, 1.0];
    let x_star = Vector::constant(dim, 0.3).unwrap();
    let mut rng = stream_rng(3, 0);
    let objective = Objective::quadratic_from_spectrum(&spectrum, x_star, &mut rng).unwrap();
    let domain = Domain::ball(Vector::zeros(dim), 2.0).unwrap();
    let mut conv =
        AnytimeConverter::new(AdaptiveOgd::new(), &domain, WeightSchedule::Constant).unwrap();
    let mut oracle = ProblemOracle::new(&objective, NoiseModel::None, stream_rng(3, 1));

    let rounds = 400u64;
    let mut subopts = Vec::with_capacity(rounds as usize);
    for _ in 0..rounds {
        let rec = conv.step(&mut oracle).unwrap();
        subopts.push(rec.report.true_value - objective.f_star());
    }
    let regret_rate = conv.learner_regret_against(objective.x_star()) / rounds as f64;
    for k in [1.0, 2.0] {
        let mut weighted = 0.0;
        let mut weight_sum = 0.0;
        for (i, s) in subopts.iter().enumerate() {
            let w = ((i + 1) as f64).powf(k);
            weighted += w * s;
            weight_sum += w;
        }
        let lhs = weighted / weight_sum;
        let ratio = lhs / regret_rate;
        println!("weighted-average control k={k}: C = {ratio:.3}");
        assert!(
            ratio <= 6.0,
            "k={k}: weighted average {lhs} exceeds 6 * regret/T = {}",
            6.0 * regret_rate
        );
    }
}

#[test]
fn anytime_bound_holds_pathwise_with_a_deterministic_oracle() {
    let dim = 5;
    let spectrum = [0.2, 0.4, 0.6, 0.8, 1.0];
    let x_star = Vector::constant(dim, 0.4).unwrap();
    let mut rng = stream_rng(8, 0);
    let objective = Objective::quadratic_from_spectrum(&spectrum, x_star, &mut rng).unwrap();
    let domain = Domain::ball(Vector::zeros(dim), 2.0).unwrap();
    for schedule in [
        WeightSchedule::Constant,
        WeightSchedule::Linear,
        WeightSchedule::polynomial(2.0).unwrap(),
    ] {
        let mut conv = AnytimeConverter::new(AdaptiveOgd::new(), &domain, schedule).unwrap();
        let mut oracle = ProblemOracle::new(&objective, NoiseModel::None, stream_rng(8, 1));
        for t in 1..=500u64 {
            let rec = conv.step(&mut oracle).unwrap();
            let subopt = rec.report.true_value - objective.f_star();
            let bound = conv.learner_regret_against(objective.x_star()) / rec.alpha_cum;
            assert!(
                subopt <= bound + 1e-8,
                "{schedule:?} t={t}: suboptimality {subopt} above pathwise bound {bound}"
            );
        }
    }
}

#[test]
fn monte_carlo_mean_suboptimality_respects_the_measured_regret_bound() {
    // In expectation the played point's excess loss is at most the learner
    // regret divided by the cumulative weight. With 200 gaussian-noise seeds
    // the cross-seed means estimate both sides of that inequality.
    use anytime_otb::harness::{run_trial, ExperimentConfig};
    let pairs: Vec<(String, String)> = [
        ("algo", "anytime"),
        ("dim", "5"),
        ("spectrum", "0.2,1"),
        ("B", "4"),
        ("noise", "gaussian"),
        ("sigma", "1"),
        ("T", "500"),
    ]
    .iter()
    .map(|(k, v)| (k.to_string(), v.to_string()))
    .collect();
    let config = ExperimentConfig::from_pairs(&pairs).unwrap();
    let mut mean_subopt = 0.0;
    let mut mean_bound = 0.0;
    let seeds = 200;
    for seed in 0..seeds {
        let trajectory = run_trial(&config, seed).unwrap();
        let last = trajectory.records.last().unwrap();
        mean_subopt += last.subopt_x / seeds as f64;
        mean_bound += last.bound_value.unwrap() / seeds as f64;
    }
    assert!(
        mean_subopt <= mean_bound * 1.05 + 1e-3,
        "mean suboptimality {mean_subopt} above mean regret bound {mean_bound}"
    );
}

#[test]
fn strongly_convex_conversion_meets_its_closed_form_bounds() {
    // Deterministic strongly convex quadratic: the run is its own expectation,
    // so the final suboptimality must stay below the closed-form rates, and
    // linear weights must beat the log factor.
    let dim = 6;
    let spectrum = [1.0; 6];
    let x_star = Vector::constant(dim, 0.2).unwrap();
    let domain = Domain::ball(Vector::zeros(dim), 1.0).unwrap();
    let rounds = 2000u64;

    let mut finals = Vec::new();
    for schedule in [WeightSchedule::Constant, WeightSchedule::Linear] {
        let mut rng = stream_rng(21, 0);
        let objective =
            Objective::quadratic_from_spectrum(&spectrum, x_star.clone(), &mut rng).unwrap();
        let mu = objective.info().strong_convexity.unwrap();
        let g = gradient_bound(&objective, &domain, &NoiseModel::None).unwrap();
        let mut conv =
            GeneralAnytimeConverter::new(WeightedFtlStronglyConvex::new(), &domain, schedule)
                .unwrap();
        let mut oracle = ProblemOracle::new(&objective, NoiseModel::None, stream_rng(21, 1))
            .with_surrogate_mu(mu);
        let mut last = f64::MAX;
        for _ in 0..rounds {
            let rec = conv.step(&mut oracle).unwrap();
            last = rec.report.true_value - objective.f_star();
        }
        let bound = match schedule {
            WeightSchedule::Constant => {
                bounds::strongly_convex_log_rate(mu, domain.diameter(), g, rounds)
            }
            _ => bounds::strongly_convex_weighted_rate(mu, domain.diameter(), g, rounds),
        };
        assert!(
            last <= bound,
            "{schedule:?}: final suboptimality {last} above the closed form {bound}"
        );
        finals.push(last);
    }
    assert!(
        finals[1] < finals[0],
        "linear weights should converge faster: {finals:?}"
    );
}
