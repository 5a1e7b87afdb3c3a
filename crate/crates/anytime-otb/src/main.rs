//! Experiment CLI: seeded runs, sweeps, rate fits, and bound tables.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anytime_otb::error::Error;
use anytime_otb::harness::{
    bounds, fit_rate, parse_config_file, read_trajectory_csv, run_experiment, sweep,
    write_aggregate_file, ExperimentConfig, NoiseKind, TrajectoryRecord,
};
use anytime_otb::problems::gradient_bound;

const USAGE: &str = "\
anytime-otb: online-to-batch conversion experiments

USAGE:
  anytime-otb run     [FLAGS]         run seeded trials; one trajectory CSV per seed
  anytime-otb sweep   [FLAGS]         run many seeds; aggregate CSV (t,mean,median,p95,n_seeds)
  anytime-otb ratefit <TRAJ.csv> [--tail-frac F] [--col primary|subopt_x|subopt_y]
  anytime-otb bounds  [FLAGS]         print the closed-form bound values for a config

FLAGS (run/sweep/bounds):
  --config FILE       flat key=value file with the same keys as the flags below;
                      explicit flags override the file
  --algo A            classic | anytime | general-sc | optimistic | accelerated
  --learner L         adaptive-ogd | optimistic-ogd | ftl-sc  (default follows --algo)
  --schedule S        constant | linear | poly:K   (accelerated forces linear)
  --problem P         quadratic | logistic | abs-deviation
  --dim N             problem dimension (default 10)
  --spectrum LIST     quadratic eigenvalues: one value, lo,hi (linearly spaced), or dim values
  --xstar LIST        exact minimizer coordinates (default: interior point at distance B/4)
  --B X               domain scale: the feasible set is the centered ball of radius B/2
  --noise K           none | gaussian | sphere
  --sigma S           total noise scale (E||noise||^2 <= sigma^2)
  --T N               number of rounds
  --seed N, --seeds R single seed, comma list, or half-open range lo..hi
  --mu-surrogate MU   surrogate curvature for general-sc (default: the problem's)
  --c C               accelerated step-size constant (default 2)
  --out PATH          output CSV path (required for run/sweep)
  --log-every N       0 = geometric logging grid 1,2,4,... (default), else every N rounds
  --tail-frac F       rate-fit tail fraction (default 0.5)
  --delta D           confidence level for the high-probability bound (default 0.05)

EXIT CODES: 0 success, 2 configuration error, 3 data/numeric/analysis error.
";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match dispatch(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config(_) | Error::InvalidArgument(_) => ExitCode::from(2),
                _ => ExitCode::from(3),
            }
        }
    }
}

fn dispatch(args: &[String]) -> Result<(), Error> {
    let Some(command) = args.first() else {
        eprintln!("{USAGE}");
        return Err(Error::Config("missing subcommand".to_string()));
    };
    match command.as_str() {
        "-h" | "--help" | "help" => {
            println!("{USAGE}");
            Ok(())
        }
        "run" => cmd_run(&args[1..]),
        "sweep" => cmd_sweep(&args[1..]),
        "ratefit" => cmd_ratefit(&args[1..]),
        "bounds" => cmd_bounds(&args[1..]),
        other => Err(Error::Config(format!(
            "unknown subcommand '{other}' (expected run|sweep|ratefit|bounds)"
        ))),
    }
}

/// Split flag arguments into ordered key=value pairs, loading `--config`
/// files in place so that later flags override file entries.
fn flag_pairs(args: &[String]) -> Result<Vec<(String, String)>, Error> {
    let mut pairs = Vec::new();
    let mut it = args.iter().peekable();
    while let Some(arg) = it.next() {
        let (flag, inline_value) = match arg.split_once('=') {
            Some((f, v)) => (f.to_string(), Some(v.to_string())),
            None => (arg.clone(), None),
        };
        let Some(key) = flag.strip_prefix("--") else {
            return Err(Error::Config(format!("unexpected argument '{arg}'")));
        };
        let value = match inline_value {
            Some(v) => v,
            None => it
                .next()
                .ok_or_else(|| Error::Config(format!("missing value for --{key}")))?
                .clone(),
        };
        if key == "config" {
            pairs.extend(parse_config_file(Path::new(&value))?);
        } else {
            pairs.push((key.to_string(), value));
        }
    }
    Ok(pairs)
}

fn cmd_run(args: &[String]) -> Result<(), Error> {
    let config = ExperimentConfig::from_pairs(&flag_pairs(args)?)?;
    let paths = run_experiment(&config)?;
    for p in paths {
        println!("wrote {}", p.display());
    }
    Ok(())
}

fn cmd_sweep(args: &[String]) -> Result<(), Error> {
    let config = ExperimentConfig::from_pairs(&flag_pairs(args)?)?;
    let out = config
        .out
        .clone()
        .ok_or_else(|| Error::Config("sweep needs an output path (--out)".to_string()))?;
    let rows = sweep(&config)?;
    write_aggregate_file(&out, &rows)?;
    println!(
        "wrote {} ({} rows, {} seeds)",
        out.display(),
        rows.len(),
        config.seeds.len()
    );
    Ok(())
}

fn cmd_ratefit(args: &[String]) -> Result<(), Error> {
    let mut path: Option<PathBuf> = None;
    let mut tail_fraction = 0.5;
    let mut column = "primary".to_string();
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--tail-frac" => {
                let v = it
                    .next()
                    .ok_or_else(|| Error::Config("missing value for --tail-frac".to_string()))?;
                tail_fraction = v
                    .parse()
                    .map_err(|_| Error::Config(format!("bad tail fraction '{v}'")))?;
            }
            "--col" => {
                column = it
                    .next()
                    .ok_or_else(|| Error::Config("missing value for --col".to_string()))?
                    .clone();
            }
            other if !other.starts_with("--") && path.is_none() => {
                path = Some(PathBuf::from(other));
            }
            other => return Err(Error::Config(format!("unexpected argument '{other}'"))),
        }
    }
    let path =
        path.ok_or_else(|| Error::Config("ratefit needs a trajectory CSV path".to_string()))?;
    let records = read_trajectory_csv(&path)?;
    let series = extract_series(&records, &column)?;
    let fit = fit_rate(&series, tail_fraction)?;
    println!(
        "slope={} intercept={} r_squared={} tail_fraction={} points={}",
        fit.slope,
        fit.intercept,
        fit.r_squared,
        fit.tail_fraction,
        series.len()
    );
    Ok(())
}

fn extract_series(records: &[TrajectoryRecord], column: &str) -> Result<Vec<(f64, f64)>, Error> {
    let pick = |r: &TrajectoryRecord| -> Result<f64, Error> {
        match column {
            "primary" => Ok(r.subopt_y.unwrap_or(r.subopt_x)),
            "subopt_x" => Ok(r.subopt_x),
            "subopt_y" => r.subopt_y.ok_or_else(|| {
                Error::Analysis("trajectory has no subopt_y column values".to_string())
            }),
            other => Err(Error::Config(format!(
                "unknown column '{other}' (expected primary|subopt_x|subopt_y)"
            ))),
        }
    };
    records
        .iter()
        .map(|r| Ok((r.t as f64, pick(r)?)))
        .collect()
}

fn cmd_bounds(args: &[String]) -> Result<(), Error> {
    let config = ExperimentConfig::from_pairs(&flag_pairs(args)?)?;
    let seed = config.seeds[0];
    let (objective, domain, noise, mu) = config.build_problem(seed)?;
    let info = objective.info().clone();
    let rounds = config.rounds.max(1);
    let diameter = domain.diameter();

    println!("bound,value");
    println!(
        "regret_inflation_factor,{}",
        bounds::regret_inflation_factor(config.schedule, rounds)?
    );

    let grad_bound = match config.noise {
        NoiseKind::Gaussian => {
            eprintln!(
                "note: gaussian noise has no almost-sure gradient bound; skipping bounds that need G"
            );
            None
        }
        _ => Some(gradient_bound(&objective, &domain, &noise)?),
    };

    if let Some(g) = grad_bound {
        println!("gradient_bound,{g}");
        let surrogate_mu = if mu > 0.0 {
            Some(mu)
        } else {
            config.mu_surrogate.or(info.strong_convexity)
        };
        if let Some(mu) = surrogate_mu.filter(|m| *m > 0.0) {
            println!(
                "strongly_convex_log_rate,{}",
                bounds::strongly_convex_log_rate(mu, diameter, g, rounds)
            );
            println!(
                "strongly_convex_weighted_rate,{}",
                bounds::strongly_convex_weighted_rate(mu, diameter, g, rounds)
            );
        }
        if let Some(l) = info.smoothness {
            println!(
                "accelerated_smooth_rate,{}",
                bounds::accelerated_smooth_rate(config.bound_b, l, g, config.sigma, rounds)
            );
        }
        let advertised = diameter * g * (2.0 * config.schedule.cumulative_square(rounds)).sqrt();
        println!(
            "high_probability_excess_loss,{}",
            bounds::high_probability_excess_loss(
                advertised,
                diameter,
                g,
                config.schedule,
                rounds,
                config.delta,
            )?
        );
    }
    if let Some(l) = info.smoothness {
        println!(
            "optimistic_smooth_rate,{}",
            bounds::optimistic_smooth_rate(l, diameter, config.sigma, rounds)
        );
    }
    Ok(())
}
