use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use ideal_dyn::analysis::{self, ClassifyOptions, Schedule};
use ideal_dyn::density::{self, DensityKind};
use ideal_dyn::harness::{self, Verdict};
use ideal_dyn::ideals::{membership_verdict, Regime, Submeasure};
use ideal_dyn::{intset, Ball, Point, SuiteConfig, System};

/// Density, return-set and ideal-convergence experiments on dynamical systems.
#[derive(Parser)]
#[command(name = "ideal-dyn", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    All,
    UpperAsymptotic,
    LowerAsymptotic,
    UpperBanach,
    LowerBanach,
    UpperLogarithmic,
}

#[derive(Subcommand)]
enum Command {
    /// Density estimates of a set.
    Density {
        #[arg(long)]
        set: String,
        #[arg(long, value_enum, default_value = "all")]
        kind: KindArg,
        #[arg(long)]
        horizon: usize,
    },
    /// Return set N(x, B(c, r)) with its densities and largest gap.
    Returnset {
        #[arg(long)]
        system: String,
        #[arg(long)]
        point: String,
        #[arg(long)]
        center: String,
        #[arg(long)]
        radius: f64,
        #[arg(long)]
        horizon: usize,
        /// Also list the members, one per line, to this file.
        #[arg(long)]
        members: Option<PathBuf>,
    },
    /// Exhaustive norms of N(x, B(eta, r0·2^-k)) for k < levels.
    Cluster {
        #[arg(long)]
        system: String,
        #[arg(long)]
        point: String,
        #[arg(long)]
        eta: String,
        #[arg(long, default_value = "nu")]
        ideal: String,
        #[arg(long)]
        r0: f64,
        #[arg(long, default_value_t = 6)]
        levels: usize,
        #[arg(long)]
        horizon: usize,
        #[arg(long, default_value_t = analysis::DEFAULT_THRESHOLD)]
        threshold: f64,
    },
    /// Recurrence and universality verdicts over a covering target grid.
    Classify {
        #[arg(long)]
        system: String,
        #[arg(long)]
        point: String,
        #[arg(long, default_value = "nu")]
        ideal: String,
        /// Number of grid targets.
        #[arg(long, default_value_t = 32)]
        targets: usize,
        /// Probe radius; defaults to the smallest covering radius.
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long, default_value_t = 6)]
        levels: usize,
        #[arg(long)]
        horizon: usize,
        #[arg(long, default_value_t = analysis::DEFAULT_THRESHOLD)]
        threshold: f64,
    },
    /// Ideal membership verdict for a set.
    Verdict {
        #[arg(long)]
        set: String,
        #[arg(long, default_value = "nu")]
        ideal: String,
        #[arg(long, default_value = "exh")]
        regime: String,
        #[arg(long, default_value_t = analysis::DEFAULT_THRESHOLD)]
        threshold: f64,
        #[arg(long)]
        horizon: usize,
    },
    /// Run the property-check suite.
    Verify {
        /// `all` or a comma-separated list of check names.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        threshold: Option<f64>,
        #[arg(long)]
        workers: Option<usize>,
        /// Line-oriented key=value file; flags override it.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Directory for checks.csv, cases.csv and summary.txt.
        #[arg(long, default_value = "verify-out")]
        out: PathBuf,
    },
    /// Re-run one serialized case, e.g. a first_counterexample.
    Replay { case: String },
    /// List the registered checks.
    Checks,
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn stdout_csv() -> csv::Writer<io::StdoutLock<'static>> {
    csv::Writer::from_writer(io::stdout().lock())
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Density { set, kind, horizon } => {
            if horizon < 2 {
                bail!("density estimates need --horizon of at least 2");
            }
            let s = intset::build(&set, horizon)?;
            let kinds: Vec<DensityKind> = match kind {
                KindArg::All => DensityKind::ALL
                    .into_iter()
                    .filter(|k| horizon >= 3 || *k != DensityKind::UpperLogarithmic)
                    .collect(),
                KindArg::UpperAsymptotic => vec![DensityKind::UpperAsymptotic],
                KindArg::LowerAsymptotic => vec![DensityKind::LowerAsymptotic],
                KindArg::UpperBanach => vec![DensityKind::UpperBanach],
                KindArg::LowerBanach => vec![DensityKind::LowerBanach],
                KindArg::UpperLogarithmic if horizon < 3 => bail!("logarithmic density needs --horizon of at least 3"),
                KindArg::UpperLogarithmic => vec![DensityKind::UpperLogarithmic],
            };
            let mut w = stdout_csv();
            w.write_record(density::CSV_HEADER)?;
            for k in kinds {
                w.write_record(density::estimate(&s, k).csv_record(&set))?;
            }
            w.flush()?;
        }
        Command::Returnset {
            system,
            point,
            center,
            radius,
            horizon,
            members,
        } => {
            let sys = System::from_spec(&system)?;
            let x: Point = point.parse()?;
            let ball = Ball::new(center.parse()?, radius)?;
            let report = analysis::return_set(&sys, &x, &ball, horizon)?;
            if let Some(path) = members {
                std::fs::write(&path, report.returns.to_text())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let mut w = stdout_csv();
            w.write_record(analysis::RETURNSET_CSV_HEADER)?;
            w.write_record(report.csv_record())?;
            w.flush()?;
        }
        Command::Cluster {
            system,
            point,
            eta,
            ideal,
            r0,
            levels,
            horizon,
            threshold,
        } => {
            let sys = System::from_spec(&system)?;
            let m = Submeasure::from_spec(&ideal)?;
            let report = analysis::cluster_value(
                &sys,
                &point.parse()?,
                &eta.parse()?,
                Schedule::new(r0, levels)?,
                &m,
                horizon,
                threshold,
            )?;
            let mut w = stdout_csv();
            w.write_record(analysis::CLUSTER_CSV_HEADER)?;
            for r in report.csv_records() {
                w.write_record(r)?;
            }
            w.flush()?;
            eprintln!(
                "u={} cluster={} limit={}",
                report.u_value, report.is_cluster, report.is_limit
            );
        }
        Command::Classify {
            system,
            point,
            ideal,
            targets,
            radius,
            levels,
            horizon,
            threshold,
        } => {
            let sys = System::from_spec(&system)?;
            let m = Submeasure::from_spec(&ideal)?;
            let grid = analysis::target_grid(&sys, targets)?;
            let radius = radius.unwrap_or(0.5 / targets as f64);
            let c = analysis::classify(
                &sys,
                &point.parse()?,
                &m,
                &grid,
                radius,
                horizon,
                ClassifyOptions { levels, threshold },
            )?;
            let mut w = stdout_csv();
            w.write_record(analysis::CLASSIFY_CSV_HEADER)?;
            for r in c.csv_records() {
                w.write_record(r)?;
            }
            w.flush()?;
        }
        Command::Verdict {
            set,
            ideal,
            regime,
            threshold,
            horizon,
        } => {
            let s = intset::build(&set, horizon)?;
            let m = Submeasure::from_spec(&ideal)?;
            let regime: Regime = regime.parse()?;
            let v = membership_verdict(&m, regime, &s, threshold)?;
            let mut w = stdout_csv();
            w.write_record(ideal_dyn::ideals::VERDICT_CSV_HEADER)?;
            w.write_record(v.csv_record(&set, m.name()))?;
            w.flush()?;
        }
        Command::Verify {
            suite,
            horizon,
            seed,
            threshold,
            workers,
            config,
            out,
        } => {
            let mut cfg = match &config {
                Some(path) => SuiteConfig::from_file(path)?,
                None => SuiteConfig::default(),
            };
            if let Some(s) = suite {
                cfg.set("suite", &s)?;
            }
            cfg.horizon = horizon.unwrap_or(cfg.horizon);
            cfg.seed = seed.unwrap_or(cfg.seed);
            cfg.threshold = threshold.unwrap_or(cfg.threshold);
            cfg.workers = workers.unwrap_or(cfg.workers);
            let report = harness::run_suite(&cfg)?;
            report.write(&out)?;
            let summary = report.summary();
            io::stdout().lock().write_all(summary.as_bytes())?;
            for r in report
                .results
                .iter()
                .filter(|r| r.status == harness::CheckStatus::Inconclusive)
            {
                eprintln!("warning: {} is inconclusive at horizon {}", r.name, cfg.horizon);
            }
            return Ok(report.exit_code() as u8);
        }
        Command::Replay { case } => {
            let outcome = harness::replay(&case)?;
            println!("{:?}: {}", outcome.verdict, outcome.detail);
            for (k, v) in &outcome.metrics {
                println!("  {k} = {v}");
            }
            return Ok(u8::from(outcome.verdict == Verdict::Violation));
        }
        Command::Checks => {
            for def in harness::registry() {
                println!("{:<28} {}", def.name, def.statement);
            }
        }
    }
    Ok(0)
}
