use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use riesz_lab::lattice::Space;
use riesz_lab::ordercont::DEFAULT_PROBE_DEPTH;
use riesz_lab_cli::commands::{self, Outcome};
use riesz_lab_cli::config::DEFAULT_SAMPLES;
use riesz_lab_cli::{command_suite, emit, CliError, Format, SpaceSpec, SuiteConfig, SuiteName, Trials};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "riesz-lab", version, about = "Exact checks for polynomials on finite C(K) and C(ω+1)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run property suites, or decide order continuity of one polynomial.
    Check(CheckArgs),
    /// Worked examples.
    Demo {
        #[command(subcommand)]
        demo: Demo,
    },
    /// Carrier band and null ideal of an orthogonally additive polynomial.
    Carrier {
        #[arg(long)]
        poly: PathBuf,
        /// Degree used when the file holds a bare measure.
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Nakano's disjointness criterion for two polynomials.
    Nakano {
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Restrict a polynomial, tensor or measure to the ideal generated by an element.
    Localize {
        #[arg(long)]
        obj: PathBuf,
        #[arg(long)]
        r#gen: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Demo {
    /// A product polynomial continuous at 0 but not at the unit.
    Counterexample {
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = DEFAULT_PROBE_DEPTH)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CheckArgs {
    /// Suites to run; `order-continuity` with `--poly` checks one file instead.
    #[arg(value_enum)]
    targets: Vec<SuiteName>,
    #[arg(long, value_enum, value_delimiter = ',')]
    suite: Vec<SuiteName>,
    #[arg(long)]
    poly: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Shorthand for `--space finite:N`.
    #[arg(long)]
    n: Option<usize>,
    /// `finite:N` or `omega`.
    #[arg(long)]
    space: Option<SpaceSpec>,
    /// A count, or `exhaustive`.
    #[arg(long, default_value = "100")]
    trials: Trials,
    #[arg(long, env = "RIESZ_LAB_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_PROBE_DEPTH)]
    depth: usize,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn resolve_space(args: &CheckArgs, suites: &[SuiteName]) -> Result<Space, CliError> {
    match (args.space, args.n) {
        (Some(SpaceSpec(s)), Some(n)) if s != Space::finite(n) => {
            Err(CliError::Usage(format!("--n {n} conflicts with --space {s}")))
        }
        (Some(SpaceSpec(s)), _) => Ok(s),
        (None, Some(0)) => Err(CliError::Usage("--n must be at least 1".into())),
        (None, Some(n)) => Ok(Space::finite(n)),
        (None, None) if !suites.is_empty() && suites.iter().all(|s| s.needs_omega()) => Ok(Space::OmegaPlusOne),
        (None, None) => Ok(SuiteConfig::default().space),
    }
}

fn write_out(bytes: &[u8], out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, bytes)?,
        None => std::io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

fn emit_json<T: Serialize>(o: Outcome<T>, out: Option<&Path>) -> Result<bool, CliError> {
    let mut bytes = serde_json::to_vec_pretty(&o.body)?;
    bytes.push(b'\n');
    write_out(&bytes, out)?;
    Ok(o.passed)
}

fn check(args: CheckArgs) -> Result<bool, CliError> {
    if let Some(poly) = &args.poly {
        if args.targets.iter().chain(&args.suite).any(|&s| s != SuiteName::OrderContinuity) {
            return Err(CliError::Usage("--poly only applies to `check order-continuity`".into()));
        }
        let p = commands::load_polynomial(poly, args.m)?;
        return emit_json(commands::check_order_continuity(&p, args.depth)?, args.out.as_deref());
    }
    let mut suites = args.targets.clone();
    suites.extend(args.suite.iter().copied().filter(|s| !args.targets.contains(s)));
    let config = SuiteConfig {
        space: resolve_space(&args, &suites)?,
        suites,
        m: args.m,
        trials: args.trials,
        seed: args.seed,
        probe_depth: args.depth,
        samples: args.samples,
        format: args.format,
    };
    let reports = command_suite(&config)?;
    write_out(&emit(&reports, config.format)?, args.out.as_deref())?;
    Ok(reports.iter().all(|r| r.passed))
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Check(args) => check(args),
        Command::Demo {
            demo: Demo::Counterexample { m, depth, out },
        } => emit_json(commands::demo_counterexample(m, depth)?, out.as_deref()),
        Command::Carrier { poly, m, out } => {
            let p = commands::load_polynomial(&poly, m)?;
            emit_json(commands::carrier_report(&p)?, out.as_deref())
        }
        Command::Nakano { p, q, m, out } => {
            let p = commands::load_polynomial(&p, m)?;
            let q = commands::load_polynomial(&q, m)?;
            emit_json(commands::nakano(&p, &q)?, out.as_deref())
        }
        Command::Localize { obj, r#gen, out } => emit_json(commands::localize(&obj, &r#gen)?, out.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("riesz-lab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
