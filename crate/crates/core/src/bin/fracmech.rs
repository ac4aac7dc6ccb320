//! `fracmech` command line: strain sweeps and one-off fractional derivatives.
//!
//! Exit status is 0 on success, 1 for invalid input and 2 when the numerics
//! fail (singular matrix, horizon leaving the body). Diagnostics go to stderr.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::info;

use fracmech::experiments::{
    self, parse_config_with_clamp, write_csv, write_example1_csv, ExperimentConfig, ExperimentError,
};
use fracmech::frac::{riesz_caputo, DerivativeSpec, Fn1D, FracOrder, Interval};

#[derive(Parser)]
#[command(name = "fracmech", version, about = "Fractional nonlocal continuum kinematics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Linear stretch: numeric fractional gradient against its closed form.
    Example1(RunArgs),
    /// Exponential stretch: strain curves over X for each α, ℓ and ratio.
    Example2(RunArgs),
    /// Strain curves for any configured motion.
    Sweep(RunArgs),
    /// Riesz-Caputo derivative of a built-in function at one point.
    Derive(DeriveArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Experiment configuration file.
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// CSV destination; overrides `output` in the config, stdout if neither.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Truncate horizons at the body boundary instead of failing.
    #[arg(long)]
    clamp_boundary: bool,
}

#[derive(Args)]
struct DeriveArgs {
    /// `exp`, `sin`, `cos` or `poly:c0,c1,...` for c0 + c1 t + ...
    #[arg(long)]
    function: String,
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, allow_negative_numbers = true)]
    t: f64,
    #[arg(long, allow_negative_numbers = true)]
    b: f64,
    #[arg(long)]
    alpha: f64,
    /// Subintervals per side.
    #[arg(long, default_value_t = fracmech::frac::DEFAULT_SUBDIVISIONS)]
    m: usize,
}

enum Failure {
    Invalid(String),
    Numerical(String),
}

impl From<ExperimentError> for Failure {
    fn from(e: ExperimentError) -> Self {
        match e.exit_code() {
            2 => Failure::Numerical(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<fracmech::Error> for Failure {
    fn from(e: fracmech::Error) -> Self {
        ExperimentError::from(e).into()
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };

    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Example1(args) => {
            let (config, out) = load(&args)?;
            let rows = experiments::run_example1(&config)?;
            let worst = rows.iter().map(|r| r.discrepancy).fold(0.0, f64::max);
            info!("{} rows, largest discrepancy {worst:e}", rows.len());
            write_to(out.as_deref(), |w| write_example1_csv(&rows, w))
        }
        Command::Example2(args) => {
            let (config, out) = load(&args)?;
            let rows = experiments::run_example2(&config)?;
            write_to(out.as_deref(), |w| write_csv(&rows, w))
        }
        Command::Sweep(args) => {
            let (config, out) = load(&args)?;
            let rows = experiments::run_sweep(&config)?;
            write_to(out.as_deref(), |w| write_csv(&rows, w))
        }
        Command::Derive(args) => derive(&args),
    }
}

fn load(args: &RunArgs) -> Result<(ExperimentConfig, Option<PathBuf>), Failure> {
    let config = parse_config_with_clamp(&args.config, args.clamp_boundary)
        .map_err(ExperimentError::from)?;
    let out = args.out.clone().or_else(|| config.output.clone());
    Ok((config, out))
}

fn write_to(
    path: Option<&Path>,
    emit: impl FnOnce(&mut dyn Write) -> Result<(), experiments::CsvError>,
) -> Result<(), Failure> {
    let result = match path {
        Some(path) => std::fs::File::create(path)
            .map_err(experiments::CsvError::from)
            .and_then(|f| {
                let mut w = std::io::BufWriter::new(f);
                emit(&mut w)
            }),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            emit(&mut lock)
        }
    };
    result.map_err(|e| Failure::Invalid(e.to_string()))
}

fn derive(args: &DeriveArgs) -> Result<(), Failure> {
    let f = parse_function(&args.function).map_err(Failure::Invalid)?;
    let spec = DerivativeSpec::new(FracOrder::new(args.alpha)?, Interval::new(args.a, args.t, args.b)?)
        .with_subdivisions(args.m);
    let value = riesz_caputo(&f, &spec)?;
    println!("{value:.16e}");
    Ok(())
}

fn parse_function(text: &str) -> Result<Fn1D<'static>, String> {
    match text {
        "exp" => Ok(Fn1D::with_derivative(f64::exp, f64::exp)),
        "sin" => Ok(Fn1D::with_derivative(f64::sin, f64::cos)),
        "cos" => Ok(Fn1D::with_derivative(f64::cos, |t: f64| -t.sin())),
        _ => {
            let coeffs = text
                .strip_prefix("poly:")
                .ok_or_else(|| format!("unknown function `{text}` (expected exp, sin, cos or poly:c0,c1,...)"))?
                .split(',')
                .map(|c| c.trim().parse::<f64>().map_err(|_| format!("bad coefficient `{c}`")))
                .collect::<Result<Vec<_>, _>>()?;
            let slope: Vec<f64> = coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| k as f64 * c)
                .collect();
            Ok(Fn1D::with_derivative(
                move |t| horner(&coeffs, t),
                move |t| horner(&slope, t),
            ))
        }
    }
}

fn horner(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
}
