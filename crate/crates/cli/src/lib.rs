//! `ringcc` command line: ring-sum tables, libration sweeps, rotation rates,
//! direct simulations and figure data, all as CSV.
//!
//! Inputs are dimensionless (G = M = R = 1); masses enter as the total ring
//! to central mass ratio mN/M.

pub mod commands;
pub mod config;
pub mod format;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::config::{parse_count, parse_finite};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numerical(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 2,
        }
    }
}

/// Library errors that stem from bad input are usage errors; the rest are
/// numerical failures.
impl From<ringcc_core::Error> for CliError {
    fn from(e: ringcc_core::Error) -> Self {
        use ringcc_core::Error as E;
        match e {
            E::InvalidSystem(_) | E::DegenerateSystem | E::Domain(_) | E::Unsupported(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "ringcc", version, about = "Ring central configurations: sums, libration points, simulations")]
pub struct Cli {
    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// key = value file; command-line flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Σcsc, Σcsc³ and the α, α' expansion coefficients.
    Sums(SumsArgs),
    /// Collinear libration points against mN/M.
    Libration(LibrationArgs),
    /// Rotation rate relative to Kepler over N and ring mass.
    Omega(OmegaArgs),
    /// Direct integration of a ring configuration.
    Simulate(SimulateArgs),
    /// Data series for the force-ratio and oscillation figures.
    Figures(FiguresArgs),
}

#[derive(Debug, Args)]
pub struct SumsArgs {
    #[arg(short = 'N', long = "n", value_parser = parse_count, value_delimiter = ',')]
    pub n: Vec<u64>,
    /// The N set 10 … 20000 of the coefficient table.
    #[arg(long)]
    pub table4: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Inner,
    Outer,
    Both,
}

impl std::str::FromStr for BranchArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Args)]
pub struct LibrationArgs {
    #[arg(short = 'N', long = "n", value_parser = parse_count, value_delimiter = ',')]
    pub n: Vec<u64>,
    /// Ring-to-central mass ratio mN/M.
    #[arg(long, value_parser = parse_finite, value_delimiter = ',', allow_negative_numbers = true)]
    pub ratio: Vec<f64>,
    #[arg(long, value_enum)]
    pub branch: Option<BranchArg>,
    /// Inner points over N ∈ {50, 100, 1000} and ten ratios 1e-5 … 1e4.
    #[arg(long, conflicts_with = "table3")]
    pub table2: bool,
    /// Outer points over the same grid.
    #[arg(long)]
    pub table3: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OmegaArgs {
    #[arg(short = 'N', long = "n", value_parser = parse_count, value_delimiter = ',')]
    pub n: Vec<u64>,
    /// Ring-to-central mass ratio mN/M.
    #[arg(long, value_parser = parse_finite, value_delimiter = ',', allow_negative_numbers = true)]
    pub fraction: Vec<f64>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Rk4,
    Leapfrog,
}

impl std::str::FromStr for MethodArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(short = 'N', long = "n", value_parser = parse_count)]
    pub n: Option<u64>,
    #[arg(long, value_parser = parse_finite)]
    pub ratio: Option<f64>,
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
    #[arg(long, value_parser = parse_finite)]
    pub periods: Option<f64>,
    #[arg(long)]
    pub trajectory: Option<PathBuf>,
    #[arg(long)]
    pub diagnostics: Option<PathBuf>,
    /// Also measure the radial oscillation frequency of a kicked ring member.
    #[arg(long)]
    pub frequency: bool,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    /// Radial/tangential force ratio against x/R.
    #[arg(long, conflicts_with = "fig2", required_unless_present_any = ["fig2", "config"])]
    pub fig1: bool,
    /// Undamped and damped radial oscillations.
    #[arg(long)]
    pub fig2: bool,
    #[arg(short = 'N', long = "n", value_parser = parse_count)]
    pub n: Option<u64>,
    #[arg(long, value_parser = parse_finite)]
    pub ratio: Option<f64>,
    /// Resistance coefficient k of the damped series.
    #[arg(long, value_parser = parse_finite)]
    pub resistance: Option<f64>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// Runs one invocation, writing CSV to `stdout` unless an output path is
/// given. `args` includes the program name.
pub fn run<I, T>(args: I, stdout: &mut (dyn Write + Send)) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                write!(stdout, "{e}")?;
                return Ok(());
            }
            return Err(CliError::Usage(e.to_string()));
        }
    };
    dispatch(cli, stdout)
}

fn dispatch(cli: Cli, stdout: &mut (dyn Write + Send)) -> Result<(), CliError> {
    let threads = match cli.threads {
        Some(0) => return Err(CliError::Usage("--threads must be at least 1".into())),
        t => t,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    let config = cli.config.as_deref();
    pool.install(|| match &cli.command {
        Command::Sums(a) => commands::sums::run(a, config, stdout),
        Command::Libration(a) => commands::libration::run(a, config, stdout),
        Command::Omega(a) => commands::omega::run(a, config, stdout),
        Command::Simulate(a) => commands::simulate::run(a, config, stdout),
        Command::Figures(a) => commands::figures::run(a, config, stdout),
    })
}
