//! Command-line interface for the two-attribute randomized response
//! toolkit: estimation, forward maps, simulation, efficiency tables,
//! threshold checks, and variance curves.
//!
//! Exit codes: 0 success, 2 input or validation error, 3 degenerate design
//! or unsimulable model, 4 I/O error.

mod commands;
mod config;
mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use output::FormatKind;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Degenerate(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Degenerate(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Degenerate(m) | CliError::Io(m) => m,
        }
    }
}

impl From<rrtwo::Error> for CliError {
    fn from(err: rrtwo::Error) -> Self {
        match err {
            rrtwo::Error::DegenerateDesign(_) | rrtwo::Error::UnsimulableModel(_) => {
                CliError::Degenerate(err.to_string())
            }
            _ => CliError::Input(err.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "rrtwo",
    version,
    about = "Estimation and simulation for two-attribute randomized response designs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Optional TOML file supplying any flag value; explicit flags win.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output format for on-screen results.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatKind>,
}

#[derive(Subcommand)]
enum Command {
    /// Point estimates with plug-in standard errors from observed counts.
    Estimate(EstimateArgs),
    /// Answer-pair probabilities implied by a design and a truth.
    Forward(ForwardArgs),
    /// Seeded replication study of a simulable design.
    Simulate(SimulateArgs),
    /// Relative-efficiency tables over the reference grid, one CSV per
    /// joint-proportion level.
    Tables(TablesArgs),
    /// Efficiency thresholds of the extended design over the simple one.
    Thresholds(ThresholdsArgs),
    /// Variance-versus-proportion series for external plotting.
    Curves(CurvesArgs),
}

#[derive(Args)]
struct EstimateArgs {
    /// Design that produced the counts: mangat-a, mangat-b, simple,
    /// crossed, or proposed.
    #[arg(long)]
    model: Option<String>,
    /// Deck I probability.
    #[arg(long)]
    p: Option<f64>,
    /// Deck II probability (T in the simple and crossed designs).
    #[arg(long)]
    lambda: Option<f64>,
    /// Inline counts "n11,n10,n01,n00".
    #[arg(long)]
    counts: Option<String>,
    /// CSV file with header "n11,n10,n01,n00" and one data row.
    #[arg(long, value_name = "PATH")]
    counts_file: Option<PathBuf>,
}

#[derive(Args)]
struct ForwardArgs {
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    pi_a: Option<f64>,
    #[arg(long)]
    pi_b: Option<f64>,
    #[arg(long)]
    pi_ab: Option<f64>,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    pi_a: Option<f64>,
    #[arg(long)]
    pi_b: Option<f64>,
    #[arg(long)]
    pi_ab: Option<f64>,
    /// Respondents per replication [default: 1000].
    #[arg(long)]
    n: Option<u64>,
    /// Number of replications [default: 20000].
    #[arg(long)]
    reps: Option<u64>,
    /// RNG seed [default: 0].
    #[arg(long)]
    seed: Option<u64>,
    /// Write the summary here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TablesArgs {
    /// Deck I probability [default: 0.6].
    #[arg(long)]
    p: Option<f64>,
    /// Deck II probability [default: 0.7].
    #[arg(long)]
    lambda: Option<f64>,
    /// Comma-separated joint-proportion levels [default: 0.05,0.1,0.2].
    #[arg(long)]
    levels: Option<String>,
    /// Baseline design: simple or crossed [default: simple].
    #[arg(long)]
    baseline: Option<String>,
    /// Efficiency mode: published or formula [default: published].
    #[arg(long)]
    mode: Option<String>,
    /// Output directory [default: tables].
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ThresholdsArgs {
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    pi_a: Option<f64>,
    #[arg(long)]
    pi_b: Option<f64>,
    #[arg(long)]
    pi_ab: Option<f64>,
}

#[derive(Args)]
struct CurvesArgs {
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    /// Truth coordinate to sweep: pi-a, pi-b, or pi-ab.
    #[arg(long)]
    sweep: Option<String>,
    #[arg(long)]
    from: Option<f64>,
    #[arg(long)]
    to: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
    #[arg(long)]
    pi_a: Option<f64>,
    #[arg(long)]
    pi_b: Option<f64>,
    #[arg(long)]
    pi_ab: Option<f64>,
    /// Sample size the variances are reported at [default: 1].
    #[arg(long)]
    n: Option<u64>,
    /// Write the series here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file = config::load(cli.config.as_deref())?;
    let format = cli
        .format
        .or_else(|| file.format.as_deref().and_then(FormatKind::parse_name))
        .unwrap_or(FormatKind::Table);
    match cli.command {
        Command::Estimate(args) => commands::estimate(args, &file, format),
        Command::Forward(args) => commands::forward(args, &file, format),
        Command::Simulate(args) => commands::simulate(args, &file, format),
        Command::Tables(args) => commands::tables(args, &file),
        Command::Thresholds(args) => commands::thresholds(args, &file, format),
        Command::Curves(args) => commands::curves(args, &file),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {}", err.message());
        std::process::exit(err.exit_code());
    }
}
