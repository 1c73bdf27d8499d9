//! `firsweep`: generate stand data, train single models, run the hidden-node
//! sweep and apply saved models.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 usage error, 130 interrupted.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use firsweep_core::Target;

#[derive(Parser, Debug)]
#[command(name = "firsweep", version, about = "Forest stand regression harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a synthetic stand dataset.
    Gen(GenArgs),
    /// Train one model and report its test RMS error.
    Train(TrainArgs),
    /// Run Linear, GRNN and MLFN over a node range and report the table.
    Sweep(SweepArgs),
    /// Apply a saved model to a CSV of stands.
    Predict(PredictArgs),
}

#[derive(Args, Debug)]
struct GenArgs {
    /// Number of stands.
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    /// Standard deviation of the Gaussian noise added to each target.
    #[arg(long, default_value_t = 0.5, value_parser = non_negative)]
    noise: f64,
    #[arg(long, env = "FIRSWEEP_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TargetArg {
    Height,
    Volume,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::Height => Target::Height,
            TargetArg::Volume => Target::StockVolume,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Linear,
    Grnn,
    Mlfn,
}

#[derive(Args, Debug)]
struct TrainArgs {
    #[arg(long)]
    data: PathBuf,
    #[arg(long, value_enum, default_value = "height")]
    target: TargetArg,
    #[arg(long, value_enum)]
    model: ModelArg,
    /// Hidden nodes; required with `--model mlfn`.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    nodes: Option<u64>,
    #[arg(long, env = "FIRSWEEP_SEED", default_value_t = 0)]
    seed: u64,
    /// Training share of the data; the rest is the test set.
    #[arg(long, default_value_t = 0.8, value_parser = fraction)]
    split: f64,
    #[arg(long)]
    model_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    data: PathBuf,
    #[arg(long, value_enum, default_value = "height")]
    target: TargetArg,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    nodes_min: u64,
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
    nodes_max: u64,
    /// Seeded trials averaged per row.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[arg(long, env = "FIRSWEEP_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.8, value_parser = fraction)]
    split: f64,
    /// Report destination; printed to stdout when omitted.
    #[arg(long)]
    report_out: Option<PathBuf>,
    /// Directory for the three scatter CSVs.
    #[arg(long)]
    scatter_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
}

#[derive(Args, Debug)]
struct PredictArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

fn fraction(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(format!("{v} is not strictly between 0 and 1"))
    }
}

fn non_negative(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v >= 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{v} must be a finite value >= 0"))
    }
}

/// Cross-argument checks clap cannot express. Exits with status 2.
fn check(cli: &Cli) {
    let fail = |msg: &str| -> ! {
        Cli::command()
            .error(clap::error::ErrorKind::ArgumentConflict, msg)
            .exit()
    };
    match &cli.command {
        Command::Train(a) => match (a.model, a.nodes) {
            (ModelArg::Mlfn, None) => fail("--nodes is required with --model mlfn"),
            (ModelArg::Linear | ModelArg::Grnn, Some(_)) => {
                fail("--nodes only applies to --model mlfn")
            }
            _ => {}
        },
        Command::Sweep(a) if a.nodes_min > a.nodes_max => fail(&format!(
            "--nodes-min {} exceeds --nodes-max {}",
            a.nodes_min, a.nodes_max
        )),
        _ => {}
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    check(&cli);
    let result = match cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Train(a) => commands::train(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Predict(a) => commands::predict(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
