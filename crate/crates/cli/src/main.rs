//! `tin`: TIN-optimality analysis of K-user parallel interference networks.

mod commands;
mod demo;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tin_core::rational::{self, Rational};

/// Exit status of a completed analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Positive,
    Negative,
}

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Guard(String),
    Analysis(String),
}

impl From<tin_core::Error> for Failure {
    fn from(e: tin_core::Error) -> Self {
        match e {
            e if e.is_guard() => Failure::Guard(e.to_string()),
            tin_core::Error::MethodDisagreement(m) => Failure::Analysis(format!("methods disagree: {m}")),
            e => Failure::Input(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "tin", version, about = "TIN-optimality analysis for K-user parallel interference networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Args, Debug, Clone)]
pub struct Flags {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Gap fixture parameter ε, as p/q.
    #[arg(long, global = true, value_parser = parse_rational)]
    pub epsilon: Option<Rational>,
    /// log2(P) for quantizing exponents to levels, as p/q.
    #[arg(long = "logP", global = true, value_parser = parse_rational)]
    pub log_p: Option<Rational>,
    /// Partition override as 1-based user:predecessor pairs, e.g. 2:1,3:2,1:3.
    #[arg(long, global = true)]
    pub partition: Option<String>,
    /// GDoF tuple as a comma-separated rational list, e.g. 2,1/2,1/2.
    #[arg(long, global = true)]
    pub tuple: Option<String>,
    /// Restrict region membership to one sub-channel (1-based).
    #[arg(long, global = true)]
    pub subchannel: Option<usize>,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    rational::parse(s).map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Command {
    /// TIN-optimality condition per sub-channel.
    CheckTin { input: String },
    /// Sum-GDoF / sum-capacity per sub-channel, by every method.
    Sum { input: String },
    /// Cycle-bound region constraints per sub-channel.
    Region { input: String },
    /// Whether --tuple lies in the region (M = 1) or the combined bounds.
    Member { input: String },
    /// Tightest subset sum bounds, combined over sub-channels.
    CombinedBounds { input: String },
    /// Whether --tuple splits into per-sub-channel region points.
    Decompose { input: String },
    /// GF(2) invertibility per sub-channel.
    Invertibility { input: String },
    /// Separability verdict and the full analysis report.
    Separability { input: String },
    /// Replays the bundled examples and checks their known outcomes.
    Demo,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let flags = cli.flags;
    let result = match &cli.command {
        Command::CheckTin { input } => commands::check_tin(input, &flags),
        Command::Sum { input } => commands::sum(input, &flags),
        Command::Region { input } => commands::region(input, &flags),
        Command::Member { input } => commands::member(input, &flags),
        Command::CombinedBounds { input } => commands::combined_bounds(input, &flags),
        Command::Decompose { input } => commands::decompose(input, &flags),
        Command::Invertibility { input } => commands::invertibility(input, &flags),
        Command::Separability { input } => commands::separability(input, &flags),
        Command::Demo => demo::run(&flags),
    };
    match result {
        Ok(Status::Positive) => ExitCode::from(0),
        Ok(Status::Negative) => ExitCode::from(1),
        Err(Failure::Analysis(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
