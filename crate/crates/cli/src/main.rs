//! `netdiff`: generate networks, run diffusion experiments, analyze graphs
//! and regenerate the data behind each reference figure.
//!
//! Exit codes: 0 success, 1 runtime or IO failure, 2 usage error.

mod analyze;
mod config;
mod generate;
mod output;
mod reproduce;
mod simulate;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "netdiff", version, about = "Information diffusion on complex networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a network and write its matrix and JSON dump.
    Generate(generate::Args),
    /// Run single diffusion runs or Monte Carlo ensembles.
    Simulate(simulate::Args),
    /// Compute structural statistics of a graph file.
    Analyze(analyze::Args),
    /// Regenerate the data bundle for one figure.
    Reproduce(reproduce::Args),
}

/// Output directory used when `--out-dir` is not given.
pub const OUT_DIR_ENV: &str = "NETDIFF_OUT_DIR";

pub fn default_out_dir() -> PathBuf {
    PathBuf::from("netdiff-out")
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

pub fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure::Usage(msg.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let result = match cli.command {
        Command::Generate(args) => generate::run(args),
        Command::Simulate(args) => simulate::run(args),
        Command::Analyze(args) => analyze::run(args),
        Command::Reproduce(args) => reproduce::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
