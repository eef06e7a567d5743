//! Command-line front end: heat evolution, SOS decisions, entry-time
//! brackets, atom transport and Burgers moments, plus a regression runner
//! over the named example polynomials.
//!
//! Exit codes: 0 success or SOS, 1 NOT_SOS or OBSTRUCTED, 2 bad input,
//! 3 inconclusive solve, 4 SOS without an exactly validated certificate
//! under `--validate`.

pub mod checks;
pub mod commands;
pub mod config;
pub mod error;
pub mod io;

use clap::{Parser, Subcommand};
use config::FileConfig;
use error::CliError;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "polyheat", version, about = "Heat flow of polynomials and sums of squares")]
pub struct Cli {
    /// TOML file with numeric defaults; flags override it.
    #[arg(long, global = true, env = "POLYHEAT_CONFIG")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    Evolve(commands::evolve::EvolveArgs),
    Sos(commands::sos::SosArgs),
    Threshold(commands::threshold::ThresholdArgs),
    Atoms(commands::atoms::AtomsArgs),
    Burgers(commands::burgers::BurgersArgs),
    #[command(alias = "reproduce-paper")]
    Reproduce(commands::reproduce::ReproduceArgs),
}

/// Runs a parsed command line and returns the process exit code.
pub fn execute(cli: &Cli) -> Result<u8, CliError> {
    let config = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    match &cli.command {
        Command::Evolve(a) => commands::evolve::run(a, &config),
        Command::Sos(a) => commands::sos::run(a, &config),
        Command::Threshold(a) => commands::threshold::run(a, &config),
        Command::Atoms(a) => commands::atoms::run(a, &config),
        Command::Burgers(a) => commands::burgers::run(a, &config),
        Command::Reproduce(a) => commands::reproduce::run(a, &config),
    }
}
