//! Command-line front end for `sirnet-core`: TOML configs, CSV reports,
//! thread-parallel Monte Carlo and the validation sweep.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod range;
pub mod report;
pub mod runner;
pub mod validate;

use std::fs::File;
use std::io::{self, BufWriter, Write};

pub use commands::Outcome;
pub use error::AppError;

use cli::{Cli, Command};
use config::Config;

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, AppError> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let out: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match &cli.command {
        Command::Contention(a) => commands::contention(a, &config, out),
        Command::Outage(a) => commands::outage(a, &config, out),
        Command::Throughput(a) => commands::throughput(a, &config, out),
        Command::Capacity(a) => commands::capacity(a, out),
        Command::Validate(a) => commands::validate(a, &config, out),
        Command::Sample(a) => commands::sample(a, &config, out),
        Command::Reproduce(a) => commands::reproduce(a, out),
    }
}

/// Process exit status: 0 success, 1 validation failure, 2 usage or domain error.
pub fn exit_code(result: &Result<Outcome, AppError>) -> u8 {
    match result {
        Ok(Outcome::Success) => 0,
        Ok(Outcome::ValidationFailed) => 1,
        Err(_) => 2,
    }
}
