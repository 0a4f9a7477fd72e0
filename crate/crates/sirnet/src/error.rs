use std::io;

use thiserror::Error;

/// Failures of the command-line front end. All of them exit with status 2;
/// a failed validation is an outcome, not an error.
#[derive(Debug, Error)]
pub enum AppError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] sirnet_core::Error),
    #[error("config: {0}")]
    Config(#[from] toml::de::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}
