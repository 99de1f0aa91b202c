use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}:{line}: {message}")]
    CoinFile {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write output: {0}")]
    Write(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Computation(String),
}

impl CliError {
    /// 2 for bad input, 1 for everything that went wrong after the input was accepted.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::CoinFile { .. } | CliError::Read { .. } => 2,
            _ => 1,
        }
    }

    pub fn computation(e: impl std::fmt::Display) -> Self {
        CliError::Computation(e.to_string())
    }
}
