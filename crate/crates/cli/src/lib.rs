//! Command-line driver: config parsing, command dispatch and reports.

pub mod commands;
pub mod config;
pub mod report;
pub mod selftest;

pub use commands::{run_command, Command, Outcome, RunConfig};
pub use config::{parse_config, Document};

use levkit_core::Error;

/// Process exit status for each error category.
pub fn exit_code(err: &CliError) -> i32 {
    match err {
        CliError::Core(e) => match e {
            Error::Validation { .. } | Error::Shape(_) => 2,
            Error::Capacity(_) => 3,
            Error::Domain(_) => 4,
            _ => 1,
        },
        CliError::Io { .. } => 1,
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn category(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.category(),
            CliError::Io { .. } => "io",
        }
    }
}
