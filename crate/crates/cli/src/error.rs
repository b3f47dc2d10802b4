use std::io;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const USAGE: u8 = 1;
    pub const NO_SOLUTION: u8 = 2;
    pub const DEGENERATE_ONLY: u8 = 3;
    pub const VERIFICATION: u8 = 4;
    pub const IO: u8 = 5;
    pub const DOMAIN: u8 = 6;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("verification failed: {name} = {value} (tolerance {tolerance:e})")]
    Verification {
        name: String,
        value: f64,
        tolerance: f64,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error(transparent)]
    Core(#[from] iontrap_core::Error),
}

impl CliError {
    pub fn io(path: impl Into<String>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        use iontrap_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Config { .. } => exit::USAGE,
            CliError::Verification { .. } => exit::VERIFICATION,
            CliError::Io { .. } => exit::IO,
            CliError::Core(e) => match e {
                E::NoRealSolution(_) => exit::NO_SOLUTION,
                E::Pole(_) | E::ComplexResidue(_) => exit::DOMAIN,
                E::InvalidPreparation { .. } | E::RatioNotImaginary { .. } => exit::VERIFICATION,
                _ => exit::USAGE,
            },
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
