use std::path::PathBuf;

use thiserror::Error;

/// Stable process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const VALIDATION: i32 = 2;
    pub const IO: i32 = 3;
    pub const PRECISION: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] acsusy_core::error::Error),

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization failed: {0}")]
    Serialize(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use acsusy_core::error::Error as E;
        match self {
            CliError::Core(E::Precision { .. } | E::Pole(_) | E::Degenerate(_)) => exit::PRECISION,
            CliError::Core(_) | CliError::Validation(_) => exit::VALIDATION,
            CliError::Io { .. } | CliError::Serialize(_) => exit::IO,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
