//! Command-line front end: builds comparison tables between semiclassical
//! and exact results and writes them with a reproducibility manifest.

pub mod acceptance;
pub mod app;
pub mod commands;
pub mod format;
pub mod output;

/// Failure of a command, mapped onto the process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] arrival_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED_CHECKS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(e) if e.is_numerical() => EXIT_NUMERICAL,
            CliError::Core(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_FAILED_CHECKS,
        }
    }
}
