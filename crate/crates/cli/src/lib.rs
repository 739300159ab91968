//! Command-line driver: structured configuration, deterministic
//! machine-readable reports, and the randomized verification suites over
//! the exact classification library.

pub mod commands;
pub mod config;
pub mod report;
pub mod suites;

use std::fmt;

/// Driver-level failure with its process exit code: 2 for invalid input,
/// 1 for a failed property.
#[derive(Debug)]
pub struct CliError {
    pub exit_code: i32,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        CliError {
            exit_code: 2,
            message: message.into(),
        }
    }

    pub fn property(message: impl Into<String>) -> Self {
        CliError {
            exit_code: 1,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for CliError {}

impl From<real_tori::Error> for CliError {
    fn from(e: real_tori::Error) -> Self {
        CliError::invalid(e.to_string())
    }
}
