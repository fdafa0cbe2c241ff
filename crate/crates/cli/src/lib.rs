//! Command-line front end for `mcred`.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails or the data
//! violates a structural axiom, 2 on input errors.

pub mod commands;
pub mod files;
pub mod report;

pub use commands::{execute, run, Cli};
pub use report::Report;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Violation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Violation(_) => 1,
            CliError::Input(_) => 2,
        }
    }
}

impl From<mcred::Error> for CliError {
    fn from(e: mcred::Error) -> Self {
        match e {
            mcred::Error::Structural(_) => CliError::Violation(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}
