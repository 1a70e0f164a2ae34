//! The `dnilp` command line: one grammar for every algebra, JSON documents
//! out.

pub mod algebra;
pub mod commands;
pub mod parse;

use dnilp_core::Error;
use parse::ParseError;
use thiserror::Error as ThisError;

pub use commands::{run, Outcome};

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Core(e) => e.kind(),
            CliError::Usage(_) => "usage",
        }
    }

    /// 3 for an exhausted budget, 1 for a failed verification window, 2
    /// otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::BudgetExceeded { .. }) => 3,
            CliError::Core(Error::VerificationWindow(_)) => 1,
            _ => 2,
        }
    }
}
