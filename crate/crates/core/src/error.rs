use std::io;

use thiserror::Error;

/// Errors raised across the crate.
///
/// Everything except [`Error::Io`] and [`Error::Parse`] is a contract
/// violation: the caller handed in inputs outside an operation's domain.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {what} (expected {expected}, got {got})")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("index {index} out of range for universe {universe}")]
    IndexOutOfRange { index: usize, universe: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("table of {entries} entries exceeds the budget of {budget}")]
    BudgetExceeded { entries: u128, budget: u128 },

    #[error("enumeration of {count} items exceeds the cap of {cap}")]
    CapExceeded { count: u128, cap: u128 },

    #[error("column {column} has weight {weight}, expected uniform weight {expected}")]
    ColumnWeight {
        column: usize,
        weight: usize,
        expected: usize,
    },

    #[error("no sparsity guess up to {universe} produced an acceptable reconstruction")]
    GuessesExhausted { universe: u64 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    /// True for errors that describe bad inputs rather than I/O or
    /// malformed files.
    pub fn is_contract_violation(&self) -> bool {
        !matches!(self, Error::Io(_) | Error::Parse { .. })
    }

    pub(crate) fn mismatch(what: &'static str, expected: usize, got: usize) -> Self {
        Error::DimensionMismatch {
            what,
            expected,
            got,
        }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
