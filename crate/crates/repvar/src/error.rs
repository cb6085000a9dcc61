//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Variants split into usage errors (bad input shapes, parse failures) and
/// resource errors (enumeration budgets).  Search outcomes that are merely
/// *undecided* are not errors; they are encoded in the tri-state result types
/// of the search functions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime modulus {0} is too large (must fit in 31 bits)")]
    PrimeTooLarge(u64),

    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },

    #[error("mismatched field modulus: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("dominance comparison requires equal total dimension vectors ({left} vs {right})")]
    TotalMismatch { left: String, right: String },

    #[error("enumeration budget exceeded: {count} candidates > budget {budget}")]
    BudgetExceeded { count: u128, budget: u64 },

    #[error("not a submodule: arrow {arrow} maps the subspace outside itself")]
    NotSubmodule { arrow: String },

    #[error("genericity failure at p = {prime} after {attempts} attempts; increase p or retries")]
    GenericityFailure { prime: u64, attempts: u32 },

    #[error("no top-element choice realizes the skeleton: rank {achieved} < dimension {needed}")]
    NotASkeleton { achieved: usize, needed: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Shorthand for a [`Error::DimensionMismatch`] with formatted context.
    pub fn dim(context: impl Into<String>) -> Self {
        Error::DimensionMismatch {
            context: context.into(),
        }
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
