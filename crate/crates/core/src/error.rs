use thiserror::Error;

use crate::oracle::{CensusResult, ResumeToken};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An interval comparison could not be decided at the working precision.
    #[error("precision error: {context} (retry with at least {needed_bits} bits)")]
    Precision { needed_bits: u32, context: String },

    #[error("construction error: {0}")]
    Construction(String),

    #[error("certification error: {0}")]
    Certification(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// Enumeration stopped early; `partial` holds every shard finished before `resume`.
    #[error("enumeration budget exceeded; resume from {resume}")]
    BudgetExceeded {
        partial: Box<CensusResult>,
        resume: ResumeToken,
    },
}

impl Error {
    pub(crate) fn precision(needed_bits: u32, context: impl Into<String>) -> Self {
        Error::Precision {
            needed_bits,
            context: context.into(),
        }
    }
}
