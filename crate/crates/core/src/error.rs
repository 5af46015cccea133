use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range {min}..={max}")]
    OutOfRange { index: usize, min: usize, max: usize },

    #[error("domain error: {0}")]
    Domain(String),

    /// A word-level combination that is not a sum of complete fibers.
    #[error("not in {algebra}: {reason}")]
    NotInAlgebra { algebra: &'static str, reason: String },

    #[error("invalid {kind} `{text}`: {reason}")]
    InvalidLabel { kind: &'static str, text: String, reason: String },

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("type error: cannot combine {left} with {right}")]
    TypeMismatch { left: String, right: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invalid(kind: &'static str, text: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidLabel { kind, text: text.into(), reason: reason.into() }
    }

    pub(crate) fn check_index(index: usize, min: usize, max: usize) -> Result<()> {
        if index < min || index > max {
            Err(Error::OutOfRange { index, min, max })
        } else {
            Ok(())
        }
    }
}
