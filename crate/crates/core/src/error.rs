use thiserror::Error;

/// Errors raised by the library.
///
/// Mathematical verdicts (an identity failing on some basis tuple) are not
/// errors; checkers return reports for those. Errors are reserved for inputs
/// that violate an operation's preconditions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("the fundamental identity fails for the base algebra")]
    FundamentalIdentity,

    #[error("cochain is not a Maurer-Cartan element ([phi, phi] != 0)")]
    NotMaurerCartan,

    #[error("representation conditions fail")]
    InvalidRepresentation,

    #[error("operator is not a Nijenhuis operator")]
    NotNijenhuis,

    #[error("path does not satisfy the deformation equations (first failing power t^{0})")]
    InvalidPath(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dim_err(what: impl Into<String>) -> Error {
    Error::Dimension(what.into())
}
