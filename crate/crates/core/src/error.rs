use thiserror::Error;

/// Errors raised by parsing, validation and computation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("inconsistent orientation: {0}")]
    Orientation(String),

    #[error("{crossings} classical crossings exceed the budget of {budget}")]
    BudgetExceeded { crossings: usize, budget: usize },

    #[error("zero polynomial has no canonical form")]
    ZeroPolynomial,

    #[error("polynomial division is not exact: {0}")]
    InexactDivision(String),

    #[error("invalid polynomial text: {0}")]
    PolynomialSyntax(String),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("matching {0} joins two endpoints of the same direction")]
    IncompatibleMatching(String),

    #[error("unknown builtin: {0}")]
    UnknownBuiltin(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
