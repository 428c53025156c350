use thiserror::Error;

/// Errors raised by the symbolic engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    #[error("unknown identifier `{name}` at column {column}")]
    UnknownIdentifier { name: String, column: usize },

    #[error("zero denominator literal at column {column}")]
    ZeroDenominator { column: usize },

    #[error("type error at column {column}: {message}")]
    Type { column: usize, message: String },

    #[error("division by an identically zero expression")]
    DivisionByZero,

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("expression has a pole at the evaluation point")]
    Pole,

    #[error("metric is singular")]
    SingularMetric,

    #[error("frame is singular")]
    SingularFrame,

    #[error("frame is not orthonormal for the metric")]
    NotOrthonormal,

    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("invalid chart: {0}")]
    Chart(String),

    #[error("{0} is not constant")]
    NonConstant(String),

    #[error("{0}")]
    Structure(String),

    #[error("supplied eta differs from g(·, xi)")]
    EtaMismatch,

    #[error("tensor is not symmetric")]
    NotSymmetric,

    #[error("could not find a pole-free sample point after {0} attempts")]
    SamplePoles(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
