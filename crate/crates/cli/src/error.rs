use kenmotsu_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    /// 2 for bad input or usage, 3 for mathematical failures such as a
    /// singular frame or metric.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } | CliError::Io { .. } => 2,
            CliError::Core(e) if is_input_error(e) => 2,
            CliError::Core(_) => 3,
        }
    }
}

/// Core errors that describe malformed input rather than a singularity.
pub fn is_input_error(e: &CoreError) -> bool {
    matches!(
        e,
        CoreError::Syntax { .. }
            | CoreError::UnknownIdentifier { .. }
            | CoreError::ZeroDenominator { .. }
            | CoreError::Type { .. }
            | CoreError::Chart(_)
            | CoreError::Dimension(_)
            | CoreError::Structure(_)
            | CoreError::EtaMismatch
    )
}

pub type Result<T> = std::result::Result<T, CliError>;
