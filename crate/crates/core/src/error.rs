use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inconsistent input (bad vertex index, invalid k, ...).
    #[error("invalid input: {0}")]
    Input(String),

    /// Edge-list parse failure; `line` is 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// The requested algorithm does not support this parameter combination.
    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    /// A configured resource limit (enumeration budget, retry budget) was hit.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// Every degree prefix was rejected by the width gate.
    #[error(
        "gate exhausted: all {prefixes} prefixes exceeded width budget {width_budget} \
         (smallest width seen {min_width}); retry with --width-budget {min_width} or larger"
    )]
    GateExhausted {
        prefixes: usize,
        width_budget: usize,
        min_width: usize,
    },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}
