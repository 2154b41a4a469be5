use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] fcgp_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    Usage(String),

    #[error("{count} guarantee violation(s); repro instances written to {dir}")]
    Violations { count: usize, dir: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(fcgp_core::Error::Unsupported(_)) => 2,
            CliError::Core(fcgp_core::Error::GateExhausted { .. }) => 3,
            CliError::Violations { .. } => 4,
            _ => 1,
        }
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}
