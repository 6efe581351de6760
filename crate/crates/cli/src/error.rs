use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{context}: {source}")]
    Numerical {
        context: String,
        #[source]
        source: qheat::Error,
    },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 1 for bad input, 2 for failures inside the numerics.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Numerical { .. } => 2,
        }
    }

    /// Wraps a library error: domain violations are the caller's fault,
    /// everything else is numerical.
    pub fn from_core(context: impl Into<String>, e: qheat::Error) -> Self {
        match e {
            qheat::Error::Domain(_) | qheat::Error::DimensionMismatch { .. } | qheat::Error::InvalidFactorization { .. } => {
                CliError::Usage(format!("{}: {e}", context.into()))
            }
            other => CliError::Numerical { context: context.into(), source: other },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
