use thiserror::Error;

/// Process exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    /// Reserved for argument errors reported by the parser itself.
    pub const USAGE: i32 = 2;
    pub const PARSE: i32 = 3;
    pub const VALIDATION: i32 = 4;
    pub const ACCURACY: i32 = 5;
    pub const NORMALIZATION: i32 = 6;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Parse { path: String, message: String },

    #[error("invalid scenario: {0}")]
    Validation(String),

    #[error("invalid argument: {0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] lab2w::Error),

    #[error("sum rule failed: {0}")]
    SumRule(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use lab2w::Error as E;
        match self {
            Self::Io { .. } => exit::IO,
            Self::Usage(_) => exit::USAGE,
            Self::Parse { .. } => exit::PARSE,
            Self::Validation(_) => exit::VALIDATION,
            Self::SumRule(_) => exit::NORMALIZATION,
            Self::Core(e) => match e {
                E::Accuracy { .. } | E::RepresentationMismatch { .. } => exit::ACCURACY,
                E::Normalization { .. } => exit::NORMALIZATION,
                _ => exit::VALIDATION,
            },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
