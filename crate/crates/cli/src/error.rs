use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {reason}")]
    Parse { line: u64, reason: String },
    #[error("line {line}: value is not finite")]
    NonFiniteValue { line: u64 },
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] benchvote_core::Error),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    /// 1 for bad input, 2 for an internal invariant violation.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invariant(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
