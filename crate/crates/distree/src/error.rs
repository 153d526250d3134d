use thiserror::Error;

/// Exit status for a run that hit the exhaustive-generation guard.
pub const EXIT_GUARD: i32 = 3;
/// Exit status for malformed command lines (the status clap uses).
pub const EXIT_USAGE: i32 = 2;
/// Exit status for every other failure.
pub const EXIT_FAILURE: i32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] distree_core::Error),

    #[error("input line {line}: {message}")]
    Input { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(distree_core::Error::ResourceLimit { .. }) => EXIT_GUARD,
            _ => EXIT_FAILURE,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
