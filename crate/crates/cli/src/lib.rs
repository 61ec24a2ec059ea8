//! Front-end plumbing for the `grasscone` binary: input documents, request
//! execution, and report rendering. The mathematical content lives in
//! `grasscone-core`; this crate only parses, dispatches, and prints.

pub mod document;
pub mod exec;
pub mod report;

/// Front-end errors carry the exit code policy: `2` for malformed input,
/// `3` for a violated mathematical hypothesis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Validation(String),
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Precondition(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Precondition(m) => m,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "validation error: {m}"),
            CliError::Precondition(m) => write!(f, "precondition failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<grasscone_core::Error> for CliError {
    fn from(err: grasscone_core::Error) -> Self {
        if err.is_hypothesis_failure() {
            CliError::Precondition(err.to_string())
        } else {
            CliError::Validation(err.to_string())
        }
    }
}

pub fn validation(message: impl Into<String>) -> CliError {
    CliError::Validation(message.into())
}
