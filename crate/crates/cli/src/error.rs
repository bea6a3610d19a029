use thiserror::Error;

/// Exit code 2 for configuration problems, 3 for anything that goes wrong
/// after the configuration was accepted.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("computation error: {0}")]
    Computation(String),
    #[error("io error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Computation(_) | CliError::Io(_) => 3,
        }
    }
}

impl From<pathmeter_core::Error> for CliError {
    fn from(e: pathmeter_core::Error) -> Self {
        CliError::Computation(e.to_string())
    }
}
