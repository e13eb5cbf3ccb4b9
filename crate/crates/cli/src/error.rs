use casimir_core::CasimirError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Physics(#[from] CasimirError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for unusable input, 3 for physics-domain rejections. Convergence
    /// failures inside a sweep do not abort the run; they surface as exit 4
    /// from the caller after the table has been written.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Physics(CasimirError::Table { .. }) => 2,
            CliError::Physics(CasimirError::Convergence { .. }) => 4,
            CliError::Physics(_) => 3,
        }
    }
}

pub(crate) fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}
