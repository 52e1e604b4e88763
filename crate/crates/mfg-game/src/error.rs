use thiserror::Error;

#[derive(Debug, Error)]
pub enum GameError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("equilibrium check failed: {0}")]
    Violated(String),
}
