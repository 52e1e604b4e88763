use thiserror::Error;

#[derive(Debug, Error)]
pub enum MarketError {
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("insufficient data: {0}")]
    Insufficient(String),
    #[error("unknown node id {0}")]
    UnknownNode(u64),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Ode(#[from] ode_engine::OdeError),
}
