use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OdeError {
    #[error("degenerate field: g vanishes on an interval near {at}")]
    Degenerate { at: f64 },
    #[error("non-finite right-hand side at t = {time}")]
    NonFinite { time: f64 },
    #[error("insufficient trajectory: {0}")]
    Insufficient(String),
    #[error("empty sequence")]
    Empty,
    #[error("invalid argument: {0}")]
    BadArg(String),
}
