use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BpError {
    #[error("absorbing state has no death event")]
    Absorbing,
    #[error("invalid offspring sample: {0}")]
    InvalidSample(String),
    #[error("death rate for {kind:?}/{index} must be positive and at least the floor, got {rate}")]
    BadRate {
        kind: crate::Kind,
        index: usize,
        rate: f64,
    },
    #[error("invalid mean: {0}")]
    BadMean(String),
    #[error("empty trajectory")]
    Empty,
}
