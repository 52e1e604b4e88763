use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WmError {
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("constraint unattainable: target {target} is not above the lower bound {lower}")]
    Unattainable { target: f64, lower: f64 },
    #[error("no limit proportion found for the {0:?} post")]
    NoRoot(crate::Actuality),
    #[error("sample budget must be at least 1")]
    Budget,
    #[error(transparent)]
    Ode(#[from] ode_engine::OdeError),
    #[error(transparent)]
    Bp(#[from] bp_core::BpError),
}
