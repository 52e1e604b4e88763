use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Missing, unknown or ill-typed parameters.
    #[error("config: {0}")]
    Config(String),
    #[error("{0}")]
    Run(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            _ => 1,
        }
    }
}

macro_rules! run_error {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Run(e.to_string())
            }
        })*
    };
}

run_error!(
    bp_core::BpError,
    ode_engine::OdeError,
    bp_attack::AttackError,
    fakepost_wm::WmError,
    saturated_market::MarketError,
    mfg_game::GameError,
    csv::Error,
    serde_json::Error,
    rayon::ThreadPoolBuildError
);
