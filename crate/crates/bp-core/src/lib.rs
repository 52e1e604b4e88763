//! Two-type branching processes observed at death epochs.
//!
//! The population is `Φ = (cx, cy, ax, ay)`: living and ever-born counts per
//! type. Each death draws a (type, death-kind) pair, the dying individual's
//! offspring are added, and the epoch counter advances. Ratios
//! `Υ_n = (S^c/n, C^x/n, S^a/n, A^x/n)` are the stochastic-approximation
//! iterates analysed by `ode-engine`.

mod death;
mod error;
mod mean;
mod ratios;
mod sim;
mod state;

pub use death::{death_probabilities, ConstantRates, DeathModel, DeathProb, UniformDeath};
pub use error::BpError;
pub use mean::{poisson, ConstantMean, LinearSaturating, MeanMatrix, MeanModel, PoissonOffspring};
pub use ratios::{
    dichotomy, harmonic, ratio_sequence, ratios_and_dichotomy, ratios_incremental, DichotomyStats,
    RatioPath,
};
pub use sim::{replication_rng, simulate, OffspringSampler, Record, SimConfig, SimRng, Trajectory};
pub use state::{step_embedded, Kind, OffspringSample, PopulationState, RatioVector};
