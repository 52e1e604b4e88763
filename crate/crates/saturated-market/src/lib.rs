//! Saturated branching process for content propagation.
//!
//! A post's current shares `C` and total shares `A` evolve as
//! `C_n = C_{n-1} + Γ_n(A_{n-1}) − 1`, `A_n = A_{n-1} + Γ_n(A_{n-1})`,
//! where the expected forwards `m(a)` (the TeF) fall piecewise linearly in
//! `a`. Early on the process is super-critical, later sub-critical, so
//! every path ends extinct.

mod closed;
mod error;
mod fit;
mod graph;
mod ode;
mod pgf;
mod sim;
mod tef;

pub use closed::{closed_form, metrics, ClosedForm, Metrics, Phase, ShareTrajectory, EULER_GAMMA};
pub use error::MarketError;
pub use fit::{estimate_tef, fit_two_slope, Bin, EstimateConfig, TefEstimate, TefFit};
pub use graph::{propagate_on_graph, Graph, GraphEvent};
pub use ode::{stpbp_gap, stpbp_rhs};
pub use pgf::{extinction_prob_pgf, poisson_pgf};
pub use sim::{
    simulate_stpbp, virality_probability, OffspringLaw, StpConfig, StpRecord, StpTrajectory,
};
pub use tef::TefParams;
