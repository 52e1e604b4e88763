//! Numerical machinery for the limit ODEs of branching-process ratios.
//!
//! The scalar proportion ODE `β̇ = g(β)` on `[0,1]` is classified by a sign
//! scan with bisection; its equilibria lift to the 4-D ODE
//! `Υ̇ = 1{ψᶜ>0}·h(β) − Υ` through `h`. Picard iteration integrates both the
//! autonomous and the non-autonomous (finite-population) systems.

mod error;
mod field;
mod gap;
mod hover;
mod picard;
mod scalar;

pub use error::OdeError;
pub use field::{autonomous_rhs, drift, eta, g_beta_field, h_of_beta, nonauto_rhs};
pub use gap::finite_time_gap;
pub use hover::{hover_classify, HoverClass, TargetKind};
pub use picard::{picard_solve, picard_solve_windowed, OdeTrajectory, SolverMeta};
pub use scalar::{
    classify_scalar, lift_limits, EqKind, Equilibrium, EquilibriumReport, LiftKind, Lifted,
    ScalarField,
};
