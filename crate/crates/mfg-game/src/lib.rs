//! Participation game for tagging posts as fake or real.
//!
//! Users either abstain (type 0), tag from their innate ability (type 1), or
//! also read a warning derived from the current fake-tag fraction (type 2).
//! The OSN picks the warning scale `w`, the reward `R` and the type-2
//! multiplier `γ` so that an equilibrium identifies fake posts with level
//! `θ` while mis-tagging at most `δ` of real posts.

mod design;
mod equilibria;
mod error;
mod params;
mod study;
mod tagging;

pub use design::{design_ai_game, AiDesign, DesignChoices};
pub use equilibria::{success_probability, utility_eval, verify_equilibria, NeReport, SecondNe};
pub use error::GameError;
pub use params::{Actuality, GameParams, Mix};
pub use study::{draw_config, run_study, StudyConfig, StudySample, StudySummary};
pub use tagging::{
    beta_fixed_point, fp_residual, g_field, response, simulate_tagging_game, tag_probability,
    warning, TagTrace,
};
