//! Warning mechanisms for fake-post detection.
//!
//! Copies of a post carry a fake (`x`) or real (`y`) tag. Readers are
//! warning-ignoring (wi), warning-seeking (ws), adversarial (a) or
//! non-participating (np). A ws reader tags fake with probability
//! `min{α_i·ω(β), 1}` where `ω` is the warning computed from the current
//! proportion `β` of fake-tagged unread copies. The limit proportions are the
//! zeros of a scalar field `g^u_β`, solved with `ode-engine`.

mod design;
mod error;
mod field;
mod learn;
mod params;
mod sim;
mod warning;

pub use design::{
    b_star, design_ea, design_eh, design_eh2, optimize_eo, optimize_eo_with_w, DeltaMode,
    MechanismDesign,
};
pub use error::WmError;
pub use field::{bounds, gbeta_wm, kinks, limit_proportions, Limits};
pub use learn::{learn_wm, learned_iqos, BTarget, LearnConfig, LearnResult, TracePoint};
pub use params::{Actuality, FriendLaw, PostModel, UserMix, WmParams};
pub use sim::{simulate_tagging, TaggingRun, TaggingSampler};
pub use warning::{warning_value, Warning, WarningKind};
