pub mod attack;
pub mod bp;
pub mod game;
pub mod market;
pub mod wm;

/// Serde default helpers.
pub(crate) fn one() -> f64 {
    1.0
}

pub(crate) fn one_u() -> u64 {
    1
}
