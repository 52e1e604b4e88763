use rand::Rng;
use serde::Serialize;

use crate::{Actuality, GameParams, Mix};

/// `r(α, ω) = min{c·α^a·ω^b, 1}`.
pub fn response(alpha: f64, omega: f64, params: &GameParams) -> f64 {
    (params.c * alpha.powf(params.a) * omega.powf(params.b)).min(1.0)
}

/// `ω(β) = w^{1/b}·α_R^{(1−a)/b}·β^{1/b}`.
pub fn warning(beta: f64, w: f64, params: &GameParams) -> f64 {
    let inv = 1.0 / params.b;
    w.powf(inv) * params.alpha_r.powf((1.0 - params.a) * inv) * beta.max(0.0).powf(inv)
}

/// Probability that a participant of `kind` (1 or 2) fake-tags at fraction
/// `beta`; adversaries (any other kind) never do.
pub fn tag_probability(kind: u8, beta: f64, w: f64, params: &GameParams, u: Actuality) -> f64 {
    match kind {
        1 => params.alpha(u),
        2 => response(params.alpha(u), warning(beta, w, params), params),
        _ => 0.0,
    }
}

/// Mean drift `g_u(β)` of the fake-tag fraction.
pub fn g_field(beta: f64, mix: &Mix, w: f64, params: &GameParams, u: Actuality) -> f64 {
    let (eta, eta_a) = (mix.eta(params.mua), mix.eta_a(params.mua));
    params.alpha(u) * eta + (1.0 - eta - eta_a) * tag_probability(2, beta, w, params, u) - beta
}

pub fn fp_residual(beta: f64, mix: &Mix, w: f64, params: &GameParams, u: Actuality) -> f64 {
    g_field(beta, mix, w, params, u).abs()
}

/// Limit fake-tag fraction. The warning makes type-2 response linear in `β`
/// up to saturation, so the attractor is either the saturated level
/// `α_u η + 1 − η − η_a` or `α_u η/ρ_u`.
pub fn beta_fixed_point(mix: &Mix, w: f64, params: &GameParams, u: Actuality) -> f64 {
    let (eta, eta_a) = (mix.eta(params.mua), mix.eta_a(params.mua));
    let k = params.c * w * params.alpha_r * params.delta_pow(u);
    let alpha = params.alpha(u);
    let rho_bar = alpha * eta + 1.0 - eta - eta_a;
    let rho = 1.0 - (1.0 - eta - eta_a) * k;
    if rho <= 0.0 || k * rho_bar >= 1.0 {
        rho_bar
    } else {
        alpha * eta / rho
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TagTrace {
    pub k: Vec<u64>,
    pub beta: Vec<f64>,
}

impl TagTrace {
    pub fn last(&self) -> f64 {
        *self.beta.last().unwrap_or(&0.0)
    }
}

/// Tagging epochs: each participant is type 1, 2 or adversarial with
/// probabilities `(η, 1 − η − η_a, η_a)`; `β` is the running fake-tag mean.
/// Records every `thin`-th epoch and the last.
pub fn simulate_tagging_game<R: Rng + ?Sized>(
    mix: &Mix,
    w: f64,
    params: &GameParams,
    u: Actuality,
    k_max: u64,
    thin: u64,
    rng: &mut R,
) -> TagTrace {
    let (eta, eta_a) = (mix.eta(params.mua), mix.eta_a(params.mua));
    let thin = thin.max(1);
    let mut beta: f64 = 0.0;
    let mut tr = TagTrace {
        k: Vec::new(),
        beta: Vec::new(),
    };
    for k in 1..=k_max {
        let x: f64 = rng.random();
        let kind = if x < eta {
            1
        } else if x < 1.0 - eta_a {
            2
        } else {
            0
        };
        let tag = rng.random::<f64>() < tag_probability(kind, beta, w, params, u);
        beta += (f64::from(u8::from(tag)) - beta) / k as f64;
        if k % thin == 0 || k == k_max {
            tr.k.push(k);
            tr.beta.push(beta);
        }
    }
    tr
}
