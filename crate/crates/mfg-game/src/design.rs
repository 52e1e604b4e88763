use serde::{Deserialize, Serialize};

use crate::{GameError, GameParams};

/// Free choices left open by the design algorithm. Fractions place `cwα_R`
/// and `η` inside their admissible intervals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DesignChoices {
    /// Position of `cwα_R` in its open interval, in (0, 1).
    pub w_frac: f64,
    /// Position of `η` in `(η̄, η*_θ̃]`, in (0, 1].
    pub eta_frac: f64,
    /// `γ = γ̲(η) + gamma_margin`.
    pub gamma_margin: f64,
    /// Added to the lower bound on `ε` when `θ` has to be raised.
    pub eps_margin: f64,
}

impl Default for DesignChoices {
    fn default() -> Self {
        DesignChoices {
            w_frac: 0.5,
            eta_frac: 0.5,
            gamma_margin: 1.0,
            eps_margin: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AiDesign {
    pub theta_tilde: f64,
    pub w: f64,
    pub cw_alpha_r: f64,
    pub eta: f64,
    pub eta_bar: f64,
    /// `η*_θ̃`, the largest type-1 share that still meets `θ̃`.
    pub eta_star: f64,
    pub reward: f64,
    pub gamma: f64,
    pub gamma_lower: f64,
    pub x_eta: f64,
    pub feasible: bool,
    pub reason: Option<String>,
}

impl AiDesign {
    fn infeasible(reason: &str) -> Self {
        AiDesign {
            theta_tilde: f64::NAN,
            w: f64::NAN,
            cw_alpha_r: f64::NAN,
            eta: f64::NAN,
            eta_bar: f64::NAN,
            eta_star: f64::NAN,
            reward: f64::NAN,
            gamma: f64::NAN,
            gamma_lower: f64::NAN,
            x_eta: f64::NAN,
            feasible: false,
            reason: Some(reason.into()),
        }
    }
}

/// `γ̲(η) = (1 − (η + μa)(1 − p)) / ((1 − p)(1 − η − μa))`.
pub(crate) fn gamma_lower(eta: f64, mua: f64, p: f64) -> f64 {
    (1.0 - (eta + mua) * (1.0 - p)) / ((1.0 - p) * (1.0 - eta - mua))
}

/// Reward making type-1 and type-2 users indifferent at `μ_η`.
pub(crate) fn reward(c_e: f64, eta: f64, mua: f64, gamma: f64) -> f64 {
    c_e * (1.0 - eta - mua + 1.0 / (gamma - 1.0))
}

/// Choose `(w, η, R, γ)` so that `μ_η = (0, η, 1 − η − μa)` is an equilibrium
/// achieving `(θ, δ)`-success.
pub fn design_ai_game(params: &GameParams, choices: &DesignChoices) -> Result<AiDesign, GameError> {
    params.validate()?;
    let ch = choices;
    if !(ch.w_frac > 0.0 && ch.w_frac < 1.0 && ch.eta_frac > 0.0 && ch.eta_frac <= 1.0) {
        return Err(GameError::Invalid(
            "w_frac must lie in (0,1) and eta_frac in (0,1]".into(),
        ));
    }
    if !(ch.gamma_margin > 0.0 && ch.eps_margin > 0.0) {
        return Err(GameError::Invalid(
            "gamma_margin and eps_margin must be positive".into(),
        ));
    }
    let GameParams {
        alpha_r,
        alpha_f,
        mua,
        p,
        theta,
        delta,
        ..
    } = *params;
    let da = params.delta_r_pow();
    let delta_a = params.delta_a();
    let es = |l: f64| params.eta_star(l);

    let f = (delta_a - es(theta) * delta) / (da * (delta_a - alpha_r * es(theta)));
    let theta_tilde = if theta > f {
        theta
    } else {
        let kappa = delta * (da * (1.0 - alpha_f) - 1.0) - alpha_r * da;
        let k_delta = kappa * kappa - 4.0 * delta * alpha_r * alpha_f * da;
        if k_delta < 0.0 {
            return Ok(AiDesign::infeasible("K_delta negative"));
        }
        let th2 = (-kappa + k_delta.sqrt()) / (2.0 * da * alpha_r);
        let eps = (theta - th2).max(0.0) + ch.eps_margin;
        (th2.max(1.0 - delta * (1.0 - alpha_f) / alpha_r) + eps).min(1.0)
    };
    let eta_star = es(theta_tilde);

    let lo = (1.0 / (da * theta_tilde)).max(1.0) / (1.0 - mua);
    let hi =
        (1.0 / delta_a).min((delta_a - eta_star * alpha_r) / (delta_a * (1.0 - mua - eta_star)));
    if !(hi > lo) {
        return Ok(AiDesign::infeasible("empty interval for w"));
    }
    let cwa = lo + ch.w_frac * (hi - lo);
    let eta_bar = delta_a * ((1.0 - mua) * cwa - 1.0) / (cwa * delta_a - alpha_r);
    if !(eta_star > eta_bar) {
        return Ok(AiDesign::infeasible("empty interval for eta"));
    }
    let eta = eta_bar + ch.eta_frac * (eta_star - eta_bar);
    let gamma_lower = gamma_lower(eta, mua, p);
    let gamma = gamma_lower + ch.gamma_margin;
    Ok(AiDesign {
        theta_tilde,
        w: cwa / (params.c * alpha_r),
        cw_alpha_r: cwa,
        eta,
        eta_bar,
        eta_star,
        reward: reward(params.c_e, eta, mua, gamma),
        gamma,
        gamma_lower,
        x_eta: p / (gamma - 1.0) + p * (1.0 - mua - eta) + eta,
        feasible: true,
        reason: None,
    })
}
