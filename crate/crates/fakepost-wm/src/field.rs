use ode_engine::{classify_scalar, EqKind, ScalarField};
use serde::Serialize;

use crate::{Actuality, UserMix, Warning, WmError, WmParams};

const GRID: usize = 20_000;
const TOL: f64 = 1e-13;

/// Drift of the fake-tag proportion for a `u`-post under warning `ω`.
pub fn gbeta_wm(
    beta: f64,
    u: Actuality,
    warning: &Warning,
    params: &WmParams,
    mix: &UserMix,
) -> f64 {
    let p = params.post(u);
    let o = warning.omega(beta);
    let inner = -beta * mix.mu2 - beta * mix.mu1 * (1.0 - p.alpha_x * params.rho)
        + (1.0 - beta) * mix.mu1 * params.rho * p.alpha_y
        + mix.mu2 * (beta * (o * p.alpha_x).min(1.0) + (1.0 - beta) * (o * p.alpha_y).min(1.0));
    inner * params.m_f * p.eta - beta * mix.mua * params.m_f * params.eta_a
}

/// Abscissas where `ω(β)·α = 1` for either sensitivity, plus 0.
pub fn kinks(warning: &Warning, alpha_x: f64, alpha_y: f64) -> Vec<f64> {
    let mut out = vec![0.0];
    for a in [alpha_x, alpha_y] {
        let f = |b: f64| warning.omega(b) * a - 1.0;
        let (mut lo, mut hi) = (0.0, 1.0);
        if f(lo) >= 0.0 || f(hi) <= 0.0 {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push(hi);
    }
    out
}

/// `(β̲^u, β̄^u)`: every limit proportion lies in `(β̲, β̄]`.
pub fn bounds(u: Actuality, params: &WmParams, mix: &UserMix) -> (f64, f64) {
    let p = params.post(u);
    let q = (mix.mu2 + mix.mu1 * (1.0 - (p.alpha_x - p.alpha_y) * params.rho)) * p.eta
        + mix.mua * params.eta_a;
    let lo = mix.mu1 * params.rho * p.alpha_y * p.eta / q;
    let hi = (mix.mu2 + mix.mu1 * params.rho * p.alpha_y) * p.eta / q;
    (lo, hi)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Limits {
    pub actuality: Actuality,
    /// All zeros of the field, increasing.
    pub roots: Vec<f64>,
    pub attractors: Vec<f64>,
    pub lower: f64,
    pub upper: f64,
    /// Smallest limit proportion.
    pub qos: f64,
    /// `qos` among non-adversarial tags.
    pub iqos: f64,
}

impl Limits {
    pub fn max_root(&self) -> f64 {
        self.roots.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

pub fn limit_proportions(
    warning: &Warning,
    u: Actuality,
    params: &WmParams,
    mix: &UserMix,
) -> Result<Limits, WmError> {
    let p = *params.post(u);
    let (w, pr, m) = (*warning, *params, *mix);
    let field = ScalarField::new(move |b| gbeta_wm(b, u, &w, &pr, &m))
        .with_kinks(kinks(warning, p.alpha_x, p.alpha_y));
    let rep = classify_scalar(&field, GRID, TOL)?;
    let roots: Vec<f64> = rep.equilibria.iter().map(|e| e.beta).collect();
    if roots.is_empty() {
        return Err(WmError::NoRoot(u));
    }
    let attractors = rep
        .equilibria
        .iter()
        .filter(|e| e.kind == EqKind::Attractor)
        .map(|e| e.beta)
        .collect();
    let (lower, upper) = bounds(u, params, mix);
    let qos = roots[0];
    Ok(Limits {
        actuality: u,
        roots,
        attractors,
        lower,
        upper,
        qos,
        iqos: qos * params.iqos_factor(mix, u),
    })
}
