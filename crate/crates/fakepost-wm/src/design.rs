use serde::{Deserialize, Serialize};

use crate::{
    bounds, limit_proportions, Actuality, Limits, UserMix, Warning, WarningKind, WmError, WmParams,
};

/// Which real-post threshold the designs saturate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaMode {
    /// `δ` on all tags.
    Qos,
    /// `δ_a` on non-adversarial tags.
    #[default]
    Iqos,
}

impl DeltaMode {
    pub fn target(self, params: &WmParams, mix: &UserMix, delta: f64) -> f64 {
        match self {
            DeltaMode::Qos => delta,
            DeltaMode::Iqos => params.delta_a(mix, delta),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MechanismDesign {
    pub kind: WarningKind,
    pub w: f64,
    pub b: f64,
    pub zeta: f64,
    pub delta_target: f64,
    pub warning: Warning,
    pub fake: Limits,
    pub real: Limits,
    pub constraint_ok: bool,
    /// Adversary level below which ea keeps the adversary-free QoS.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_a_threshold: Option<f64>,
}

fn finish(
    kind: WarningKind,
    warning: Warning,
    delta_target: f64,
    params: &WmParams,
    mix: &UserMix,
) -> Result<MechanismDesign, WmError> {
    let real = limit_proportions(&warning, Actuality::R, params, mix)?;
    let fake = limit_proportions(&warning, Actuality::F, params, mix)?;
    Ok(MechanismDesign {
        kind,
        w: warning.w,
        b: warning.b,
        zeta: warning.zeta,
        delta_target,
        constraint_ok: real.max_root() <= delta_target + 1e-6,
        warning,
        fake,
        real,
        delta_a_threshold: None,
    })
}

/// `b` placing the real-post limit exactly at `delta` for weight `w`.
pub fn b_star(params: &WmParams, mix: &UserMix, delta: f64, w: f64) -> f64 {
    let r = &params.real;
    let s = delta * r.alpha_x + (1.0 - delta) * r.alpha_y;
    let d = delta * ((mix.mu1 + mix.mu2) * r.eta + mix.mua * params.eta_a)
        - r.eta * s * (mix.mu1 * params.rho + mix.mu2 * params.gamma);
    delta / (1.0 - delta) * (w * mix.mu2 * s * r.eta / d - 1.0)
}

fn eo_b(params: &WmParams, mix: &UserMix, target: f64, w: f64) -> Result<f64, WmError> {
    let (lower, _) = bounds(Actuality::R, params, mix);
    if target <= lower {
        return Err(WmError::Unattainable { target, lower });
    }
    let free = limit_proportions(
        &Warning::eo(w, 0.0, params.gamma),
        Actuality::R,
        params,
        mix,
    )?;
    if free.max_root() <= target {
        return Ok(0.0);
    }
    let real_root = |b: f64| {
        limit_proportions(&Warning::eo(w, b, params.gamma), Actuality::R, params, mix)
            .map(|l| l.max_root())
    };
    let closed = b_star(params, mix, target, w);
    if closed.is_finite() && closed > 0.0 && (real_root(closed)? - target).abs() <= 1e-9 {
        return Ok(closed);
    }
    // outside the linear regime: bisect on the decreasing real-post root
    let mut hi = 1.0;
    while real_root(hi)? > target {
        hi *= 2.0;
        if hi > 1e9 {
            return Err(WmError::Unattainable { target, lower });
        }
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if real_root(mid)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-12 * hi.max(1.0) {
            break;
        }
    }
    Ok(hi)
}

/// eo warning with a given weight and the constraint-saturating `b`.
pub fn optimize_eo_with_w(
    params: &WmParams,
    mix: &UserMix,
    delta: f64,
    mode: DeltaMode,
    w: f64,
) -> Result<MechanismDesign, WmError> {
    let target = mode.target(params, mix, delta);
    let b = eo_b(params, mix, target, w)?;
    finish(
        WarningKind::Eo,
        Warning::eo(w, b, params.gamma),
        target,
        params,
        mix,
    )
}

/// Optimal eo design: `w = 1/α_x^F − γ`, `b` saturating the real-post constraint.
pub fn optimize_eo(
    params: &WmParams,
    mix: &UserMix,
    delta: f64,
    mode: DeltaMode,
) -> Result<MechanismDesign, WmError> {
    let w = 1.0 / params.fake.alpha_x - params.gamma;
    optimize_eo_with_w(params, mix, delta, mode, w)
}

/// ea design: eo's `(w, b)` for the adversary-free population plus the
/// compensating term. Also returns the adversary threshold `Δ_a`.
pub fn design_ea(params: &WmParams, mix: &UserMix, delta: f64) -> Result<MechanismDesign, WmError> {
    let clean = mix.without_adversaries();
    let na = optimize_eo(params, &clean, delta, DeltaMode::Qos)?;
    let (w, b) = (na.w, na.b);
    let beta_na = na.fake.qos;
    let f = &params.fake;
    let threshold = mix.mu2
        * f.eta
        * (1.0 / f.alpha_x - na.warning.omega(beta_na))
        * (beta_na * f.alpha_x + (1.0 - beta_na) * f.alpha_y)
        / (beta_na * params.eta_a);
    let mut d = finish(
        WarningKind::Ea,
        Warning::ea(w, b, params, mix),
        delta,
        params,
        mix,
    )?;
    d.delta_a_threshold = Some(threshold);
    Ok(d)
}

/// eh design: the ea warning amplified by `ζ*`.
pub fn design_eh(
    params: &WmParams,
    mix: &UserMix,
    delta: f64,
    mode: DeltaMode,
) -> Result<MechanismDesign, WmError> {
    let ea = design_ea(params, mix, delta)?;
    let oa = ea.warning;
    let target = mode.target(params, mix, delta);
    let r = &params.real;
    let (m1, m2, ma) = (mix.mu1, mix.mu2, mix.mua);
    let num = target
        * (m2 * r.eta + m1 * (1.0 - r.alpha_x * params.rho) * r.eta + ma * params.eta_a)
        - (1.0 - target) * m1 * params.rho * r.alpha_y * r.eta;
    let den = m2 * oa.omega(target) * (target * r.alpha_x + (1.0 - target) * r.alpha_y) * r.eta;
    let zeta_bar = num / den;
    let (lower_f, _) = bounds(Actuality::F, params, mix);
    let zeta = if zeta_bar < 1.0 / (r.alpha_y * oa.omega(target)) || (lower_f == 0.0 && oa.b == 0.0)
    {
        zeta_bar
    } else {
        1.0 / (oa.omega(lower_f) * params.fake.alpha_y)
    };
    let mut d = finish(WarningKind::Eh, oa.scaled(zeta), target, params, mix)?;
    d.delta_a_threshold = ea.delta_a_threshold;
    Ok(d)
}

/// eh2 design: eo warning with the larger weight `1/α_x^R − γ`.
pub fn design_eh2(
    params: &WmParams,
    mix: &UserMix,
    delta: f64,
    mode: DeltaMode,
) -> Result<MechanismDesign, WmError> {
    let w = 1.0 / params.real.alpha_x - params.gamma;
    let mut d = optimize_eo_with_w(params, mix, delta, mode, w)?;
    d.kind = WarningKind::Eh2;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn baseline_mix(mua: f64) -> UserMix {
        UserMix::new(0.0, 1.0 - mua, mua).unwrap()
    }

    #[test]
    fn eo_weight_is_upper_limit() {
        let d = optimize_eo(
            &WmParams::baseline(),
            &baseline_mix(0.0),
            0.02,
            DeltaMode::Qos,
        )
        .unwrap();
        assert!((d.w - (1.0 / 0.85 - 0.1)).abs() < 1e-15);
        assert!((d.w - 1.0765).abs() < 1e-4);
    }

    #[test]
    fn constraint_saturates() {
        let p = WmParams::baseline();
        for mua in [0.0, 0.01, 0.02] {
            let d = optimize_eo(&p, &baseline_mix(mua), 0.02, DeltaMode::Qos).unwrap();
            assert!(d.b > 0.0);
            assert!(
                (d.real.max_root() - 0.02).abs() < 1e-6,
                "{:?}",
                d.real.roots
            );
        }
    }

    #[test]
    fn loose_constraint_needs_no_b() {
        let d = optimize_eo(
            &WmParams::baseline(),
            &baseline_mix(0.01),
            0.95,
            DeltaMode::Qos,
        )
        .unwrap();
        assert_eq!(d.b, 0.0);
        assert!(d.constraint_ok);
    }

    #[test]
    fn unattainable_target() {
        let p = WmParams::naive();
        let mix = WmParams::naive_mix(0.1);
        let (lo, _) = bounds(Actuality::R, &p, &mix);
        let r = optimize_eo(&p, &mix, lo * 0.5, DeltaMode::Qos);
        assert!(matches!(r, Err(WmError::Unattainable { .. })));
    }

    #[test]
    fn eh2_weight() {
        let p = WmParams::naive();
        let d = design_eh2(&p, &WmParams::naive_mix(0.0), 0.05, DeltaMode::Iqos).unwrap();
        assert!((d.w - 8.233_333_333_333_333).abs() < 1e-12);
        assert_eq!(d.real.roots.len(), 1);
        assert!(d.real.roots[0] <= 0.05 + 1e-6);
    }

    #[test]
    fn ea_without_adversaries_is_eo() {
        let p = WmParams::naive();
        let mix = WmParams::naive_mix(0.0);
        let ea = design_ea(&p, &mix, 0.05).unwrap();
        let eo = optimize_eo(&p, &mix, 0.05, DeltaMode::Qos).unwrap();
        for b in [0.0, 0.3, 0.9] {
            assert_eq!(ea.warning.omega(b), eo.warning.omega(b));
        }
    }
}
