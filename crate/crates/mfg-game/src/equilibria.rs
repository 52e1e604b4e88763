use serde::Serialize;

use crate::{beta_fixed_point, Actuality, AiDesign, GameError, GameParams, Mix};

/// `P_μ(S)` from the limit fake-tag fractions, with the convention that
/// a population of abstainers and adversaries never succeeds.
pub fn success_probability(
    mix: &Mix,
    design: &AiDesign,
    params: &GameParams,
) -> Result<f64, GameError> {
    mix.validate(params.mua)?;
    if mix.mu1 + mix.mu2 <= 0.0 {
        return Ok(0.0);
    }
    let scale = 1.0 - mix.eta_a(params.mua);
    let bf = beta_fixed_point(mix, design.w, params, Actuality::F);
    let br = beta_fixed_point(mix, design.w, params, Actuality::R);
    let mut s = 0.0;
    if bf >= params.theta * scale {
        s += params.p;
    }
    if br <= params.delta * scale {
        s += 1.0 - params.p;
    }
    Ok(s)
}

/// Utility of a user playing `strategy` (0, 1 or 2) against `mix`.
pub fn utility_eval(
    strategy: u8,
    mix: &Mix,
    design: &AiDesign,
    params: &GameParams,
) -> Result<f64, GameError> {
    let prob = success_probability(mix, design, params)?;
    let share = design.reward * prob / (mix.mu1 + params.mua + design.gamma * mix.mu2);
    match strategy {
        0 => Ok(params.q_np),
        1 => Ok(params.q_p + share),
        2 => Ok(params.q_p - params.c_e + design.gamma * share),
        s => Err(GameError::Invalid(format!("unknown strategy {s}"))),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SecondNe {
    pub x: f64,
    pub beta_f: f64,
    pub beta_r: f64,
    pub success: f64,
    /// `(θ_a − β_F)·100/θ_a`.
    pub degradation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NeReport {
    pub eta: f64,
    pub beta_f: f64,
    pub beta_r: f64,
    pub utilities: [f64; 3],
    pub ai: bool,
    pub second: Option<SecondNe>,
    pub note: Option<String>,
}

fn check(ok: bool, what: &str) -> Result<(), GameError> {
    if ok {
        Ok(())
    } else {
        Err(GameError::Violated(what.into()))
    }
}

/// Check that `μ_η` is an AI equilibrium of the designed game, and
/// characterise the second equilibrium `μ_{x_η}` when it exists.
pub fn verify_equilibria(design: &AiDesign, params: &GameParams) -> Result<NeReport, GameError> {
    if !design.feasible {
        return Err(GameError::Invalid(format!(
            "infeasible design: {}",
            design.reason.as_deref().unwrap_or("?")
        )));
    }
    let mua = params.mua;
    let delta_a = params.delta_a();
    let tol = 1e-12;
    let m = Mix::x(design.eta, mua);
    let bf = beta_fixed_point(&m, design.w, params, Actuality::F);
    let br = beta_fixed_point(&m, design.w, params, Actuality::R);
    check(
        bf >= design.theta_tilde * (1.0 - mua) - tol,
        "beta_F(eta) >= theta_tilde (1 - mua)",
    )?;
    check(br <= delta_a + tol, "beta_R(eta) <= delta_a")?;
    let u = [
        utility_eval(0, &m, design, params)?,
        utility_eval(1, &m, design, params)?,
        utility_eval(2, &m, design, params)?,
    ];
    check(
        (u[1] - u[2]).abs() <= 1e-10 * u[1].abs().max(1.0),
        "U(1) = U(2) at mu_eta",
    )?;
    check(u[1] > u[0], "U(1) > U(0) at mu_eta")?;

    let x = design.x_eta;
    let mut report = NeReport {
        eta: design.eta,
        beta_f: bf,
        beta_r: br,
        utilities: u,
        ai: true,
        second: None,
        note: None,
    };
    if !(x > design.eta_star && x < 1.0 - mua) {
        report.note = Some("no second NE detected".into());
        return Ok(report);
    }
    let mx = Mix::x(x, mua);
    let bfx = beta_fixed_point(&mx, design.w, params, Actuality::F);
    let brx = beta_fixed_point(&mx, design.w, params, Actuality::R);
    check(brx <= delta_a + tol, "beta_R(x_eta) <= delta_a")?;
    let kf = design.cw_alpha_r * params.delta_r_pow();
    let x_f = (1.0 - mua - 1.0 / kf) / (1.0 - params.alpha_f);
    if x <= x_f {
        check(
            bfx >= 1.0 / kf - tol,
            "beta_F(x_eta) >= 1/(c w alpha_R Delta^a)",
        )?;
    } else {
        check(
            bfx >= params.alpha_f * (1.0 - mua) - tol,
            "beta_F(x_eta) >= alpha_F (1 - mua)",
        )?;
    }
    let theta_a = params.theta * (1.0 - mua);
    if bfx >= theta_a {
        report.note = Some("mu_x_eta meets theta; not an equilibrium".into());
        return Ok(report);
    }
    let success = success_probability(&mx, design, params)?;
    let u1 = utility_eval(1, &mx, design, params)?;
    let u2 = utility_eval(2, &mx, design, params)?;
    check(
        (u1 - u2).abs() <= 1e-10 * u1.abs().max(1.0),
        "U(1) = U(2) at mu_x_eta",
    )?;
    report.second = Some(SecondNe {
        x,
        beta_f: bfx,
        beta_r: brx,
        success,
        degradation: (theta_a - bfx) * 100.0 / theta_a,
    });
    Ok(report)
}
