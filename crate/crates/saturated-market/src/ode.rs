use ode_engine::{eta, picard_solve_windowed};

use crate::{MarketError, StpTrajectory, TefParams};

/// Drift of `(ψc, ψa)` at absolute ODE time `t`, with `a = ψa·η(t)`.
pub fn stpbp_rhs(params: &TefParams, y: &[f64], t: f64) -> Vec<f64> {
    if y[0] <= 0.0 {
        return vec![0.0, 0.0];
    }
    let m = params.tef(y[1] * eta(t) as f64);
    vec![m - 1.0 - y[0], m - y[1]]
}

/// Sup-distance over `t_k ∈ [t_n, t_n + horizon]` between the simulated
/// ratios and the ODE solution started from them at epoch `n_start`.
pub fn stpbp_gap(
    params: &TefParams,
    traj: &StpTrajectory,
    n_start: u64,
    horizon: f64,
) -> Result<f64, MarketError> {
    if n_start == 0 {
        return Err(MarketError::Invalid("n_start must be positive".into()));
    }
    let recs = &traj.records;
    let start = n_start as usize;
    if start >= recs.len() {
        return Err(MarketError::Insufficient(format!(
            "path ended before epoch {n_start}"
        )));
    }
    let t0: f64 = (1..=n_start).rev().map(|k| 1.0 / k as f64).sum();
    let y0 = [recs[start].psi_c, recs[start].psi_a];
    let mesh = (horizon * 1000.0).ceil() as usize;
    let sol = picard_solve_windowed(
        |y, s| stpbp_rhs(params, y, t0 + s),
        &y0,
        horizon,
        8,
        mesh,
        0.05,
    )?;
    let mut t = t0;
    let mut gap: f64 = 0.0;
    for r in &recs[start..] {
        if r.n > n_start {
            t += 1.0 / r.n as f64;
        }
        if t > t0 + horizon {
            return Ok(gap);
        }
        let y = sol.at(t - t0);
        gap = gap.max((r.psi_c - y[0]).abs()).max((r.psi_a - y[1]).abs());
    }
    if traj.extinct {
        // extinct before the window closed: compare against the frozen ODE
        Ok(gap)
    } else {
        Err(MarketError::Insufficient(
            "trajectory shorter than the window".into(),
        ))
    }
}
