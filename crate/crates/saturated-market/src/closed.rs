use serde::Serialize;

use crate::{MarketError, TefParams};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `a(t) = w1 − w2·exp(−w3·e^t)` on one linear piece of the TeF.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Phase {
    pub w1: f64,
    pub w2: f64,
    pub w3: f64,
}

impl Phase {
    pub fn a(&self, t: f64) -> f64 {
        self.w1 - self.w2 * (-self.w3 * t.exp()).exp()
    }

    /// Totals at epoch `n`, with `t_n ≈ γ + ln n`.
    pub fn a_epoch(&self, n: f64) -> f64 {
        self.w1 - self.w2 * (-n * self.rate()).exp()
    }

    /// Per-epoch growth rate `w3·e^γ = κρ`.
    pub fn rate(&self) -> f64 {
        self.w3 * EULER_GAMMA.exp()
    }

    /// Epoch where `a_epoch(n) − n` peaks.
    pub fn peak_epoch(&self) -> f64 {
        (self.w2 * self.rate()).ln() / self.rate()
    }

    pub fn peak(&self) -> f64 {
        self.w1 - (1.0 + (self.w2 * self.rate()).ln()) / self.rate()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedForm {
    pub params: TefParams,
    pub a0: f64,
    pub c0: f64,
    pub phase1: Phase,
    /// Absent when the totals never reach the breakpoint before extinction.
    pub phase2: Option<Phase>,
    pub tau_s: Option<f64>,
    pub tau_e: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShareTrajectory {
    pub times: Vec<f64>,
    pub a: Vec<f64>,
    pub c: Vec<f64>,
    pub tau_s: Option<f64>,
    pub tau_e: f64,
    pub n_s: Option<f64>,
    pub n_e: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Metrics {
    pub c_star: f64,
    pub n_e: f64,
    pub max_reach: f64,
    pub tau_s: Option<f64>,
    pub tau_e: f64,
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    // f(lo) > 0 ≥ f(hi)
    while hi - lo > tol * hi.abs().max(1.0) {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Approximate share trajectories from `a0` total and `c0` current shares.
pub fn closed_form(params: &TefParams, a0: f64, c0: f64) -> Result<ClosedForm, MarketError> {
    params.validate()?;
    let g = (-EULER_GAMMA).exp();
    let TefParams {
        m_bar,
        kappa1,
        kappa2,
        a_break,
        rho,
    } = *params;
    let w1 = m_bar / kappa1;
    if !(c0 > 0.0 && a0 >= c0 && a0 < a_break.min(w1)) {
        return Err(MarketError::Invalid(format!(
            "need 0 < c0 ≤ a0 < min(ā, m̄/κ1), got a0={a0}, c0={c0}"
        )));
    }
    let w3 = kappa1 * rho * g;
    let phase1 = Phase {
        w1,
        w2: (w1 - a0) * w3.exp(),
        w3,
    };
    let (mut phase2, mut tau_s) = (None, None);
    if w1 > a_break {
        let es = -((w1 - a_break) / phase1.w2).ln() / w3;
        let w1b = params.m_tilde() / kappa2;
        let w3b = kappa2 * rho * g;
        phase2 = Some(Phase {
            w1: w1b,
            w2: (w1b - a_break) * (w3b * es).exp(),
            w3: w3b,
        });
        tau_s = Some(es.ln());
    }
    let mut cf = ClosedForm {
        params: *params,
        a0,
        c0,
        phase1,
        phase2,
        tau_s,
        tau_e: f64::INFINITY,
    };
    let (mut lo, step) = (0.0, 0.01);
    while cf.c_raw(lo + step) > 0.0 {
        lo += step;
        if lo > 100.0 {
            return Err(MarketError::Degenerate(
                "current shares never vanish".into(),
            ));
        }
    }
    cf.tau_e = bisect(|t| cf.c_raw(t), lo, lo + step, 1e-12);
    if cf.tau_s.is_some_and(|s| s >= cf.tau_e) {
        cf.phase2 = None;
        cf.tau_s = None;
    }
    Ok(cf)
}

impl ClosedForm {
    fn phase_at(&self, t: f64) -> &Phase {
        match (self.tau_s, &self.phase2) {
            (Some(s), Some(p)) if t > s => p,
            _ => &self.phase1,
        }
    }

    fn a_raw(&self, t: f64) -> f64 {
        self.phase_at(t).a(t)
    }

    fn c_raw(&self, t: f64) -> f64 {
        self.c0 - self.a0 + self.a_raw(t) + (-EULER_GAMMA).exp() * (1.0 - t.exp())
    }

    /// Total shares, frozen after extinction.
    pub fn a(&self, t: f64) -> f64 {
        self.a_raw(t.min(self.tau_e))
    }

    pub fn c(&self, t: f64) -> f64 {
        if t < self.tau_e {
            self.c_raw(t).max(0.0)
        } else {
            0.0
        }
    }

    pub fn n_s(&self) -> Option<f64> {
        self.tau_s.map(|s| (s - EULER_GAMMA).exp())
    }

    fn phase_at_epoch(&self, n: f64) -> &Phase {
        match (self.n_s(), &self.phase2) {
            (Some(s), Some(p)) if n > s => p,
            _ => &self.phase1,
        }
    }

    /// Epoch life span `n_e`: root of `a_epoch(n) = n`.
    pub fn n_e(&self) -> Result<f64, MarketError> {
        if let (Some(ns), Some(p)) = (self.n_s(), &self.phase2) {
            if p.a_epoch(ns) - ns > 0.0 {
                return Ok(bisect(|n| p.a_epoch(n) - n, ns, p.w1, 1e-14));
            }
        }
        let p = &self.phase1;
        let hi = self.n_s().map_or(p.w1, |s| s.min(p.w1));
        if !(p.a_epoch(1.0) - 1.0 > 0.0) || p.a_epoch(hi) - hi > 0.0 {
            return Err(MarketError::Degenerate(
                "no fixed point for the life span".into(),
            ));
        }
        Ok(bisect(|n| p.a_epoch(n) - n, 1.0, hi, 1e-14))
    }

    /// Totals at epoch `n`, frozen after `n_e`.
    pub fn a_epoch(&self, n: f64) -> Result<f64, MarketError> {
        let n = n.min(self.n_e()?);
        Ok(self.phase_at_epoch(n).a_epoch(n))
    }

    /// Current shares at epoch `n`: `a_epoch(n) − n` up to `n_e`.
    pub fn c_epoch(&self, n: f64) -> Result<f64, MarketError> {
        let ne = self.n_e()?;
        Ok(if n <= ne {
            self.phase_at_epoch(n).a_epoch(n) - n
        } else {
            0.0
        })
    }

    /// Peak current shares from the phase holding the maximiser.
    pub fn c_star(&self) -> f64 {
        let p1 = &self.phase1;
        match (self.n_s(), &self.phase2) {
            (Some(ns), Some(p2)) if p1.peak_epoch() > ns => {
                if p2.peak_epoch() >= ns {
                    p2.peak()
                } else {
                    self.params.a_break - ns
                }
            }
            _ if p1.peak_epoch() <= 0.0 => self.c0,
            _ => p1.peak(),
        }
    }

    pub fn sample(&self, times: &[f64]) -> Result<ShareTrajectory, MarketError> {
        Ok(ShareTrajectory {
            times: times.to_vec(),
            a: times.iter().map(|&t| self.a(t)).collect(),
            c: times.iter().map(|&t| self.c(t)).collect(),
            tau_s: self.tau_s,
            tau_e: self.tau_e,
            n_s: self.n_s(),
            n_e: self.n_e()?,
        })
    }

    /// `(n, t_n, a, c)` every `step` epochs up to the life span.
    pub fn epoch_rows(&self, step: u64) -> Result<Vec<[f64; 4]>, MarketError> {
        let ne = self.n_e()?;
        let step = step.max(1);
        let mut rows = Vec::new();
        let mut n = 1;
        loop {
            let nf = (n as f64).min(ne.ceil());
            rows.push([
                nf,
                EULER_GAMMA + nf.ln(),
                self.a_epoch(nf)?,
                self.c_epoch(nf)?,
            ]);
            if nf >= ne {
                break;
            }
            n += step;
        }
        Ok(rows)
    }
}

pub fn metrics(params: &TefParams, a0: f64, c0: f64) -> Result<Metrics, MarketError> {
    let cf = closed_form(params, a0, c0)?;
    let n_e = cf.n_e()?;
    Ok(Metrics {
        c_star: cf.c_star(),
        n_e,
        max_reach: n_e,
        tau_s: cf.tau_s,
        tau_e: cf.tau_e,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn starts_at_seed() {
        let cf = closed_form(&TefParams::snap(0.6), 2.0, 2.0).unwrap();
        assert!((cf.a(0.0) - 2.0).abs() < 1e-9);
        assert!((cf.c(0.0) - 2.0).abs() < 1e-9);
    }

    #[test]
    fn continuous_at_switch() {
        let cf = closed_form(&TefParams::snap(0.6), 2.0, 2.0).unwrap();
        let s = cf.tau_s.unwrap();
        let p2 = cf.phase2.unwrap();
        assert!((cf.phase1.a(s) - 35000.0).abs() < 1e-8);
        assert!((p2.a(s) - 35000.0).abs() < 1e-8);
    }

    #[test]
    fn epoch_identity() {
        let cf = closed_form(&TefParams::snap(0.4), 2.0, 2.0).unwrap();
        let ne = cf.n_e().unwrap();
        for n in [1.0, 10.0, 1000.0, 20_000.0, ne.floor()] {
            assert_eq!(cf.a_epoch(n).unwrap() - cf.c_epoch(n).unwrap(), n);
        }
        assert_eq!(cf.c_epoch(ne + 1.0).unwrap(), 0.0);
    }

    #[test]
    fn life_span_residual() {
        let cf = closed_form(&TefParams::snap(0.6), 2.0, 2.0).unwrap();
        let ne = cf.n_e().unwrap();
        let p = cf.phase2.unwrap();
        assert!((p.w1 - p.w2 * (-ne * p.rate()).exp() - ne).abs() < 1e-6);
    }

    #[test]
    fn frozen_after_extinction() {
        let cf = closed_form(&TefParams::snap(0.6), 2.0, 2.0).unwrap();
        assert_eq!(cf.a(cf.tau_e + 1.0), cf.a(cf.tau_e + 5.0));
        assert_eq!(cf.c(cf.tau_e + 0.1), 0.0);
    }

    #[test]
    fn single_phase_when_break_unreachable() {
        let p = TefParams::new(10.0, 1e-3, 1e-4, 20_000.0, 0.5).unwrap();
        let cf = closed_form(&p, 1.0, 1.0).unwrap();
        assert!(cf.phase2.is_none() && cf.tau_s.is_none());
        assert!(cf.n_e().unwrap() < 10_000.0);
    }

    #[test]
    fn rejects_seed_past_break() {
        assert!(closed_form(&TefParams::snap(0.6), 40_000.0, 1.0).is_err());
    }
}
