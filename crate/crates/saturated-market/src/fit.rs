use bp_core::replication_rng;
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{propagate_on_graph, Graph, MarketError, TefParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bin {
    pub lo: f64,
    pub hi: f64,
    pub transitions: u64,
    pub forwards: u64,
    pub mean: f64,
}

/// Continuous two-segment fit of `m_N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TefFit {
    pub m_bar: f64,
    pub kappa1: f64,
    pub kappa2: f64,
    pub a_break: f64,
    pub rss: f64,
    /// Set when the fit violates `m̄ > 0`, `κ1 > κ2 > 0`.
    pub degenerate: bool,
}

impl TefFit {
    pub fn params(&self, rho: f64) -> Result<TefParams, MarketError> {
        if self.degenerate {
            return Err(MarketError::Degenerate(format!("{self:?}")));
        }
        TefParams::new(self.m_bar, self.kappa1, self.kappa2, self.a_break, rho)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EstimateConfig {
    pub rho: f64,
    pub bin_width: u64,
    pub runs: u64,
    /// Runs reaching fewer users are not viral and are discarded.
    pub viral_min: u64,
}

impl Default for EstimateConfig {
    fn default() -> Self {
        EstimateConfig {
            rho: 1.0,
            bin_width: 1000,
            runs: 861,
            viral_min: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TefEstimate {
    pub bins: Vec<Bin>,
    pub fit: TefFit,
    pub runs: u64,
    pub viral_runs: u64,
}

fn weighted_ls(rows: &[[f64; 3]], y: &[f64], w: &[f64]) -> (Vec<f64>, f64) {
    let n = rows.len();
    let x = DMatrix::from_fn(n, 3, |i, j| rows[i][j] * w[i].sqrt());
    let b = DVector::from_iterator(n, y.iter().zip(w).map(|(y, w)| y * w.sqrt()));
    let coef = x
        .clone()
        .svd(true, true)
        .solve(&b, 1e-12)
        .expect("svd with vectors");
    let rss = (x * &coef - b).norm_squared();
    (coef.iter().copied().collect(), rss)
}

/// Weighted least squares of `m̄ − κ1·min(a, ā) − κ2·max(a − ā, 0)` over
/// `(a, m, weight)` points, best `ā` among `breakpoints`.
pub fn fit_two_slope(points: &[(f64, f64, f64)], breakpoints: &[f64]) -> TefFit {
    let y: Vec<f64> = points.iter().map(|p| p.1).collect();
    let w: Vec<f64> = points.iter().map(|p| p.2).collect();
    let mut best: Option<TefFit> = None;
    for &ab in breakpoints {
        let below = points.iter().filter(|p| p.0 <= ab).count();
        if below < 2 || points.len() - below < 2 {
            continue;
        }
        let rows: Vec<[f64; 3]> = points
            .iter()
            .map(|p| [1.0, -p.0.min(ab), -(p.0 - ab).max(0.0)])
            .collect();
        let (c, rss) = weighted_ls(&rows, &y, &w);
        if best.is_none_or(|b| rss < b.rss) {
            best = Some(TefFit {
                m_bar: c[0],
                kappa1: c[1],
                kappa2: c[2],
                a_break: ab,
                rss,
                degenerate: false,
            });
        }
    }
    let mut fit = best.unwrap_or_else(|| {
        // too few points for two segments: one line
        let amax = points.iter().map(|p| p.0).fold(0.0, f64::max);
        let (c, rss) = if points.len() >= 2 {
            let rows: Vec<[f64; 3]> = points.iter().map(|p| [1.0, -p.0, 0.0]).collect();
            weighted_ls(&rows, &y, &w)
        } else {
            (vec![y.first().copied().unwrap_or(0.0), 0.0, 0.0], 0.0)
        };
        TefFit {
            m_bar: c[0],
            kappa1: c[1],
            kappa2: c[1],
            a_break: amax,
            rss,
            degenerate: true,
        }
    });
    fit.degenerate |= !(fit.m_bar > 0.0 && fit.kappa1 > fit.kappa2 && fit.kappa2 > 0.0);
    fit
}

/// Bin effective forwards by total shares over viral single-seed runs on
/// `graph`, then fit the two-slope TeF.
pub fn estimate_tef(
    graph: &Graph,
    cfg: &EstimateConfig,
    seed: u64,
) -> Result<TefEstimate, MarketError> {
    if cfg.runs == 0 || cfg.bin_width == 0 {
        return Err(MarketError::Invalid(
            "runs and bin_width must be positive".into(),
        ));
    }
    if graph.node_count() == 0 {
        return Err(MarketError::Invalid("empty graph".into()));
    }
    let logs = (0..cfg.runs)
        .into_par_iter()
        .map(|r| {
            let mut rng = replication_rng(seed, r);
            let start = graph.id(rng.random_range(0..graph.node_count()));
            propagate_on_graph(graph, &[start], cfg.rho, &mut rng)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut acc: Vec<(u64, u64)> = Vec::new();
    let mut viral = 0;
    for log in logs
        .iter()
        .filter(|l| l.last().is_some_and(|e| e.a >= cfg.viral_min))
    {
        viral += 1;
        for e in log {
            let k = ((e.a - e.forwards) / cfg.bin_width) as usize;
            if acc.len() <= k {
                acc.resize(k + 1, (0, 0));
            }
            acc[k].0 += 1;
            acc[k].1 += e.forwards;
        }
    }
    if viral == 0 {
        return Err(MarketError::Insufficient(format!(
            "no run reached {} users",
            cfg.viral_min
        )));
    }
    let wid = cfg.bin_width as f64;
    let bins: Vec<Bin> = acc
        .iter()
        .enumerate()
        .filter(|(_, b)| b.0 > 0)
        .map(|(k, &(t, f))| Bin {
            lo: k as f64 * wid,
            hi: (k + 1) as f64 * wid,
            transitions: t,
            forwards: f,
            mean: f as f64 / t as f64,
        })
        .collect();
    let points: Vec<(f64, f64, f64)> = bins
        .iter()
        .map(|b| (0.5 * (b.lo + b.hi), b.mean, b.transitions as f64))
        .collect();
    let edges: Vec<f64> = bins.iter().map(|b| b.hi).collect();
    Ok(TefEstimate {
        fit: fit_two_slope(&points, &edges),
        bins,
        runs: cfg.runs,
        viral_runs: viral,
    })
}
