use bp_core::replication_rng;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{design_ai_game, verify_equilibria, DesignChoices, GameParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StudyConfig {
    pub samples: u64,
    /// Normalised innate gap `(α_F − α_R)/α_F`.
    pub d: f64,
    pub theta: f64,
    pub choices: DesignChoices,
}

impl Default for StudyConfig {
    fn default() -> Self {
        StudyConfig {
            samples: 10_000,
            d: 0.08,
            theta: 0.75,
            choices: DesignChoices::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StudySample {
    pub alpha_r: f64,
    pub mua: f64,
    pub a: f64,
    pub p: f64,
    pub feasible: bool,
    pub ai: bool,
    /// Degradation at the second equilibrium, when there is one.
    pub degradation: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StudySummary {
    pub samples: u64,
    pub feasible: f64,
    pub ai: f64,
    pub second_ne: f64,
    /// Samples without a second equilibrium count as below 10%.
    pub degradation_below_10: f64,
}

/// `α_R ~ U(0.25, 0.3)`, `μa ~ U(0, 0.2)`, `a ~ U(2, 3)`, `p ~ U(0, 0.5)`,
/// `δ = α_R + 0.01`, `α_F = α_R/(1 − d)`.
pub fn draw_config<R: Rng + ?Sized>(rng: &mut R, d: f64, theta: f64) -> GameParams {
    let alpha_r = rng.random_range(0.25..0.3);
    let mua = rng.random_range(0.0..0.2);
    let a = rng.random_range(2.0..3.0);
    let p = rng.random_range(f64::EPSILON..0.5);
    GameParams {
        alpha_r,
        alpha_f: alpha_r / (1.0 - d),
        mua,
        p,
        q_p: 1.0,
        q_np: 0.0,
        c_e: 1.0,
        a,
        b: 1.0,
        c: 1.0,
        theta,
        delta: alpha_r + 0.01,
    }
}

pub fn run_study(cfg: &StudyConfig, seed: u64) -> (Vec<StudySample>, StudySummary) {
    let samples: Vec<StudySample> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let params = draw_config(&mut replication_rng(seed, i), cfg.d, cfg.theta);
            let mut s = StudySample {
                alpha_r: params.alpha_r,
                mua: params.mua,
                a: params.a,
                p: params.p,
                feasible: false,
                ai: false,
                degradation: None,
            };
            if let Ok(design) = design_ai_game(&params, &cfg.choices) {
                s.feasible = design.feasible;
                if let Ok(rep) = verify_equilibria(&design, &params) {
                    s.ai = rep.ai;
                    s.degradation = rep.second.map(|n| n.degradation);
                }
            }
            s
        })
        .collect();
    let n = samples.len().max(1) as f64;
    let frac =
        |f: &dyn Fn(&StudySample) -> bool| samples.iter().filter(|s| f(s)).count() as f64 / n;
    let summary = StudySummary {
        samples: cfg.samples,
        feasible: frac(&|s| s.feasible),
        ai: frac(&|s| s.ai),
        second_ne: frac(&|s| s.degradation.is_some()),
        degradation_below_10: frac(&|s| s.ai && s.degradation.is_none_or(|d| d < 10.0)),
    };
    (samples, summary)
}
