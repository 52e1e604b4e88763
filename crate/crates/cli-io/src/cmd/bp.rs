use bp_core::{
    dichotomy, ratio_sequence, replication_rng, simulate as run_bp, ConstantMean, LinearSaturating,
    MeanMatrix, MeanModel, PoissonOffspring, PopulationState, SimConfig, Trajectory, UniformDeath,
};
use ode_engine::{classify_scalar, g_beta_field, h_of_beta, lift_limits};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{one, one_u};
use crate::emit::{bp_rows, fmt_num, write_csv, BP_HEADER};
use crate::{CliError, Context};

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum Model {
    /// Constant 2×2 means `m_ij`.
    #[default]
    Constant,
    /// Single-type `start − slope·aˣ` up to `cutoff`, `floor` after.
    Linear,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub(crate) struct BpConfig {
    #[serde(default)]
    model: Model,
    #[serde(default)]
    m_xx: Option<f64>,
    #[serde(default)]
    m_xy: Option<f64>,
    #[serde(default)]
    m_yx: Option<f64>,
    #[serde(default)]
    m_yy: Option<f64>,
    #[serde(default)]
    start: Option<f64>,
    #[serde(default)]
    slope: Option<f64>,
    #[serde(default)]
    cutoff: Option<f64>,
    #[serde(default)]
    floor: Option<f64>,
    #[serde(default = "one")]
    death_rate: f64,
    cx0: u64,
    cy0: u64,
    #[serde(default = "events")]
    max_events: u64,
    #[serde(default = "one_u")]
    thin: u64,
}

fn events() -> u64 {
    100_000
}

#[derive(Debug, Clone, Copy)]
enum Means {
    Constant(ConstantMean),
    Linear(LinearSaturating),
}

impl MeanModel for Means {
    fn mean(&self, phi: &[f64; 4]) -> MeanMatrix {
        match self {
            Means::Constant(m) => m.mean(phi),
            Means::Linear(m) => m.mean(phi),
        }
    }

    fn limit(&self, beta: f64) -> MeanMatrix {
        match self {
            Means::Constant(m) => m.limit(beta),
            Means::Linear(m) => m.limit(beta),
        }
    }
}

fn need(v: Option<f64>, key: &str) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError::Config(format!("missing field `{key}` for the constant model")))
}

impl BpConfig {
    /// Mean model, with linear defaults written back.
    fn resolve(&mut self) -> Result<Means, CliError> {
        Ok(match self.model {
            Model::Constant => Means::Constant(ConstantMean([
                [need(self.m_xx, "m_xx")?, need(self.m_xy, "m_xy")?],
                [need(self.m_yx, "m_yx")?, need(self.m_yy, "m_yy")?],
            ])),
            Model::Linear => {
                let e = LinearSaturating::example();
                let m = LinearSaturating {
                    start: *self.start.get_or_insert(e.start),
                    slope: *self.slope.get_or_insert(e.slope),
                    cutoff: *self.cutoff.get_or_insert(e.cutoff),
                    floor: *self.floor.get_or_insert(e.floor),
                };
                Means::Linear(m)
            }
        })
    }
}

fn run_all(ctx: &mut Context) -> Result<(Vec<Trajectory>, Means), CliError> {
    let mut cfg: BpConfig = ctx.params()?;
    let means = cfg.resolve()?;
    let seed = ctx.seed();
    ctx.write_sidecar(&cfg, true)?;
    let sim = SimConfig {
        max_events: cfg.max_events,
        thin: cfg.thin,
    };
    let deaths = UniformDeath {
        rate: cfg.death_rate,
    };
    let init = PopulationState::new(cfg.cx0, cfg.cy0);
    let trajs = (0..ctx.replications)
        .into_par_iter()
        .map(|r| {
            let mut sampler = PoissonOffspring { model: means };
            run_bp(
                &mut sampler,
                &deaths,
                init,
                sim,
                &mut replication_rng(seed, r),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((trajs, means))
}

pub fn simulate(ctx: &mut Context) -> Result<(), CliError> {
    let (trajs, _) = run_all(ctx)?;
    for (r, t) in trajs.iter().enumerate() {
        write_csv(ctx.artifact(r as u64)?.as_deref(), &BP_HEADER, bp_rows(t))?;
    }
    ctx.summary(&dichotomy(&trajs))
}

pub fn ratios(ctx: &mut Context) -> Result<(), CliError> {
    let (trajs, means) = run_all(ctx)?;
    let header = ["epoch", "psi_c", "theta_c", "psi_a", "theta_a", "beta"];
    for (r, t) in trajs.iter().enumerate() {
        let rows = ratio_sequence(t, None).into_iter().map(|(n, v)| {
            let mut row = vec![n.to_string()];
            row.extend([v.psi_c, v.theta_c, v.psi_a, v.theta_a, v.beta].map(fmt_num));
            row
        });
        write_csv(ctx.artifact(r as u64)?.as_deref(), &header, rows)?;
    }
    let report = classify_scalar(&g_beta_field(means, vec![]), 10_000, 1e-12)?;
    let limits = lift_limits(&report, |b| h_of_beta(&means, b));
    ctx.summary(&json!({ "dichotomy": dichotomy(&trajs), "limits": limits }))
}
