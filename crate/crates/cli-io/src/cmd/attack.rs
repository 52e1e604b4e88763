use bp_attack::{classify_regime_and_limits, AttackLimits, AttackSampler, OwnLaw};
use bp_core::{
    dichotomy, replication_rng, simulate as run_bp, PopulationState, SimConfig, UniformDeath,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{one, one_u};
use crate::emit::{bp_rows, write_csv, write_json, BP_HEADER};
use crate::{CliError, Context};

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SimulateConfig {
    #[serde(flatten)]
    limits: AttackLimits,
    cx0: u64,
    cy0: u64,
    #[serde(default = "events")]
    max_events: u64,
    #[serde(default = "one_u")]
    thin: u64,
    #[serde(default)]
    own_law: OwnLaw,
    /// `c` of the transient own-mean term `c/(sᶜ)^α`.
    #[serde(default)]
    transient_c: f64,
    #[serde(default = "one")]
    transient_alpha: f64,
    #[serde(default = "one")]
    death_rate: f64,
}

fn events() -> u64 {
    100_000
}

pub fn analyze(ctx: &mut Context) -> Result<(), CliError> {
    let limits: AttackLimits = ctx.params()?;
    ctx.write_sidecar(&limits, false)?;
    write_json(ctx.out.as_deref(), &classify_regime_and_limits(limits)?)
}

pub fn simulate(ctx: &mut Context) -> Result<(), CliError> {
    let cfg: SimulateConfig = ctx.params()?;
    cfg.limits.validate()?;
    let seed = ctx.seed();
    ctx.write_sidecar(&cfg, true)?;
    let sim = SimConfig {
        max_events: cfg.max_events,
        thin: cfg.thin,
    };
    let deaths = UniformDeath {
        rate: cfg.death_rate,
    };
    let trajs = (0..ctx.replications)
        .into_par_iter()
        .map(|r| {
            let mut s = AttackSampler {
                own_law: cfg.own_law,
                transient_c: cfg.transient_c,
                transient_alpha: cfg.transient_alpha,
                ..AttackSampler::new(cfg.limits)
            };
            let init = PopulationState::new(cfg.cx0, cfg.cy0);
            run_bp(&mut s, &deaths, init, sim, &mut replication_rng(seed, r))
        })
        .collect::<Result<Vec<_>, _>>()?;
    for (r, t) in trajs.iter().enumerate() {
        write_csv(ctx.artifact(r as u64)?.as_deref(), &BP_HEADER, bp_rows(t))?;
    }
    ctx.summary(&dichotomy(&trajs))
}
