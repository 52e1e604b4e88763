use bp_core::replication_rng;
use mfg_game::{
    design_ai_game, run_study, simulate_tagging_game, verify_equilibria, Actuality, AiDesign,
    DesignChoices, GameParams, Mix, StudyConfig,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::one_u;
use crate::emit::{fmt_num, write_csv, write_json};
use crate::{CliError, Context};

#[derive(Debug, Clone, Serialize, Deserialize)]
struct DesignConfig {
    #[serde(flatten)]
    params: GameParams,
    #[serde(flatten)]
    choices: DesignChoices,
}

fn designed(ctx: &mut Context) -> Result<(DesignConfig, AiDesign), CliError> {
    let cfg: DesignConfig = ctx.params()?;
    cfg.params.validate()?;
    let d = design_ai_game(&cfg.params, &cfg.choices)?;
    Ok((cfg, d))
}

pub fn design(ctx: &mut Context) -> Result<(), CliError> {
    let (cfg, d) = designed(ctx)?;
    ctx.write_sidecar(&cfg, false)?;
    write_json(ctx.out.as_deref(), &d)
}

pub fn verify(ctx: &mut Context) -> Result<(), CliError> {
    let (cfg, d) = designed(ctx)?;
    ctx.write_sidecar(&cfg, false)?;
    write_json(ctx.out.as_deref(), &verify_equilibria(&d, &cfg.params)?)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SimulateConfig {
    #[serde(flatten)]
    design: DesignConfig,
    /// Type-1 share; defaults to the designed participation.
    #[serde(default)]
    x: Option<f64>,
    #[serde(default = "fake")]
    actuality: Actuality,
    #[serde(default = "epochs")]
    k_max: u64,
    #[serde(default = "one_u")]
    thin: u64,
}

fn fake() -> Actuality {
    Actuality::F
}

fn epochs() -> u64 {
    100_000
}

pub fn simulate(ctx: &mut Context) -> Result<(), CliError> {
    let mut cfg: SimulateConfig = ctx.params()?;
    let p = cfg.design.params;
    p.validate()?;
    let d = design_ai_game(&p, &cfg.design.choices)?;
    if !d.feasible {
        return Err(CliError::Run(format!(
            "no design: {}",
            d.reason.unwrap_or_default()
        )));
    }
    let x = *cfg.x.get_or_insert(d.eta);
    let mix = Mix::x(x, p.mua);
    mix.validate(p.mua)?;
    if cfg.k_max == 0 {
        return Err(CliError::Config("k_max must be at least 1".into()));
    }
    let seed = ctx.seed();
    ctx.write_sidecar(&cfg, true)?;
    let traces: Vec<_> = (0..ctx.replications)
        .into_par_iter()
        .map(|r| {
            simulate_tagging_game(
                &mix,
                d.w,
                &p,
                cfg.actuality,
                cfg.k_max,
                cfg.thin,
                &mut replication_rng(seed, r),
            )
        })
        .collect();
    for (r, t) in traces.iter().enumerate() {
        let rows =
            t.k.iter()
                .zip(&t.beta)
                .map(|(k, b)| vec![k.to_string(), fmt_num(*b)]);
        write_csv(ctx.artifact(r as u64)?.as_deref(), &["k", "beta"], rows)?;
    }
    let limit = mfg_game::beta_fixed_point(&mix, d.w, &p, cfg.actuality);
    ctx.summary(&serde_json::json!({ "limit": limit, "terminal": traces.iter().map(|t| t.last()).collect::<Vec<_>>() }))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct StudyRun {
    #[serde(default = "samples")]
    samples: u64,
    #[serde(default = "normalised_gap")]
    d: f64,
    #[serde(default = "target")]
    theta: f64,
    #[serde(flatten)]
    choices: DesignChoices,
}

fn samples() -> u64 {
    10_000
}

fn normalised_gap() -> f64 {
    0.08
}

fn target() -> f64 {
    0.75
}

pub fn study(ctx: &mut Context) -> Result<(), CliError> {
    let cfg: StudyRun = ctx.params()?;
    let seed = ctx.seed();
    ctx.write_sidecar(&cfg, true)?;
    let study = StudyConfig {
        samples: cfg.samples,
        d: cfg.d,
        theta: cfg.theta,
        choices: cfg.choices,
    };
    let (rows, summary) = run_study(&study, seed);
    let header = ["alpha_r", "mua", "a", "p", "feasible", "ai", "degradation"];
    let rows = rows.iter().map(|s| {
        vec![
            fmt_num(s.alpha_r),
            fmt_num(s.mua),
            fmt_num(s.a),
            fmt_num(s.p),
            s.feasible.to_string(),
            s.ai.to_string(),
            s.degradation.map(fmt_num).unwrap_or_default(),
        ]
    });
    write_csv(ctx.out.as_deref(), &header, rows)?;
    ctx.summary(&summary)
}
