use bp_core::SimConfig;
use fakepost_wm::{
    design_ea, design_eh, design_eh2, learn_wm, learned_iqos, optimize_eo, simulate_tagging,
    Actuality, DeltaMode, FriendLaw, LearnConfig, MechanismDesign, UserMix, WarningKind, WmParams,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::one_u;
use crate::emit::{fmt_num, write_csv, write_json};
use crate::{CliError, Context};

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum Preset {
    /// Well-separated sensitivities, everyone warning-seeking.
    #[default]
    Baseline,
    /// Barely separated sensitivities, mixed population.
    Naive,
}

/// Preset population with per-key overrides; resolution fills every key.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct Model {
    #[serde(default)]
    preset: Preset,
    #[serde(default)]
    m_f: Option<f64>,
    #[serde(default)]
    gamma: Option<f64>,
    #[serde(default)]
    eta_a: Option<f64>,
    #[serde(default)]
    rho: Option<f64>,
    #[serde(default)]
    k: Option<f64>,
    #[serde(default)]
    friends: Option<FriendLaw>,
    #[serde(default)]
    real_eta: Option<f64>,
    #[serde(default)]
    real_alpha_x: Option<f64>,
    #[serde(default)]
    real_alpha_y: Option<f64>,
    #[serde(default)]
    fake_eta: Option<f64>,
    #[serde(default)]
    fake_alpha_x: Option<f64>,
    #[serde(default)]
    fake_alpha_y: Option<f64>,
    mua: f64,
    #[serde(default)]
    mu1: Option<f64>,
    #[serde(default)]
    mu2: Option<f64>,
    /// Real-post fake-tag threshold.
    delta: f64,
    #[serde(default)]
    mode: Option<DeltaMode>,
}

impl Model {
    fn resolve(&mut self) -> Result<(WmParams, UserMix, DeltaMode), CliError> {
        let base = match self.preset {
            Preset::Baseline => WmParams::baseline(),
            Preset::Naive => WmParams::naive(),
        };
        let p = WmParams {
            m_f: *self.m_f.get_or_insert(base.m_f),
            gamma: *self.gamma.get_or_insert(base.gamma),
            eta_a: *self.eta_a.get_or_insert(base.eta_a),
            rho: *self.rho.get_or_insert(base.rho),
            k: *self.k.get_or_insert(base.k),
            friends: *self.friends.get_or_insert(base.friends),
            real: fakepost_wm::PostModel {
                eta: *self.real_eta.get_or_insert(base.real.eta),
                alpha_x: *self.real_alpha_x.get_or_insert(base.real.alpha_x),
                alpha_y: *self.real_alpha_y.get_or_insert(base.real.alpha_y),
            },
            fake: fakepost_wm::PostModel {
                eta: *self.fake_eta.get_or_insert(base.fake.eta),
                alpha_x: *self.fake_alpha_x.get_or_insert(base.fake.alpha_x),
                alpha_y: *self.fake_alpha_y.get_or_insert(base.fake.alpha_y),
            },
        };
        p.validate()?;
        let (mu1, mu2) = match self.preset {
            Preset::Baseline => (0.0, 1.0 - self.mua),
            Preset::Naive => (0.15, 0.5),
        };
        let mix = UserMix::new(
            *self.mu1.get_or_insert(mu1),
            *self.mu2.get_or_insert(mu2),
            self.mua,
        )?;
        Ok((p, mix, *self.mode.get_or_insert(DeltaMode::Qos)))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct DesignConfig {
    #[serde(flatten)]
    model: Model,
    kind: WarningKind,
}

fn build(
    kind: WarningKind,
    p: &WmParams,
    mix: &UserMix,
    delta: f64,
    mode: DeltaMode,
) -> Result<MechanismDesign, CliError> {
    Ok(match kind {
        WarningKind::Eo => optimize_eo(p, mix, delta, mode)?,
        WarningKind::Ea => design_ea(p, mix, delta)?,
        WarningKind::Eh => design_eh(p, mix, delta, mode)?,
        WarningKind::Eh2 => design_eh2(p, mix, delta, mode)?,
        WarningKind::Learned => {
            return Err(CliError::Config(
                "`learned` warnings come from `wm learn`".into(),
            ))
        }
    })
}

pub fn optimize(ctx: &mut Context) -> Result<(), CliError> {
    if let Some(k) = ctx.get("kind").filter(|k| *k != &Value::from("eo")) {
        return Err(CliError::Config(format!(
            "optimize computes eo warnings, got kind {k}"
        )));
    }
    let mut cfg: DesignConfig = {
        ctx.default_key("kind", Value::from("eo"));
        ctx.params()?
    };
    let (p, mix, mode) = cfg.model.resolve()?;
    ctx.write_sidecar(&cfg, false)?;
    write_json(
        ctx.out.as_deref(),
        &build(WarningKind::Eo, &p, &mix, cfg.model.delta, mode)?,
    )
}

pub fn design(ctx: &mut Context) -> Result<(), CliError> {
    let mut cfg: DesignConfig = ctx.params()?;
    let (p, mix, mode) = cfg.model.resolve()?;
    ctx.write_sidecar(&cfg, false)?;
    write_json(
        ctx.out.as_deref(),
        &build(cfg.kind, &p, &mix, cfg.model.delta, mode)?,
    )
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SimulateConfig {
    #[serde(flatten)]
    model: Model,
    #[serde(default = "eo")]
    kind: WarningKind,
    #[serde(default = "fake")]
    actuality: Actuality,
    /// Fake- and real-tagged seed copies.
    #[serde(default = "ten")]
    fake0: u64,
    #[serde(default = "ten")]
    real0: u64,
    #[serde(default = "events")]
    max_events: u64,
    #[serde(default = "one_u")]
    thin: u64,
}

fn eo() -> WarningKind {
    WarningKind::Eo
}

fn fake() -> Actuality {
    Actuality::F
}

fn ten() -> u64 {
    10
}

fn events() -> u64 {
    100_000
}

pub fn simulate(ctx: &mut Context) -> Result<(), CliError> {
    let mut cfg: SimulateConfig = ctx.params()?;
    let (p, mix, mode) = cfg.model.resolve()?;
    let d = build(cfg.kind, &p, &mix, cfg.model.delta, mode)?;
    let seed = ctx.seed();
    ctx.write_sidecar(&cfg, true)?;
    let sim = SimConfig {
        max_events: cfg.max_events,
        thin: cfg.thin,
    };
    let runs = (0..ctx.replications)
        .into_par_iter()
        .map(|r| {
            simulate_tagging(
                &d.warning,
                cfg.actuality,
                &p,
                &mix,
                (cfg.fake0, cfg.real0),
                sim,
                seed,
                r,
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    for (r, run) in runs.iter().enumerate() {
        let rows = run
            .betas
            .iter()
            .map(|(k, b)| vec![k.to_string(), fmt_num(*b)]);
        write_csv(ctx.artifact(r as u64)?.as_deref(), &["k", "beta"], rows)?;
    }
    let finals: Vec<f64> = runs
        .iter()
        .filter(|r| !r.trajectory.extinct)
        .filter_map(|r| r.betas.last().map(|b| b.1))
        .collect();
    let limits = match cfg.actuality {
        Actuality::F => &d.fake,
        Actuality::R => &d.real,
    };
    let mean = (!finals.is_empty()).then(|| finals.iter().sum::<f64>() / finals.len() as f64);
    ctx.summary(&json!({
        "survivors": finals.len(),
        "mean_terminal_beta": mean,
        "attractors": limits.attractors,
    }))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct LearnRun {
    #[serde(flatten)]
    model: Model,
    #[serde(flatten)]
    learn: LearnConfig,
}

pub fn learn(ctx: &mut Context) -> Result<(), CliError> {
    let budget = ctx
        .get("budget")
        .and_then(Value::as_u64)
        .unwrap_or(LearnConfig::default().budget);
    ctx.default_key("trace_every", Value::from((budget / 1000).max(1)));
    let mut cfg: LearnRun = ctx.params()?;
    let (p, mix, _) = cfg.model.resolve()?;
    let seed = ctx.seed();
    ctx.write_sidecar(&cfg, true)?;
    let delta = cfg.model.delta;
    let results = (0..ctx.replications)
        .into_par_iter()
        .map(|r| learn_wm(&cfg.learn, &p, &mix, delta, seed, r))
        .collect::<Result<Vec<_>, _>>()?;
    for (r, res) in results.iter().enumerate() {
        let rows = res
            .trace
            .iter()
            .map(|t| vec![t.k.to_string(), fmt_num(t.w), fmt_num(t.b), fmt_num(t.beta)]);
        write_csv(
            ctx.artifact(r as u64)?.as_deref(),
            &["k", "w", "b", "beta"],
            rows,
        )?;
    }
    let perfect = design_eh2(&p, &mix, delta, DeltaMode::Iqos)?.fake.iqos;
    let learned = results
        .iter()
        .map(|res| {
            Ok(json!({
                "w": res.w,
                "b": res.b,
                "epochs": res.epochs,
                "extinct": res.extinct,
                "iqos": learned_iqos(res.w, res.b, &p, &mix)?,
            }))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    ctx.summary(&json!({ "perfect_knowledge_iqos": perfect, "runs": learned }))
}
