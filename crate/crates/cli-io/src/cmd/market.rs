use std::path::PathBuf;

use bp_core::replication_rng;
use rayon::prelude::*;
use saturated_market::{
    closed_form as solve, estimate_tef, metrics as tef_metrics, propagate_on_graph, simulate_stpbp,
    EstimateConfig, StpConfig, TefParams,
};
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::one_u;
use crate::emit::{fmt_num, write_csv, write_json};
use crate::{parse_graph, CliError, Context};

const HEADER: [&str; 4] = ["n", "t", "a", "c"];

#[derive(Debug, Clone, Serialize, Deserialize)]
struct FitConfig {
    graph: PathBuf,
    #[serde(flatten)]
    estimate: EstimateConfig,
}

pub fn fit(ctx: &mut Context) -> Result<(), CliError> {
    let cfg: FitConfig = ctx.params()?;
    let seed = ctx.seed();
    ctx.write_sidecar(&cfg, true)?;
    let g = parse_graph(&cfg.graph)?;
    let est = estimate_tef(&g, &cfg.estimate, seed)?;
    write_json(
        ctx.out.as_deref(),
        &json!({
            "nodes": g.node_count(),
            "mean_degree": g.mean_degree(),
            "estimate": est,
        }),
    )
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SimulateConfig {
    #[serde(flatten)]
    tef: TefParams,
    a0: u64,
    #[serde(flatten)]
    stp: StpConfig,
}

pub fn simulate(ctx: &mut Context) -> Result<(), CliError> {
    let cfg: SimulateConfig = ctx.params()?;
    cfg.tef.validate()?;
    let seed = ctx.seed();
    ctx.write_sidecar(&cfg, true)?;
    let runs = (0..ctx.replications)
        .into_par_iter()
        .map(|r| simulate_stpbp(&cfg.tef, cfg.a0, &cfg.stp, &mut replication_rng(seed, r)))
        .collect::<Result<Vec<_>, _>>()?;
    for (r, t) in runs.iter().enumerate() {
        let rows = t.records.iter().map(|x| {
            vec![
                x.n.to_string(),
                fmt_num(x.tau),
                x.a.to_string(),
                x.c.to_string(),
            ]
        });
        write_csv(ctx.artifact(r as u64)?.as_deref(), &HEADER, rows)?;
    }
    let summary: Vec<_> = runs
        .iter()
        .map(|t| json!({ "events": t.last().n, "reach": t.last().a, "peak": t.peak_current(), "extinct": t.extinct }))
        .collect();
    ctx.summary(&summary)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ClosedConfig {
    #[serde(flatten)]
    tef: TefParams,
    a0: f64,
    /// Current copies at time 0; defaults to `a0`.
    #[serde(default)]
    c0: Option<f64>,
    /// Epochs between rows.
    #[serde(default = "one_u")]
    step: u64,
}

pub fn closed_form(ctx: &mut Context) -> Result<(), CliError> {
    let mut cfg: ClosedConfig = ctx.params()?;
    let c0 = *cfg.c0.get_or_insert(cfg.a0);
    ctx.write_sidecar(&cfg, false)?;
    let cf = solve(&cfg.tef, cfg.a0, c0)?;
    let rows = cf.epoch_rows(cfg.step)?;
    let rows = rows
        .into_iter()
        .map(|[n, t, a, c]| vec![fmt_num(n), fmt_num(t), fmt_num(a), fmt_num(c)]);
    write_csv(ctx.out.as_deref(), &HEADER, rows)
}

pub fn metrics(ctx: &mut Context) -> Result<(), CliError> {
    let mut cfg: ClosedConfig = ctx.params()?;
    let c0 = *cfg.c0.get_or_insert(cfg.a0);
    ctx.write_sidecar(&cfg, false)?;
    write_json(ctx.out.as_deref(), &tef_metrics(&cfg.tef, cfg.a0, c0)?)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PropagateConfig {
    graph: PathBuf,
    /// Node ids holding the post at the start.
    seeds: Vec<u64>,
    rho: f64,
}

pub fn propagate(ctx: &mut Context) -> Result<(), CliError> {
    let cfg: PropagateConfig = ctx.params()?;
    let seed = ctx.seed();
    ctx.write_sidecar(&cfg, true)?;
    let g = parse_graph(&cfg.graph)?;
    let runs = (0..ctx.replications)
        .into_par_iter()
        .map(|r| propagate_on_graph(&g, &cfg.seeds, cfg.rho, &mut replication_rng(seed, r)))
        .collect::<Result<Vec<_>, _>>()?;
    for (r, events) in runs.iter().enumerate() {
        let rows = events.iter().map(|e| {
            [e.epoch, e.reader, e.forwards, e.a, e.c]
                .map(|v| v.to_string())
                .to_vec()
        });
        write_csv(
            ctx.artifact(r as u64)?.as_deref(),
            &["epoch", "reader", "forwards", "a", "c"],
            rows,
        )?;
    }
    let reach: Vec<u64> = runs
        .iter()
        .map(|e| e.last().map_or(cfg.seeds.len() as u64, |x| x.a))
        .collect();
    ctx.summary(&json!({
        "nodes": g.node_count(),
        "edges": g.edge_count(),
        "mean_degree": g.mean_degree(),
        "reach": reach,
    }))
}
