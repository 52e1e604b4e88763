//! `tcbp`: command-line experiments over the branching-process crates.
//!
//! Parameters come from a JSON object (`--config`), `--set key=value`
//! overrides and dedicated flags, in increasing priority. Unknown keys are
//! rejected and missing ones exit with status 2. Every run with `--out`
//! writes `<out>.config.json`, which reproduces the artifacts when fed back
//! as `--config`.

mod cli;
mod cmd;
mod config;
mod emit;
mod error;

use std::io::BufReader;
use std::path::Path;

pub use cli::{
    AttackCmd, BpCmd, Cli, Command, Common, GameCmd, LimitArgs, MarketCmd, WmArgs, WmCmd,
};
pub use config::{parse_set, sidecar_path, Context};
pub use emit::{bp_rows, fmt_num, write_csv, write_json, BP_HEADER};
pub use error::CliError;
pub use saturated_market::Graph;

/// SNAP-style edge list.
pub fn parse_graph(path: &Path) -> Result<Graph, CliError> {
    let f = std::fs::File::open(path)
        .map_err(|e| CliError::Run(format!("cannot open graph {}: {e}", path.display())))?;
    Ok(Graph::parse(BufReader::new(f))?)
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let c = cli.common;
    let mut ctx = Context::load(
        c.config.as_deref(),
        &c.sets,
        cli.command.flags(),
        c.seed,
        c.replications,
        c.out,
    )?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(c.jobs.unwrap_or(0))
        .build()?;
    pool.install(|| match &cli.command {
        Command::Bp(BpCmd::Simulate) => cmd::bp::simulate(&mut ctx),
        Command::Bp(BpCmd::Ratios) => cmd::bp::ratios(&mut ctx),
        Command::Attack(AttackCmd::Analyze(_)) => cmd::attack::analyze(&mut ctx),
        Command::Attack(AttackCmd::Simulate(_)) => cmd::attack::simulate(&mut ctx),
        Command::Wm(WmCmd::Optimize(_)) => cmd::wm::optimize(&mut ctx),
        Command::Wm(WmCmd::Design(_)) => cmd::wm::design(&mut ctx),
        Command::Wm(WmCmd::Learn { .. }) => cmd::wm::learn(&mut ctx),
        Command::Wm(WmCmd::Simulate(_)) => cmd::wm::simulate(&mut ctx),
        Command::Market(MarketCmd::Fit { .. }) => cmd::market::fit(&mut ctx),
        Command::Market(MarketCmd::Simulate) => cmd::market::simulate(&mut ctx),
        Command::Market(MarketCmd::ClosedForm) => cmd::market::closed_form(&mut ctx),
        Command::Market(MarketCmd::Metrics) => cmd::market::metrics(&mut ctx),
        Command::Market(MarketCmd::Propagate { .. }) => cmd::market::propagate(&mut ctx),
        Command::Game(GameCmd::Design) => cmd::game::design(&mut ctx),
        Command::Game(GameCmd::Verify) => cmd::game::verify(&mut ctx),
        Command::Game(GameCmd::Simulate) => cmd::game::simulate(&mut ctx),
        Command::Game(GameCmd::Study { .. }) => cmd::game::study(&mut ctx),
    })
}
