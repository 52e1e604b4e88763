use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

#[derive(Debug, Parser)]
#[command(
    name = "tcbp",
    version,
    about = "Branching-process experiments: propagation, warnings, attacks and tagging games"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Common {
    /// JSON object of parameters
    #[arg(long, global = true, visible_alias = "params", value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Artifact path; `<out>.config.json` records the resolved parameters
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Worker threads for replications (default: all cores)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true)]
    pub replications: Option<u64>,
    /// Override a parameter; repeatable
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub sets: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Two-type branching process
    #[command(subcommand)]
    Bp(BpCmd),
    /// Competing types with acquisitions
    #[command(subcommand)]
    Attack(AttackCmd),
    /// Warning mechanisms for fake posts
    #[command(subcommand)]
    Wm(WmCmd),
    /// Saturated-market propagation
    #[command(subcommand)]
    Market(MarketCmd),
    /// Participation game for tagging
    #[command(subcommand)]
    Game(GameCmd),
}

#[derive(Debug, Subcommand)]
pub enum BpCmd {
    /// Trajectory CSV per replication
    Simulate,
    /// Ratio CSVs, extinction statistics and limit set
    Ratios,
}

#[derive(Debug, Clone, Args)]
pub struct LimitArgs {
    #[arg(long)]
    pub e_xx: Option<f64>,
    #[arg(long)]
    pub e_xy: Option<f64>,
    #[arg(long)]
    pub e_yy: Option<f64>,
    #[arg(long)]
    pub e_yx: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum AttackCmd {
    /// Regime, repeller and limit points as JSON
    Analyze(LimitArgs),
    /// Trajectory CSV per replication
    Simulate(LimitArgs),
}

#[derive(Debug, Clone, Args)]
pub struct WmArgs {
    /// eo, ea, eh or eh2
    #[arg(long)]
    pub kind: Option<String>,
    /// Saturate the non-adversarial threshold
    #[arg(long)]
    pub iqos: bool,
}

#[derive(Debug, Subcommand)]
pub enum WmCmd {
    /// Optimal eo warning as JSON
    Optimize(WmArgs),
    /// Any mechanism as JSON
    Design(WmArgs),
    /// Learned (w, b) trace CSV `k,w,b,beta` per replication
    Learn {
        /// Reads used for learning
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Fake-tag proportion CSV `k,beta` per replication
    Simulate(WmArgs),
}

#[derive(Debug, Subcommand)]
pub enum MarketCmd {
    /// Estimate and fit the two-slope TeF on a graph
    Fit {
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Embedded-chain CSV `n,t,a,c` per replication
    Simulate,
    /// Closed-form CSV `n,t,a,c`
    ClosedForm,
    /// Peak, extinction epoch and reach as JSON
    Metrics,
    /// Cascade CSV on a graph per replication
    Propagate {
        #[arg(long)]
        graph: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GameCmd {
    /// Designed reward, warning and participation as JSON
    Design,
    /// Equilibrium checks for the design as JSON
    Verify,
    /// Tagging epochs CSV `k,beta` per replication
    Simulate,
    /// Random-configuration study CSV
    Study {
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        d: Option<f64>,
    },
}

fn opt<T: Into<Value>>(key: &'static str, v: Option<T>) -> Option<(&'static str, Value)> {
    v.map(|v| (key, v.into()))
}

fn path(key: &'static str, p: &Option<PathBuf>) -> Option<(&'static str, Value)> {
    p.as_ref()
        .map(|p| (key, Value::from(p.to_string_lossy().into_owned())))
}

impl Command {
    /// Dedicated flags as parameter overrides.
    pub fn flags(&self) -> Vec<(&'static str, Value)> {
        let wm = |a: &WmArgs| {
            let mode = a.iqos.then_some("iqos");
            [opt("kind", a.kind.clone()), opt("mode", mode)]
        };
        let v: Vec<Option<(&str, Value)>> = match self {
            Command::Attack(AttackCmd::Analyze(l) | AttackCmd::Simulate(l)) => vec![
                opt("e_xx", l.e_xx),
                opt("e_xy", l.e_xy),
                opt("e_yy", l.e_yy),
                opt("e_yx", l.e_yx),
            ],
            Command::Wm(WmCmd::Optimize(a) | WmCmd::Design(a) | WmCmd::Simulate(a)) => {
                wm(a).to_vec()
            }
            Command::Wm(WmCmd::Learn { budget }) => vec![opt("budget", *budget)],
            Command::Market(MarketCmd::Fit { graph } | MarketCmd::Propagate { graph }) => {
                vec![path("graph", graph)]
            }
            Command::Game(GameCmd::Study { samples, d }) => {
                vec![opt("samples", *samples), opt("d", *d)]
            }
            _ => vec![],
        };
        v.into_iter().flatten().collect()
    }
}
