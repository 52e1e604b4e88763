use bp_core::{poisson, replication_rng};
use rand::Rng;
use rand_distr::{Binomial, Distribution, Exp};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{MarketError, TefParams};

/// Offspring law with mean `tef(a)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OffspringLaw {
    #[default]
    Poisson,
    /// `Binomial(friends, tef(a)/friends)`.
    Binomial { friends: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct StpConfig {
    pub max_events: u64,
    /// Upper bound on forwards per read.
    pub cap: Option<u64>,
    pub law: OffspringLaw,
}

impl Default for StpConfig {
    fn default() -> Self {
        StpConfig {
            max_events: 10_000_000,
            cap: None,
            law: OffspringLaw::Poisson,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StpRecord {
    pub n: u64,
    pub tau: f64,
    pub forwards: u64,
    pub c: u64,
    pub a: u64,
    pub psi_c: f64,
    pub psi_a: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StpTrajectory {
    pub a0: u64,
    /// Epoch 0 followed by one record per read.
    pub records: Vec<StpRecord>,
    pub extinct: bool,
}

impl StpTrajectory {
    pub fn last(&self) -> &StpRecord {
        self.records.last().expect("epoch 0 is always recorded")
    }

    pub fn peak_current(&self) -> u64 {
        self.records.iter().map(|r| r.c).max().unwrap_or(0)
    }
}

fn draw<R: Rng + ?Sized>(rng: &mut R, mean: f64, law: OffspringLaw) -> u64 {
    match law {
        OffspringLaw::Poisson => poisson(rng, mean),
        OffspringLaw::Binomial { friends } => {
            if friends == 0 || !(mean > 0.0) {
                return 0;
            }
            let p = (mean / friends as f64).min(1.0);
            Binomial::new(friends, p).expect("p in [0,1]").sample(rng)
        }
    }
}

/// Embedded chain from `a0` seed copies, with unit wake-up rate per copy.
pub fn simulate_stpbp<R: Rng + ?Sized>(
    params: &TefParams,
    a0: u64,
    cfg: &StpConfig,
    rng: &mut R,
) -> Result<StpTrajectory, MarketError> {
    if a0 == 0 {
        return Err(MarketError::Invalid("need at least one seed copy".into()));
    }
    if let OffspringLaw::Binomial { friends: 0 } = cfg.law {
        return Err(MarketError::Invalid(
            "binomial law needs friends > 0".into(),
        ));
    }
    let (mut c, mut a, mut tau) = (a0, a0, 0.0);
    let mut records = vec![StpRecord {
        n: 0,
        tau,
        forwards: 0,
        c,
        a,
        psi_c: a0 as f64,
        psi_a: a0 as f64,
    }];
    let mut n = 0;
    while c > 0 && n < cfg.max_events {
        n += 1;
        tau += Exp::new(c as f64).expect("positive rate").sample(rng);
        let mut g = draw(rng, params.tef(a as f64), cfg.law);
        if let Some(cap) = cfg.cap {
            g = g.min(cap);
        }
        c = c + g - 1;
        a += g;
        let nf = n as f64;
        records.push(StpRecord {
            n,
            tau,
            forwards: g,
            c,
            a,
            psi_c: c as f64 / nf,
            psi_a: a as f64 / nf,
        });
    }
    Ok(StpTrajectory {
        a0,
        records,
        extinct: c == 0,
    })
}

/// Fraction of `runs` paths whose current shares exceed `delta` at some epoch.
pub fn virality_probability(
    params: &TefParams,
    a0: u64,
    delta: f64,
    runs: u64,
    cfg: &StpConfig,
    seed: u64,
) -> Result<f64, MarketError> {
    if runs == 0 {
        return Err(MarketError::Invalid("runs must be positive".into()));
    }
    let hits = (0..runs)
        .into_par_iter()
        .map(|r| {
            let mut rng = replication_rng(seed, r);
            // stop as soon as the threshold is crossed
            let mut c = a0;
            let mut a = a0;
            let mut n = 0;
            while c > 0 && n < cfg.max_events {
                if c as f64 > delta {
                    return Ok(1u64);
                }
                n += 1;
                let mut g = draw(&mut rng, params.tef(a as f64), cfg.law);
                if let Some(cap) = cfg.cap {
                    g = g.min(cap);
                }
                c = c + g - 1;
                a += g;
            }
            Ok(u64::from(c as f64 > delta))
        })
        .collect::<Result<Vec<u64>, MarketError>>()?;
    Ok(hits.iter().sum::<u64>() as f64 / runs as f64)
}
