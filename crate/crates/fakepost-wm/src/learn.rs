use bp_core::{
    replication_rng, simulate, step_embedded, BpError, ConstantRates, Kind, OffspringSample,
    OffspringSampler, PopulationState, SimConfig, SimRng,
};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::sim::{offspring, shares, tag_fake, ADV, NP, WS};
use crate::{limit_proportions, Actuality, UserMix, Warning, WmError, WmParams};

/// Real-post proportion the `b` iterate is driven to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BTarget {
    #[default]
    Delta,
    DeltaA,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LearnConfig {
    /// Number of reads `S` used for learning.
    pub budget: u64,
    /// Defaults to `1 − α_y^R/α_x^R + 10⁻³`.
    pub kappa: Option<f64>,
    pub eta0: f64,
    pub eta_scale: f64,
    pub eta_power: f64,
    pub eps_scale: f64,
    pub eps_power: f64,
    pub w0: f64,
    pub b0: f64,
    /// Real-tagged copies the post starts with.
    pub seeds: u64,
    pub b_target: BTarget,
    /// Record every `trace_every`-th epoch; 0 disables the trace.
    pub trace_every: u64,
}

impl Default for LearnConfig {
    fn default() -> Self {
        LearnConfig {
            budget: 100_000,
            kappa: None,
            eta0: 0.008,
            eta_scale: 1.5,
            eta_power: 0.8,
            eps_scale: 2.2,
            eps_power: 0.7,
            w0: 6.0,
            b0: 1e-4,
            seeds: 20,
            b_target: BTarget::Delta,
            trace_every: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TracePoint {
    pub k: u64,
    pub w: f64,
    pub b: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LearnResult {
    pub w: f64,
    pub b: f64,
    pub epochs: u64,
    pub extinct: bool,
    pub w_updates: u64,
    pub trace: Vec<TracePoint>,
}

struct Learner {
    cfg: LearnConfig,
    params: WmParams,
    kappa: f64,
    target: f64,
    w: f64,
    b: f64,
    w_updates: u64,
    trace: Vec<TracePoint>,
}

impl Learner {
    fn coin(&self, k: u64) -> f64 {
        if k == 0 {
            self.cfg.eta0
        } else {
            (self.cfg.eta_scale * (k as f64).powf(-self.cfg.eta_power)).min(1.0)
        }
    }

    fn step(&self, k: u64) -> f64 {
        self.cfg.eps_scale * (k as f64).powf(-self.cfg.eps_power)
    }
}

impl OffspringSampler for Learner {
    fn sample(
        &mut self,
        state: &PopulationState,
        parent: Kind,
        reader: usize,
        rng: &mut SimRng,
    ) -> Result<OffspringSample, BpError> {
        let k = state.n + 1;
        let p = self.params;
        let special = reader == WS && parent == Kind::Y && rng.random::<f64>() < self.coin(k - 1);
        let sample = match reader {
            NP => offspring(parent, reader, false, 0),
            ADV => offspring(parent, reader, false, shares(&p, p.eta_a, state, rng)),
            _ => {
                let omega = if special {
                    self.w + p.gamma
                } else {
                    Warning::eo(self.w, self.b, p.gamma).omega(state.beta())
                };
                let fake = tag_fake(reader, parent, omega, Actuality::R, &p, rng);
                if special {
                    let i = if fake { 1.0 } else { 0.0 };
                    self.w = (self.w - self.step(k) * (i - (1.0 - self.kappa))).max(1.0);
                    self.w_updates += 1;
                }
                offspring(parent, reader, fake, shares(&p, p.real.eta, state, rng))
            }
        };
        let next = step_embedded(state, &sample)?;
        let beta = next.beta();
        self.b = (self.b + self.step(k) * (beta - self.target)).max(0.0);
        if self.cfg.trace_every > 0 && k % self.cfg.trace_every == 0 {
            self.trace.push(TracePoint {
                k,
                w: self.w,
                b: self.b,
                beta,
            });
        }
        Ok(sample)
    }
}

/// Learn `(w, b)` of an eo-form warning from the tags on a real post.
pub fn learn_wm(
    cfg: &LearnConfig,
    params: &WmParams,
    mix: &UserMix,
    delta: f64,
    seed: u64,
    replication: u64,
) -> Result<LearnResult, WmError> {
    if cfg.budget < 1 {
        return Err(WmError::Budget);
    }
    mix.validate()?;
    let r = &params.real;
    let kappa = cfg.kappa.unwrap_or(1.0 - r.alpha_y / r.alpha_x + 1e-3);
    let target = match cfg.b_target {
        BTarget::Delta => delta,
        BTarget::DeltaA => params.delta_a(mix, delta),
    };
    let mut learner = Learner {
        cfg: *cfg,
        params: *params,
        kappa,
        target,
        w: cfg.w0,
        b: cfg.b0,
        w_updates: 0,
        trace: Vec::new(),
    };
    let deaths = ConstantRates::symmetric(mix.rates());
    let mut rng = replication_rng(seed, replication);
    let sim = SimConfig {
        max_events: cfg.budget,
        thin: cfg.budget,
    };
    let t = simulate(
        &mut learner,
        &deaths,
        PopulationState::new(0, cfg.seeds),
        sim,
        &mut rng,
    )?;
    Ok(LearnResult {
        w: learner.w,
        b: learner.b,
        epochs: t.events(),
        extinct: t.extinct,
        w_updates: learner.w_updates,
        trace: learner.trace,
    })
}

/// Fake-post i-QoS of the eo warning with learned parameters.
pub fn learned_iqos(w: f64, b: f64, params: &WmParams, mix: &UserMix) -> Result<f64, WmError> {
    Ok(limit_proportions(&Warning::eo(w, b, params.gamma), Actuality::F, params, mix)?.iqos)
}
