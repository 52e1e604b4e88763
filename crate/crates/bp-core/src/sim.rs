use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};
use serde::Serialize;

use crate::death::checked_rate;
use crate::{
    step_embedded, BpError, DeathModel, Kind, OffspringSample, PopulationState, RatioVector,
};

pub type SimRng = ChaCha8Rng;

/// Generator for replication `r`; seeded by `seed ^ r` so results do not
/// depend on scheduling.
pub fn replication_rng(seed: u64, r: u64) -> SimRng {
    SimRng::seed_from_u64(seed ^ r)
}

/// Draws the offspring of one dying individual.
pub trait OffspringSampler {
    fn sample(
        &mut self,
        state: &PopulationState,
        parent: Kind,
        death_kind: usize,
        rng: &mut SimRng,
    ) -> Result<OffspringSample, BpError>;
}

impl<F> OffspringSampler for F
where
    F: FnMut(&PopulationState, Kind, usize, &mut SimRng) -> Result<OffspringSample, BpError>,
{
    fn sample(
        &mut self,
        state: &PopulationState,
        parent: Kind,
        death_kind: usize,
        rng: &mut SimRng,
    ) -> Result<OffspringSample, BpError> {
        self(state, parent, death_kind, rng)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub max_events: u64,
    /// Record every `thin`-th epoch (the final state is always recorded).
    pub thin: u64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            max_events: 1_000_000,
            thin: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Record {
    pub epoch: u64,
    pub tau: f64,
    pub state: PopulationState,
    pub ratios: RatioVector,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub init: PopulationState,
    pub records: Vec<Record>,
    pub extinct: bool,
}

impl Trajectory {
    pub fn last(&self) -> Option<&Record> {
        self.records.last()
    }

    pub fn events(&self) -> u64 {
        self.last().map_or(0, |r| r.epoch)
    }
}

fn record(state: &PopulationState, tau: f64) -> Record {
    Record {
        epoch: state.n,
        tau,
        state: *state,
        ratios: RatioVector::from_state(state),
    }
}

/// Run the embedded chain until extinction or `cfg.max_events` deaths.
pub fn simulate<S, D>(
    sampler: &mut S,
    deaths: &D,
    init: PopulationState,
    cfg: SimConfig,
    rng: &mut SimRng,
) -> Result<Trajectory, BpError>
where
    S: OffspringSampler + ?Sized,
    D: DeathModel + ?Sized,
{
    let thin = cfg.thin.max(1);
    let mut traj = Trajectory {
        init,
        records: Vec::new(),
        extinct: init.extinct || init.sum_current() == 0,
    };
    if traj.extinct {
        return Ok(traj);
    }
    let mut state = init;
    let mut tau = 0.0;
    traj.records.push(record(&state, tau));
    let mut weights = Vec::new();
    while state.n < cfg.max_events && !state.extinct {
        weights.clear();
        let mut total = 0.0;
        for kind in [Kind::X, Kind::Y] {
            let c = state.current(kind) as f64;
            for d in 0..deaths.kinds(kind) {
                let w = if c > 0.0 {
                    c * checked_rate(deaths, kind, d, &state)?
                } else {
                    0.0
                };
                total += w;
                weights.push((kind, d, w));
            }
        }
        if !(total > 0.0) {
            return Err(BpError::BadRate {
                kind: Kind::X,
                index: 0,
                rate: total,
            });
        }
        let dt = Exp::new(total)
            .map_err(|e| BpError::BadMean(e.to_string()))?
            .sample(rng);
        tau += dt.max(f64::MIN_POSITIVE);
        let mut u = rng.random::<f64>() * total;
        let mut pick = None;
        for &(kind, d, w) in &weights {
            if w > 0.0 {
                pick = Some((kind, d));
                if u < w {
                    break;
                }
                u -= w;
            }
        }
        let (kind, d) = pick.expect("positive total rate");
        let sample = sampler.sample(&state, kind, d, rng)?;
        state = step_embedded(&state, &sample)?;
        if state.n % thin == 0 || state.extinct || state.n == cfg.max_events {
            traj.records.push(record(&state, tau));
        }
    }
    traj.extinct = state.extinct;
    Ok(traj)
}
