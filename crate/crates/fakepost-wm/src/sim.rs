use bp_core::{
    replication_rng, simulate, BpError, ConstantRates, Kind, OffspringSample, OffspringSampler,
    PopulationState, SimConfig, SimRng, Trajectory,
};
use rand::Rng;
use rand_distr::{Binomial, Distribution, Geometric, Poisson};

use crate::{Actuality, FriendLaw, UserMix, Warning, WmError, WmParams};

/// Reader kinds, in the order of [`UserMix::rates`].
pub(crate) const NP: usize = 0;
pub(crate) const WI: usize = 1;
pub(crate) const WS: usize = 2;
pub(crate) const ADV: usize = 3;

pub(crate) fn friends(params: &WmParams, rng: &mut SimRng) -> u64 {
    match params.friends {
        FriendLaw::Geometric => Geometric::new(1.0 / (1.0 + params.m_f))
            .expect("mean friend count is positive")
            .sample(rng),
        FriendLaw::Poisson => Poisson::new(params.m_f).expect("positive mean").sample(rng) as u64,
    }
}

pub(crate) fn shares(params: &WmParams, p: f64, state: &PopulationState, rng: &mut SimRng) -> u64 {
    let z = state.sum_total().max(1) as f64;
    let p = (p + params.k / (z * z)).clamp(0.0, 1.0);
    let n = friends(params, rng);
    if n == 0 || p == 0.0 {
        return 0;
    }
    Binomial::new(n, p).expect("p clamped to [0,1]").sample(rng)
}

/// Tag chosen by a non-adversarial reader; `true` means fake.
pub(crate) fn tag_fake(
    reader: usize,
    copy: Kind,
    omega: f64,
    u: Actuality,
    params: &WmParams,
    rng: &mut SimRng,
) -> bool {
    let post = params.post(u);
    let alpha = match copy {
        Kind::X => post.alpha_x,
        Kind::Y => post.alpha_y,
    };
    let p = match reader {
        WI => alpha * params.rho,
        WS => (alpha * omega).min(1.0),
        _ => 0.0,
    };
    rng.random::<f64>() < p
}

pub(crate) fn offspring(parent: Kind, reader: usize, fake: bool, n: u64) -> OffspringSample {
    let (x, y) = if fake { (n, 0) } else { (0, n) };
    let (own, cross) = match parent {
        Kind::X => (x, y),
        Kind::Y => (y, x),
    };
    OffspringSample {
        parent,
        death_kind: reader,
        own,
        cross: cross as i64,
    }
}

/// One read of a `u`-post under a fixed warning.
#[derive(Debug, Clone, Copy)]
pub struct TaggingSampler {
    pub warning: Warning,
    pub actuality: Actuality,
    pub params: WmParams,
}

impl OffspringSampler for TaggingSampler {
    fn sample(
        &mut self,
        state: &PopulationState,
        parent: Kind,
        reader: usize,
        rng: &mut SimRng,
    ) -> Result<OffspringSample, BpError> {
        let p = &self.params;
        Ok(match reader {
            NP => offspring(parent, reader, false, 0),
            ADV => offspring(parent, reader, false, shares(p, p.eta_a, state, rng)),
            _ => {
                let fake = tag_fake(
                    reader,
                    parent,
                    self.warning.omega(state.beta()),
                    self.actuality,
                    p,
                    rng,
                );
                let n = shares(p, p.post(self.actuality).eta, state, rng);
                offspring(parent, reader, fake, n)
            }
        })
    }
}

#[derive(Debug, Clone)]
pub struct TaggingRun {
    pub trajectory: Trajectory,
    /// `(epoch, β)` at each recorded epoch.
    pub betas: Vec<(u64, f64)>,
}

/// Propagate a `u`-post from `(fake, real)` tagged seed copies.
#[allow(clippy::too_many_arguments)]
pub fn simulate_tagging(
    warning: &Warning,
    u: Actuality,
    params: &WmParams,
    mix: &UserMix,
    seeds: (u64, u64),
    cfg: SimConfig,
    seed: u64,
    replication: u64,
) -> Result<TaggingRun, WmError> {
    mix.validate()?;
    let mut sampler = TaggingSampler {
        warning: *warning,
        actuality: u,
        params: *params,
    };
    let deaths = ConstantRates::symmetric(mix.rates());
    let mut rng = replication_rng(seed, replication);
    let trajectory = simulate(
        &mut sampler,
        &deaths,
        PopulationState::new(seeds.0, seeds.1),
        cfg,
        &mut rng,
    )?;
    let betas = trajectory
        .records
        .iter()
        .map(|r| (r.epoch, r.state.beta()))
        .collect();
    Ok(TaggingRun { trajectory, betas })
}
