use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::sim::{OffspringSampler, SimRng};
use crate::{BpError, Kind, OffspringSample, PopulationState};

/// `m[i][j]`: mean number of `j`-type offspring of a dying `i`-type parent.
pub type MeanMatrix = [[f64; 2]; 2];

/// Population-dependent offspring means `m(φ)` and their limits `m^∞(β)`.
pub trait MeanModel {
    fn mean(&self, phi: &[f64; 4]) -> MeanMatrix;

    /// Limit of the means as the population grows with proportion `beta`.
    fn limit(&self, beta: f64) -> MeanMatrix;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantMean(pub MeanMatrix);

impl MeanModel for ConstantMean {
    fn mean(&self, _: &[f64; 4]) -> MeanMatrix {
        self.0
    }

    fn limit(&self, _: f64) -> MeanMatrix {
        self.0
    }
}

/// Single-type mean `start - slope·aˣ` while `aˣ ≤ cutoff`, then `floor`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearSaturating {
    pub start: f64,
    pub slope: f64,
    pub cutoff: f64,
    pub floor: f64,
}

impl LinearSaturating {
    /// `m(a) = 3 − 0.002a` up to `a = 400`, `1.2` afterwards.
    pub fn example() -> Self {
        LinearSaturating {
            start: 3.0,
            slope: 0.002,
            cutoff: 400.0,
            floor: 1.2,
        }
    }

    pub fn at(&self, a: f64) -> f64 {
        if a <= self.cutoff {
            self.start - self.slope * a
        } else {
            self.floor
        }
    }
}

impl MeanModel for LinearSaturating {
    fn mean(&self, phi: &[f64; 4]) -> MeanMatrix {
        [[self.at(phi[2]), 0.0], [0.0, 0.0]]
    }

    fn limit(&self, _: f64) -> MeanMatrix {
        [[self.floor, 0.0], [0.0, 0.0]]
    }
}

/// Poisson draw that returns 0 for non-positive or non-finite means.
pub fn poisson<R: Rng + ?Sized>(rng: &mut R, lambda: f64) -> u64 {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return 0;
    }
    let d = Poisson::new(lambda).expect("positive finite mean");
    d.sample(rng) as u64
}

/// Independent Poisson own/cross offspring with means from `M`.
#[derive(Debug, Clone)]
pub struct PoissonOffspring<M> {
    pub model: M,
}

impl<M: MeanModel> OffspringSampler for PoissonOffspring<M> {
    fn sample(
        &mut self,
        state: &PopulationState,
        parent: Kind,
        death_kind: usize,
        rng: &mut SimRng,
    ) -> Result<OffspringSample, BpError> {
        let m = self.model.mean(&state.phi());
        let i = parent.index();
        let j = parent.other().index();
        if m[i].iter().any(|v| !v.is_finite()) {
            return Err(BpError::BadMean(format!("{:?}", m[i])));
        }
        Ok(OffspringSample {
            parent,
            death_kind,
            own: poisson(rng, m[i][i]),
            cross: poisson(rng, m[i][j]) as i64,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn example_mean_saturates() {
        let m = LinearSaturating::example();
        assert!((m.at(200.0) - 2.6).abs() < 1e-12);
        assert!((m.at(400.0) - 2.2).abs() < 1e-12);
        assert_eq!(m.at(400.5), 1.2);
        assert_eq!(m.limit(1.0)[0][0], 1.2);
    }

    #[test]
    fn poisson_zero_mean() {
        let mut rng = SimRng::seed_from_u64(1);
        assert_eq!(poisson(&mut rng, 0.0), 0);
        assert_eq!(poisson(&mut rng, -1.0), 0);
        assert_eq!(poisson(&mut rng, f64::NAN), 0);
    }

    #[test]
    fn poisson_mean_matches() {
        let mut rng = SimRng::seed_from_u64(7);
        let n = 20_000;
        let s: u64 = (0..n).map(|_| poisson(&mut rng, 2.5)).sum();
        assert!((s as f64 / n as f64 - 2.5).abs() < 0.05);
    }
}
