use serde::Serialize;

use crate::{BpError, Kind, PopulationState};

/// Death kinds and their population-dependent rates `λ_{i,d}(φ)`.
pub trait DeathModel {
    fn kinds(&self, kind: Kind) -> usize;
    fn rate(&self, kind: Kind, index: usize, state: &PopulationState) -> f64;
    /// Positive lower bound `λ̲` every rate must respect.
    fn floor(&self) -> f64 {
        f64::MIN_POSITIVE
    }
}

/// Classical single-kind exponential lifetimes.
#[derive(Debug, Clone, Copy)]
pub struct UniformDeath {
    pub rate: f64,
}

impl DeathModel for UniformDeath {
    fn kinds(&self, _: Kind) -> usize {
        1
    }

    fn rate(&self, _: Kind, _: usize, _: &PopulationState) -> f64 {
        self.rate
    }
}

/// State-independent rates per kind, e.g. `λ_{z,d} = μ_d` for reader types.
#[derive(Debug, Clone)]
pub struct ConstantRates {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub floor: f64,
}

impl ConstantRates {
    /// Same kind rates for both types.
    pub fn symmetric(rates: Vec<f64>) -> Self {
        ConstantRates {
            x: rates.clone(),
            y: rates,
            floor: f64::MIN_POSITIVE,
        }
    }
}

impl DeathModel for ConstantRates {
    fn kinds(&self, kind: Kind) -> usize {
        match kind {
            Kind::X => self.x.len(),
            Kind::Y => self.y.len(),
        }
    }

    fn rate(&self, kind: Kind, index: usize, _: &PopulationState) -> f64 {
        match kind {
            Kind::X => self.x[index],
            Kind::Y => self.y[index],
        }
    }

    fn floor(&self) -> f64 {
        self.floor
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeathProb {
    pub kind: Kind,
    pub index: usize,
    pub p: f64,
}

/// Validated rate; zero-rate kinds are allowed only when the floor is not violated.
pub(crate) fn checked_rate<D: DeathModel + ?Sized>(
    deaths: &D,
    kind: Kind,
    index: usize,
    state: &PopulationState,
) -> Result<f64, BpError> {
    let rate = deaths.rate(kind, index, state);
    if !rate.is_finite() || rate < 0.0 || (rate > 0.0 && rate < deaths.floor()) {
        return Err(BpError::BadRate { kind, index, rate });
    }
    Ok(rate)
}

/// Probability that the next death is an `i`-type individual dying of kind `d`:
/// `λ_{x,d} β / d(φ)` and `λ_{y,d} (1-β) / d(φ)`.
pub fn death_probabilities<D: DeathModel + ?Sized>(
    state: &PopulationState,
    deaths: &D,
) -> Result<Vec<DeathProb>, BpError> {
    if state.extinct || state.sum_current() == 0 {
        return Err(BpError::Absorbing);
    }
    let beta = state.beta();
    let mut out = Vec::new();
    let mut total = 0.0;
    for (kind, weight) in [(Kind::X, beta), (Kind::Y, 1.0 - beta)] {
        for index in 0..deaths.kinds(kind) {
            let w = checked_rate(deaths, kind, index, state)? * weight;
            total += w;
            out.push(DeathProb { kind, index, p: w });
        }
    }
    if total <= 0.0 {
        return Err(BpError::BadRate {
            kind: Kind::X,
            index: 0,
            rate: 0.0,
        });
    }
    for d in &mut out {
        d.p /= total;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p_of(ps: &[DeathProb], kind: Kind) -> f64 {
        ps.iter().filter(|d| d.kind == kind).map(|d| d.p).sum()
    }

    #[test]
    fn equal_rates_follow_counts() {
        let ps =
            death_probabilities(&PopulationState::new(3, 1), &UniformDeath { rate: 1.0 }).unwrap();
        assert!((p_of(&ps, Kind::X) - 0.75).abs() < 1e-15);
        assert!((p_of(&ps, Kind::Y) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn faster_type_dies_first() {
        let rates = ConstantRates {
            x: vec![2.0],
            y: vec![1.0],
            floor: 0.1,
        };
        let ps = death_probabilities(&PopulationState::new(1, 1), &rates).unwrap();
        assert!((p_of(&ps, Kind::X) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn reader_type_rates_sum_to_one() {
        let mu = vec![0.2, 0.3, 0.4, 0.1];
        let rates = ConstantRates::symmetric(mu.clone());
        let state = PopulationState::new(7, 5);
        let ps = death_probabilities(&state, &rates).unwrap();
        let beta = 7.0 / 12.0;
        for d in &ps {
            let w = if d.kind == Kind::X { beta } else { 1.0 - beta };
            assert!((d.p - mu[d.index] * w).abs() < 1e-15);
        }
        assert!((ps.iter().map(|d| d.p).sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn extinct_state_has_no_death() {
        let r = death_probabilities(&PopulationState::new(0, 0), &UniformDeath { rate: 1.0 });
        assert_eq!(r, Err(BpError::Absorbing));
    }

    #[test]
    fn rate_below_floor_rejected() {
        let rates = ConstantRates {
            x: vec![0.01],
            y: vec![1.0],
            floor: 0.1,
        };
        let r = death_probabilities(&PopulationState::new(1, 1), &rates);
        assert!(matches!(r, Err(BpError::BadRate { .. })));
    }
}
