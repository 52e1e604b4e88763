use serde::{Deserialize, Serialize};

use crate::BpError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    X,
    Y,
}

impl Kind {
    pub fn other(self) -> Kind {
        match self {
            Kind::X => Kind::Y,
            Kind::Y => Kind::X,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Kind::X => 0,
            Kind::Y => 1,
        }
    }
}

/// `Φ = (cx, cy, ax, ay)` plus the death-epoch index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PopulationState {
    pub cx: u64,
    pub cy: u64,
    pub ax: u64,
    pub ay: u64,
    pub n: u64,
    pub extinct: bool,
}

impl PopulationState {
    /// Initial state: totals start equal to the living counts.
    pub fn new(cx: u64, cy: u64) -> Self {
        PopulationState {
            cx,
            cy,
            ax: cx,
            ay: cy,
            n: 0,
            extinct: cx + cy == 0,
        }
    }

    pub fn current(&self, k: Kind) -> u64 {
        match k {
            Kind::X => self.cx,
            Kind::Y => self.cy,
        }
    }

    pub fn total(&self, k: Kind) -> u64 {
        match k {
            Kind::X => self.ax,
            Kind::Y => self.ay,
        }
    }

    pub fn sum_current(&self) -> u64 {
        self.cx + self.cy
    }

    pub fn sum_total(&self) -> u64 {
        self.ax + self.ay
    }

    /// Proportion of x among the living, 0 when nobody is alive.
    pub fn beta(&self) -> f64 {
        let s = self.sum_current();
        if s == 0 {
            0.0
        } else {
            self.cx as f64 / s as f64
        }
    }

    /// Real-valued view `(cx, cy, ax, ay)` used by mean models.
    pub fn phi(&self) -> [f64; 4] {
        [
            self.cx as f64,
            self.cy as f64,
            self.ax as f64,
            self.ay as f64,
        ]
    }
}

/// Offspring of one dying individual. `cross` is negative under attack.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OffspringSample {
    pub parent: Kind,
    pub death_kind: usize,
    pub own: u64,
    pub cross: i64,
}

/// Advance the embedded chain by one death.
pub fn step_embedded(
    state: &PopulationState,
    sample: &OffspringSample,
) -> Result<PopulationState, BpError> {
    if state.extinct {
        return Err(BpError::Absorbing);
    }
    let i = sample.parent;
    let j = i.other();
    if state.current(i) == 0 {
        return Err(BpError::InvalidSample(format!(
            "no living {i:?} individual to die"
        )));
    }
    let cj = state.current(j) as i64 + sample.cross;
    let aj = state.total(j) as i64 + sample.cross;
    if cj < 0 || aj < 0 {
        return Err(BpError::InvalidSample(format!(
            "attack of {} exceeds the {} living {j:?} individuals",
            -sample.cross,
            state.current(j)
        )));
    }
    let ci = state.current(i) - 1 + sample.own;
    let ai = state.total(i) + sample.own;
    let mut next = *state;
    match i {
        Kind::X => {
            next.cx = ci;
            next.ax = ai;
            next.cy = cj as u64;
            next.ay = aj as u64;
        }
        Kind::Y => {
            next.cy = ci;
            next.ay = ai;
            next.cx = cj as u64;
            next.ax = aj as u64;
        }
    }
    next.n += 1;
    next.extinct = next.sum_current() == 0;
    Ok(next)
}

/// `Υ = (ψᶜ, θᶜ, ψᵃ, θᵃ)` together with `β = θᶜ/ψᶜ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioVector {
    pub psi_c: f64,
    pub theta_c: f64,
    pub psi_a: f64,
    pub theta_a: f64,
    pub beta: f64,
}

impl RatioVector {
    pub fn new(psi_c: f64, theta_c: f64, psi_a: f64, theta_a: f64) -> Self {
        let beta = if psi_c > 0.0 { theta_c / psi_c } else { 0.0 };
        RatioVector {
            psi_c,
            theta_c,
            psi_a,
            theta_a,
            beta,
        }
    }

    /// Ratios at epoch `state.n`; epoch 0 uses the living counts for both
    /// current and total components.
    pub fn from_state(state: &PopulationState) -> Self {
        Self::at_epoch(state, state.n)
    }

    /// Ratios of `state` scaled by an arbitrary epoch (frozen paths after extinction).
    pub fn at_epoch(state: &PopulationState, n: u64) -> Self {
        if n == 0 {
            let s = state.sum_current() as f64;
            let x = state.cx as f64;
            return RatioVector::new(s, x, s, x);
        }
        let n = n as f64;
        RatioVector::new(
            state.sum_current() as f64 / n,
            state.cx as f64 / n,
            state.sum_total() as f64 / n,
            state.ax as f64 / n,
        )
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.psi_c, self.theta_c, self.psi_a, self.theta_a]
    }

    pub fn from_array(v: [f64; 4]) -> Self {
        RatioVector::new(v[0], v[1], v[2], v[3])
    }

    /// Membership in `θᶜ ≤ ψᶜ ≤ ψᵃ, θᵃ ≤ ψᵃ` (non-negative orthant).
    pub fn in_domain(&self, tol: f64) -> bool {
        self.psi_c >= -tol
            && self.theta_c >= -tol
            && self.theta_a >= -tol
            && self.theta_c <= self.psi_c + tol
            && self.psi_c <= self.psi_a + tol
            && self.theta_a <= self.psi_a + tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(cx: u64, cy: u64, ax: u64, ay: u64) -> PopulationState {
        PopulationState {
            cx,
            cy,
            ax,
            ay,
            n: 0,
            extinct: cx + cy == 0,
        }
    }

    fn sample(parent: Kind, own: u64, cross: i64) -> OffspringSample {
        OffspringSample {
            parent,
            death_kind: 0,
            own,
            cross,
        }
    }

    #[test]
    fn birth_step() {
        let s = step_embedded(&st(3, 2, 5, 4), &sample(Kind::X, 2, 1)).unwrap();
        assert_eq!((s.cx, s.cy, s.ax, s.ay, s.n), (4, 3, 7, 5, 1));
    }

    #[test]
    fn last_death_is_extinction() {
        let s = step_embedded(&st(1, 0, 1, 0), &sample(Kind::X, 0, 0)).unwrap();
        assert_eq!((s.cx, s.cy, s.ax, s.ay), (0, 0, 1, 0));
        assert!(s.extinct);
        assert_eq!(
            step_embedded(&s, &sample(Kind::X, 0, 0)),
            Err(BpError::Absorbing)
        );
    }

    #[test]
    fn attack_step() {
        let s = step_embedded(&st(2, 3, 2, 3), &sample(Kind::X, 1, -2)).unwrap();
        assert_eq!((s.cx, s.cy, s.ax, s.ay), (2, 1, 3, 1));
    }

    #[test]
    fn attack_beyond_population_rejected() {
        let r = step_embedded(&st(2, 1, 2, 1), &sample(Kind::X, 1, -2));
        assert!(matches!(r, Err(BpError::InvalidSample(_))));
    }

    #[test]
    fn first_epoch_ratios() {
        let s0 = PopulationState::new(1, 1);
        let s1 = step_embedded(&s0, &sample(Kind::X, 2, 0)).unwrap();
        let r = RatioVector::from_state(&s1);
        assert_eq!(r.as_array(), [3.0, 2.0, 4.0, 3.0]);
    }

    #[test]
    fn beta_zero_when_extinct() {
        let r = RatioVector::new(0.0, 0.0, 2.0, 1.0);
        assert_eq!(r.beta, 0.0);
    }
}
