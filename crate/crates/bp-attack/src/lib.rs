//! Two competing types where each dying parent may acquire individuals of
//! the other type. Limit means are `𝐞 = (e_xx, e_xy, e_yy, e_yx)`.

use bp_core::{
    poisson, BpError, Kind, MeanMatrix, MeanModel, OffspringSample, OffspringSampler,
    PopulationState, SimRng,
};
use ode_engine::{drift, EqKind, Equilibrium, EquilibriumReport, LiftKind, Lifted, ScalarField};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AttackError {
    #[error("invalid limits: {0}")]
    Invalid(String),
    #[error("no unique repeller in (0,1): {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AttackLimits {
    pub e_xx: f64,
    pub e_xy: f64,
    pub e_yy: f64,
    pub e_yx: f64,
}

impl AttackLimits {
    pub fn new(e_xx: f64, e_xy: f64, e_yy: f64, e_yx: f64) -> Result<Self, AttackError> {
        let l = AttackLimits {
            e_xx,
            e_xy,
            e_yy,
            e_yx,
        };
        l.validate()?;
        Ok(l)
    }

    pub fn validate(&self) -> Result<(), AttackError> {
        let all = [self.e_xx, self.e_xy, self.e_yy, self.e_yx];
        if all.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(AttackError::Invalid(format!(
                "means must be finite and nonnegative: {all:?}"
            )));
        }
        if self.e_xy <= 0.0 {
            return Err(AttackError::Invalid("e_xy must be positive".into()));
        }
        Ok(())
    }

    /// Own reproduction is supercritical for both types.
    pub fn supercritical(&self) -> bool {
        self.e_xx > 1.0 && self.e_yy > 1.0
    }

    pub fn m_tilde(&self) -> f64 {
        self.e_xx + self.e_xy - self.e_yy + self.e_yx
    }

    pub fn m_inf(&self) -> f64 {
        self.e_xx - self.e_yy
    }

    /// Membership in ℰ: both boundaries attract.
    pub fn in_e(&self) -> bool {
        self.e_yx > 0.0 || (self.e_yx == 0.0 && self.e_xx + self.e_xy < self.e_yy)
    }

    /// `g(β) = −e_yx + β·m̃ − β²·m_inf` on (0,1) and 0 at the ends.
    pub fn g(&self, b: f64) -> f64 {
        if b > 0.0 && b < 1.0 {
            -self.e_yx + b * self.m_tilde() - b * b * self.m_inf()
        } else {
            0.0
        }
    }

    /// `h(β)` of the limit ODE.
    pub fn h(&self, b: f64) -> [f64; 4] {
        drift(&self.limit(b), b)
    }

    /// Root of the quadratic in (0,1).
    pub fn repeller(&self) -> Result<f64, AttackError> {
        let (a, m, c) = (self.m_inf(), self.m_tilde(), self.e_yx);
        let inside = |r: f64| r > 0.0 && r < 1.0;
        let roots: Vec<f64> = if a == 0.0 {
            if m == 0.0 {
                vec![]
            } else {
                vec![c / m]
            }
        } else {
            let disc = m * m - 4.0 * a * c;
            if disc < 0.0 {
                vec![]
            } else {
                // m_inf·β² − m̃·β + e_yx = 0, stable pair
                let q = 0.5 * (m + m.signum() * disc.sqrt());
                if q == 0.0 {
                    vec![0.0]
                } else {
                    vec![q / a, c / q]
                }
            }
        };
        let mut r: Vec<f64> = roots.into_iter().filter(|r| inside(*r)).collect();
        r.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
        match r.as_slice() {
            [x] => Ok(*x),
            _ => Err(AttackError::Inconsistent(format!(
                "roots in (0,1): {r:?} for {self:?}"
            ))),
        }
    }
}

impl MeanModel for AttackLimits {
    fn mean(&self, _: &[f64; 4]) -> MeanMatrix {
        unreachable!("limit-only model; use limit(beta)")
    }

    /// Own means include acquisitions; cross means are the losses, switched
    /// off once the attacked type is absent.
    fn limit(&self, b: f64) -> MeanMatrix {
        let hit_y = if b < 1.0 { 1.0 } else { 0.0 };
        let hit_x = if b > 0.0 { 1.0 } else { 0.0 };
        [
            [self.e_xx + self.e_xy * hit_y, -self.e_xy * hit_y],
            [-self.e_yx * hit_x, self.e_yy + self.e_yx * hit_x],
        ]
    }
}

pub fn build_gbeta(limits: AttackLimits) -> ScalarField {
    ScalarField::new(move |b| limits.g(b)).with_kinks(vec![0.0, 1.0])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttackAnalysis {
    pub in_e: bool,
    pub beta_r: Option<f64>,
    pub report: EquilibriumReport,
}

/// Regime and limit sets from the closed-form structure.
pub fn classify_regime_and_limits(limits: AttackLimits) -> Result<AttackAnalysis, AttackError> {
    limits.validate()?;
    let in_e = limits.in_e();
    let point = |beta: f64, kind: EqKind, basin: [f64; 2]| Equilibrium { beta, kind, basin };
    let lift = |beta: f64, kind: LiftKind| Lifted {
        beta,
        h: limits.h(beta),
        kind,
    };
    let (equilibria, mut lifted, beta_r) = if in_e {
        let r = limits.repeller()?;
        (
            vec![
                point(0.0, EqKind::Attractor, [0.0, r]),
                point(r, EqKind::Repeller, [r, r]),
                point(1.0, EqKind::Attractor, [r, 1.0]),
            ],
            vec![
                lift(0.0, LiftKind::Attractor),
                lift(1.0, LiftKind::Attractor),
                lift(r, LiftKind::QAttractor),
            ],
            Some(r),
        )
    } else {
        (
            vec![
                point(0.0, EqKind::Repeller, [0.0, 0.0]),
                point(1.0, EqKind::Attractor, [0.0, 1.0]),
            ],
            vec![
                lift(1.0, LiftKind::Attractor),
                lift(0.0, LiftKind::QAttractor),
            ],
            None,
        )
    };
    lifted.push(Lifted {
        beta: 0.0,
        h: [0.0; 4],
        kind: LiftKind::QAttractor,
    });
    Ok(AttackAnalysis {
        in_e,
        beta_r,
        report: EquilibriumReport {
            equilibria,
            lifted,
            includes_zero_saddle: true,
            invariant: true,
        },
    })
}

/// Law of the own-type offspring `ξ_ii`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OwnLaw {
    /// `⌊m⌋` plus a Bernoulli of the fractional part: bounded, lower bound `⌊m⌋`.
    #[default]
    Rounded,
    Poisson,
}

fn draw_own(law: OwnLaw, mean: f64, rng: &mut SimRng) -> u64 {
    match law {
        OwnLaw::Poisson => poisson(rng, mean),
        OwnLaw::Rounded => {
            let base = mean.max(0.0).floor();
            base as u64 + u64::from(rng.random::<f64>() < mean - base)
        }
    }
}

/// Offspring of an `i`-parent given its own draw and attack draw; the attack
/// is capped by the other type's living count and transfers individuals.
pub fn sample_attack_offspring(
    state: &PopulationState,
    parent: Kind,
    death_kind: usize,
    own_draw: u64,
    attack_draw: u64,
) -> OffspringSample {
    let taken = attack_draw.min(state.current(parent.other()));
    OffspringSample {
        parent,
        death_kind,
        own: own_draw + taken,
        cross: -(taken as i64),
    }
}

/// Sampler with own means `e_ii + c/(sᶜ)^α` and Poisson attacks of mean `e_ij`.
#[derive(Debug, Clone, Copy)]
pub struct AttackSampler {
    pub limits: AttackLimits,
    pub own_law: OwnLaw,
    pub transient_c: f64,
    pub transient_alpha: f64,
}

impl AttackSampler {
    pub fn new(limits: AttackLimits) -> Self {
        AttackSampler {
            limits,
            own_law: OwnLaw::default(),
            transient_c: 0.0,
            transient_alpha: 1.0,
        }
    }
}

impl OffspringSampler for AttackSampler {
    fn sample(
        &mut self,
        state: &PopulationState,
        parent: Kind,
        death_kind: usize,
        rng: &mut SimRng,
    ) -> Result<OffspringSample, BpError> {
        let (own, attack) = match parent {
            Kind::X => (self.limits.e_xx, self.limits.e_xy),
            Kind::Y => (self.limits.e_yy, self.limits.e_yx),
        };
        let s = state.sum_current().max(1) as f64;
        let own = own + self.transient_c / s.powf(self.transient_alpha);
        let own_draw = draw_own(self.own_law, own, rng);
        let attack_draw = poisson(rng, attack);
        Ok(sample_attack_offspring(
            state,
            parent,
            death_kind,
            own_draw,
            attack_draw,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: f64, b: f64, c: f64, d: f64) -> AttackLimits {
        AttackLimits::new(a, b, c, d).unwrap()
    }

    #[test]
    fn symmetric_field() {
        let l = e(3.0, 1.0, 3.0, 1.0);
        for b in [0.1, 0.3, 0.77] {
            assert!((l.g(b) - (2.0 * b - 1.0)).abs() < 1e-15);
        }
        assert_eq!((l.g(0.0), l.g(1.0)), (0.0, 0.0));
    }

    #[test]
    fn no_attack_back_field() {
        let l = e(3.0, 1.0, 3.0, 0.0);
        assert!((l.g(0.4) - 0.4).abs() < 1e-15);
    }

    #[test]
    fn symmetric_regime() {
        let a = classify_regime_and_limits(e(3.0, 1.0, 3.0, 1.0)).unwrap();
        assert!(a.in_e);
        assert_eq!(a.beta_r, Some(0.5));
        assert_eq!(a.report.lifted[0].h, [2.0, 0.0, 3.0, 0.0]);
        assert_eq!(a.report.lifted[1].h, [2.0, 2.0, 3.0, 3.0]);
    }

    #[test]
    fn dominant_x_regime() {
        let a = classify_regime_and_limits(e(3.0, 2.0, 4.0, 0.0)).unwrap();
        assert!(!a.in_e);
        let att: Vec<f64> = a
            .report
            .lifted
            .iter()
            .filter(|l| l.kind == LiftKind::Attractor)
            .map(|l| l.beta)
            .collect();
        assert_eq!(att, vec![1.0]);
    }

    #[test]
    fn weak_x_regime_root() {
        let a = classify_regime_and_limits(e(2.0, 1.0, 4.0, 0.0)).unwrap();
        assert!(a.in_e);
        assert!((a.beta_r.unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn cap_on_empty_target() {
        let s = PopulationState::new(4, 0);
        let o = sample_attack_offspring(&s, Kind::X, 0, 2, 3);
        assert_eq!((o.own, o.cross), (2, 0));
    }

    #[test]
    fn cap_arithmetic() {
        let s = PopulationState::new(1, 3);
        let o = sample_attack_offspring(&s, Kind::X, 0, 2, 5);
        assert_eq!((o.own, o.cross), (5, -3));
    }

    #[test]
    fn rejects_missing_attack() {
        assert!(AttackLimits::new(3.0, 0.0, 3.0, 1.0).is_err());
    }

    #[test]
    fn h_matches_limit_pattern() {
        let l = e(3.0, 0.5, 2.5, 0.7);
        assert_eq!(l.h(1.0), [2.0, 2.0, 3.0, 3.0]);
        assert_eq!(l.h(0.0), [1.5, 0.0, 2.5, 0.0]);
    }
}
