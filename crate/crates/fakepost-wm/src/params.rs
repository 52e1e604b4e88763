use serde::{Deserialize, Serialize};

use crate::WmError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Actuality {
    R,
    F,
}

/// Proportions of np, wi, ws and adversarial readers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UserMix {
    pub mu0: f64,
    pub mu1: f64,
    pub mu2: f64,
    pub mua: f64,
}

impl UserMix {
    pub fn new(mu1: f64, mu2: f64, mua: f64) -> Result<Self, WmError> {
        let m = UserMix {
            mu0: 1.0 - mu1 - mu2 - mua,
            mu1,
            mu2,
            mua,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), WmError> {
        let all = [self.mu0, self.mu1, self.mu2, self.mua];
        if all.iter().any(|v| !(-1e-12..=1.0 + 1e-12).contains(v)) {
            return Err(WmError::Invalid(format!(
                "proportions must lie in [0,1]: {all:?}"
            )));
        }
        if (all.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
            return Err(WmError::Invalid(format!(
                "proportions must sum to 1: {all:?}"
            )));
        }
        if self.mu2 <= 0.0 {
            return Err(WmError::Invalid("mu2 must be positive".into()));
        }
        Ok(())
    }

    /// Same wi/ws shares, adversaries turned into non-participants.
    pub fn without_adversaries(&self) -> Self {
        UserMix {
            mu0: self.mu0 + self.mua,
            mua: 0.0,
            ..*self
        }
    }

    /// Death rates per reader kind, ordered np, wi, ws, a.
    pub fn rates(&self) -> Vec<f64> {
        vec![self.mu0.max(0.0), self.mu1, self.mu2, self.mua]
    }
}

/// Post-specific share probability and warning sensitivities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PostModel {
    pub eta: f64,
    pub alpha_x: f64,
    pub alpha_y: f64,
}

/// Number of friends a reader forwards to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum FriendLaw {
    /// Geometric on {0, 1, ...} with mean `m_f`.
    #[default]
    Geometric,
    Poisson,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WmParams {
    pub m_f: f64,
    pub gamma: f64,
    pub eta_a: f64,
    pub rho: f64,
    pub real: PostModel,
    pub fake: PostModel,
    /// Constant `k` of the `η + k/Z²` share correction.
    #[serde(default)]
    pub k: f64,
    #[serde(default)]
    pub friends: FriendLaw,
}

impl WmParams {
    pub fn post(&self, u: Actuality) -> &PostModel {
        match u {
            Actuality::R => &self.real,
            Actuality::F => &self.fake,
        }
    }

    /// ws/adversary population with well-separated sensitivities.
    pub fn baseline() -> Self {
        WmParams {
            m_f: 28.0,
            gamma: 0.1,
            eta_a: 0.55,
            rho: 0.5,
            real: PostModel {
                eta: 0.05,
                alpha_x: 0.3,
                alpha_y: 0.09,
            },
            fake: PostModel {
                eta: 0.08,
                alpha_x: 0.85,
                alpha_y: 0.6375,
            },
            k: 0.0,
            friends: FriendLaw::Geometric,
        }
    }

    /// Naive users: sensitivities barely separate fake from real posts.
    pub fn naive() -> Self {
        WmParams {
            m_f: 30.0,
            gamma: 0.1,
            eta_a: 0.55,
            rho: 0.9,
            real: PostModel {
                eta: 0.4,
                alpha_x: 0.12,
                alpha_y: 0.09,
            },
            fake: PostModel {
                eta: 0.52,
                alpha_x: 0.3,
                alpha_y: 0.225,
            },
            k: 0.0,
            friends: FriendLaw::Geometric,
        }
    }

    pub fn naive_mix(mua: f64) -> UserMix {
        UserMix::new(0.15, 0.5, mua).expect("valid naive mix")
    }

    pub fn validate(&self) -> Result<(), WmError> {
        let bad = |m: &str| Err(WmError::Invalid(m.into()));
        if !(self.m_f > 0.0) || !(self.gamma > 0.0) {
            return bad("m_f and gamma must be positive");
        }
        if !(0.0 < self.rho && self.rho < 1.0) {
            return bad("rho must lie in (0,1)");
        }
        for p in [&self.real, &self.fake] {
            if !(0.0 < p.eta && p.eta < 1.0) || !(p.alpha_x > p.alpha_y && p.alpha_y > 0.0) {
                return bad("need eta in (0,1) and alpha_x > alpha_y > 0");
            }
        }
        if !(self.fake.alpha_x > self.real.alpha_x && self.fake.alpha_y > self.real.alpha_y) {
            return bad("fake-post sensitivities must exceed real-post ones");
        }
        if !(0.0 < self.eta_a && self.eta_a < 1.0) {
            return bad("eta_a must lie in (0,1)");
        }
        Ok(())
    }

    /// Proportion target seen among non-adversarial tags: `δ_a`.
    pub fn delta_a(&self, mix: &UserMix, delta: f64) -> f64 {
        let e = (mix.mu1 + mix.mu2) * self.real.eta;
        delta * e / (e + mix.mua * self.eta_a)
    }

    /// Factor turning a fake-tag proportion into one among non-adversaries.
    pub fn iqos_factor(&self, mix: &UserMix, u: Actuality) -> f64 {
        let e = (mix.mu1 + mix.mu2) * self.post(u).eta;
        (e + mix.mua * self.eta_a) / e
    }
}
