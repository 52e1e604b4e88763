use serde::{Deserialize, Serialize};

use crate::GameError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Actuality {
    R,
    F,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameParams {
    pub alpha_r: f64,
    pub alpha_f: f64,
    pub mua: f64,
    /// Prior probability that a post is fake.
    pub p: f64,
    pub q_p: f64,
    pub q_np: f64,
    pub c_e: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub theta: f64,
    pub delta: f64,
}

impl GameParams {
    pub fn validate(&self) -> Result<(), GameError> {
        let bad = |m: &str| Err(GameError::Invalid(m.into()));
        let f = [
            self.alpha_r,
            self.alpha_f,
            self.mua,
            self.p,
            self.q_p,
            self.q_np,
            self.c_e,
            self.a,
            self.b,
            self.c,
        ];
        if f.iter()
            .chain([&self.theta, &self.delta])
            .any(|x| !x.is_finite())
        {
            return bad("parameters must be finite");
        }
        if !(0.0 < self.alpha_r && self.alpha_r < self.alpha_f && self.alpha_f < 1.0) {
            return bad("need 0 < alpha_r < alpha_f < 1");
        }
        if !(0.0..1.0).contains(&self.mua) {
            return bad("mua outside [0, 1)");
        }
        if !(self.p > 0.0 && self.p < 1.0) {
            return bad("p outside (0, 1)");
        }
        if self.q_p < self.q_np {
            return bad("need q_p >= q_np");
        }
        if !(self.c_e > 0.0 && self.a > 0.0 && self.b > 0.0 && self.c > 0.0) {
            return bad("c_e, a, b, c must be positive");
        }
        let lo = self.alpha_f.max(self.delta / self.delta_r_pow());
        if !(self.theta > lo && self.theta <= 1.0) {
            return bad(&format!("theta must lie in ({lo}, 1]"));
        }
        if !(self.delta > self.alpha_r && self.delta < self.theta) {
            return bad("delta must lie in (alpha_r, theta)");
        }
        Ok(())
    }

    /// `(α_F/α_R)^a`.
    pub fn delta_r_pow(&self) -> f64 {
        (self.alpha_f / self.alpha_r).powf(self.a)
    }

    pub fn alpha(&self, u: Actuality) -> f64 {
        match u {
            Actuality::R => self.alpha_r,
            Actuality::F => self.alpha_f,
        }
    }

    /// `(α_u/α_R)^a`.
    pub fn delta_pow(&self, u: Actuality) -> f64 {
        match u {
            Actuality::R => 1.0,
            Actuality::F => self.delta_r_pow(),
        }
    }

    pub fn delta_a(&self) -> f64 {
        self.delta * (1.0 - self.mua)
    }

    /// `η*_l = (1 − l)(1 − μa)/(1 − α_F)`.
    pub fn eta_star(&self, l: f64) -> f64 {
        (1.0 - l) * (1.0 - self.mua) / (1.0 - self.alpha_f)
    }
}

/// Strategy proportions `(μ0, μ1, μ2)`; adversaries take the remaining `μa`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mix {
    pub mu0: f64,
    pub mu1: f64,
    pub mu2: f64,
}

impl Mix {
    /// `μ_x = (0, x, 1 − x − μa)`.
    pub fn x(x: f64, mua: f64) -> Self {
        Mix {
            mu0: 0.0,
            mu1: x,
            mu2: 1.0 - x - mua,
        }
    }

    pub fn validate(&self, mua: f64) -> Result<(), GameError> {
        let parts = [self.mu0, self.mu1, self.mu2];
        if parts.iter().any(|m| !(*m >= -1e-12))
            || (parts.iter().sum::<f64>() + mua - 1.0).abs() > 1e-9
        {
            return Err(GameError::Invalid(format!(
                "{self:?} with mua = {mua} is not a distribution"
            )));
        }
        if self.mu1 + self.mu2 + mua <= 0.0 {
            return Err(GameError::Invalid("no participants".into()));
        }
        Ok(())
    }

    fn participants(&self, mua: f64) -> f64 {
        self.mu1 + self.mu2 + mua
    }

    /// Type-1 share among participants.
    pub fn eta(&self, mua: f64) -> f64 {
        self.mu1 / self.participants(mua)
    }

    /// Adversary share among participants.
    pub fn eta_a(&self, mua: f64) -> f64 {
        mua / self.participants(mua)
    }
}
