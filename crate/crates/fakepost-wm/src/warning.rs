use serde::{Deserialize, Serialize};

use crate::{UserMix, WmParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WarningKind {
    Eo,
    Ea,
    Eh,
    Eh2,
    Learned,
}

/// `ω(β) = ζ·(wβ/(β + b(1−β)) + γ + adversary term)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Warning {
    pub w: f64,
    pub b: f64,
    pub gamma: f64,
    pub zeta: f64,
    /// `μ_a η_a / (μ2 η^F)`; zero outside ea/eh.
    pub adv: f64,
    pub ax_f: f64,
    pub ay_f: f64,
}

impl Warning {
    pub fn eo(w: f64, b: f64, gamma: f64) -> Self {
        Warning {
            w,
            b,
            gamma,
            zeta: 1.0,
            adv: 0.0,
            ax_f: 1.0,
            ay_f: 1.0,
        }
    }

    /// Adds the adversary-compensating term built from fake-post sensitivities.
    pub fn ea(w: f64, b: f64, params: &WmParams, mix: &UserMix) -> Self {
        Warning {
            adv: mix.mua * params.eta_a / (mix.mu2 * params.fake.eta),
            ax_f: params.fake.alpha_x,
            ay_f: params.fake.alpha_y,
            ..Warning::eo(w, b, params.gamma)
        }
    }

    pub fn scaled(self, zeta: f64) -> Self {
        Warning { zeta, ..self }
    }

    /// The eo part; equals `γ` at `β = b = 0`.
    pub fn base(&self, beta: f64) -> f64 {
        if beta == 0.0 && self.b == 0.0 {
            self.gamma
        } else {
            self.w * beta / (beta + self.b * (1.0 - beta)) + self.gamma
        }
    }

    pub fn omega(&self, beta: f64) -> f64 {
        let adv = if self.adv > 0.0 {
            beta * self.adv / (beta * self.ax_f + (1.0 - beta) * self.ay_f)
        } else {
            0.0
        };
        self.zeta * (self.base(beta) + adv)
    }
}

/// Warning shown at proportion `beta` by a designed mechanism.
pub fn warning_value(warning: &Warning, beta: f64) -> f64 {
    warning.omega(beta)
}
