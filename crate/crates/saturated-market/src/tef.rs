use serde::{Deserialize, Serialize};

use crate::MarketError;

/// Two-slope TeF `m(a) = ρ·m_N(a)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TefParams {
    pub m_bar: f64,
    pub kappa1: f64,
    pub kappa2: f64,
    pub a_break: f64,
    pub rho: f64,
}

impl TefParams {
    pub fn new(
        m_bar: f64,
        kappa1: f64,
        kappa2: f64,
        a_break: f64,
        rho: f64,
    ) -> Result<Self, MarketError> {
        let p = TefParams {
            m_bar,
            kappa1,
            kappa2,
            a_break,
            rho,
        };
        p.validate()?;
        Ok(p)
    }

    /// Fit to the SNAP Twitter graph.
    pub fn snap(rho: f64) -> Self {
        TefParams {
            m_bar: 21.321042,
            kappa1: 532e-6,
            kappa2: 83e-6,
            a_break: 35000.0,
            rho,
        }
    }

    pub fn validate(&self) -> Result<(), MarketError> {
        let all = [self.m_bar, self.kappa1, self.kappa2, self.a_break, self.rho];
        if all.iter().any(|x| !x.is_finite() || *x <= 0.0) {
            return Err(MarketError::Invalid(format!(
                "TeF parameters must be positive: {self:?}"
            )));
        }
        if self.kappa1 <= self.kappa2 {
            return Err(MarketError::Invalid("need kappa1 > kappa2".into()));
        }
        if self.rho > 1.0 {
            return Err(MarketError::Invalid(format!(
                "rho = {} outside (0, 1]",
                self.rho
            )));
        }
        if self.rho * self.m_bar <= 1.0 {
            return Err(MarketError::Invalid("rho * m_bar must exceed 1".into()));
        }
        Ok(())
    }

    pub fn m_tilde(&self) -> f64 {
        self.m_bar - self.a_break * (self.kappa1 - self.kappa2)
    }

    /// Network TeF at `ρ = 1`, not clamped.
    pub fn m_network(&self, a: f64) -> f64 {
        if a <= self.a_break {
            self.m_bar - self.kappa1 * a
        } else {
            self.m_tilde() - self.kappa2 * a
        }
    }

    /// Expected effective forwards when `a` users already hold the post.
    pub fn tef(&self, a: f64) -> f64 {
        (self.rho * self.m_network(a)).max(0.0)
    }

    /// A common fit is only trusted for `ρ ≥ 0.4`.
    pub fn common_fit_valid(&self) -> bool {
        self.rho >= 0.4
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snap_values() {
        let p = TefParams::snap(1.0);
        assert_eq!(p.tef(0.0), 21.321042);
        assert!((p.tef(35000.0) - 2.701042).abs() < 1e-9);
        assert!((p.m_network(35000.0) - (p.m_tilde() - p.kappa2 * 35000.0)).abs() < 1e-9);
    }

    #[test]
    fn clamped_tail() {
        let p = TefParams::snap(0.5);
        assert_eq!(p.tef(1e6), 0.0);
    }

    #[test]
    fn rejects_bad() {
        assert!(TefParams::new(21.0, 1e-4, 2e-4, 100.0, 1.0).is_err());
        assert!(TefParams::new(1.5, 2e-4, 1e-4, 100.0, 0.5).is_err());
        assert!(TefParams::new(21.0, 2e-4, 1e-4, 100.0, 1.2).is_err());
    }
}
