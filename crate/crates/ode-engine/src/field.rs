use bp_core::{harmonic, MeanMatrix, MeanModel};

use crate::ScalarField;

/// `h(β)` for means `m`: the birth part of the drift, `(ψᶜ, θᶜ, ψᵃ, θᵃ)`.
pub fn drift(m: &MeanMatrix, beta: f64) -> [f64; 4] {
    let (xx, xy, yx, yy) = (m[0][0], m[0][1], m[1][0], m[1][1]);
    let psi_c = beta * (xx + xy) + (1.0 - beta) * (yy + yx) - 1.0;
    let theta_c = beta * (xx - 1.0) + (1.0 - beta) * yx;
    let theta_a = beta * xx + (1.0 - beta) * yx;
    [psi_c, theta_c, psi_c + 1.0, theta_a]
}

/// Limit point `h(β)` using the limiting means.
pub fn h_of_beta<M: MeanModel + ?Sized>(model: &M, beta: f64) -> [f64; 4] {
    drift(&model.limit(beta), beta)
}

/// Proportion field `g(β) = h_θᶜ(β) − β·h_ψᶜ(β)`.
pub fn g_beta_field<M>(model: M, kinks: Vec<f64>) -> ScalarField
where
    M: MeanModel + Send + Sync + 'static,
{
    ScalarField::new(move |b| {
        let h = h_of_beta(&model, b);
        h[1] - b * h[0]
    })
    .with_kinks(kinks)
}

fn beta_of(y: &[f64; 4]) -> f64 {
    if y[0] > 0.0 {
        (y[1] / y[0]).clamp(0.0, 1.0)
    } else {
        0.0
    }
}

fn finish(h: [f64; 4], y: &[f64; 4]) -> [f64; 4] {
    let on = if y[0] > 0.0 { 1.0 } else { 0.0 };
    std::array::from_fn(|i| on * h[i] - y[i])
}

/// Autonomous `g(Υ) = 1{ψᶜ>0}·h(β) − Υ`.
pub fn autonomous_rhs<M: MeanModel + ?Sized>(y: &[f64; 4], model: &M) -> [f64; 4] {
    let b = beta_of(y);
    finish(h_of_beta(model, b), y)
}

/// `η(t) = max{n : H_n ≤ t}` with `H_n` the harmonic numbers.
pub fn eta(t: f64) -> u64 {
    if !(t >= 1.0) {
        return 0;
    }
    let mut n = ((t - 0.577_215_664_901_532_9).exp()).floor().max(1.0) as u64;
    while n > 1 && harmonic(n) > t {
        n -= 1;
    }
    while harmonic(n + 1) <= t {
        n += 1;
    }
    n
}

/// Drift with the finite-population means at `φ = Υ·η(t)`.
pub fn nonauto_rhs<M: MeanModel + ?Sized>(y: &[f64; 4], t: f64, model: &M) -> [f64; 4] {
    let e = eta(t) as f64;
    let phi = [y[1] * e, (y[0] - y[1]) * e, y[3] * e, (y[2] - y[3]) * e];
    finish(drift(&model.mean(&phi), beta_of(y)), y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use bp_core::{ConstantMean, LinearSaturating};

    #[test]
    fn eta_inverts_harmonic() {
        assert_eq!(eta(0.5), 0);
        assert_eq!(eta(1.0), 1);
        assert_eq!(eta(1.49), 1);
        assert_eq!(eta(1.5), 2);
        for n in [7u64, 100, 12_345, 250_000] {
            assert_eq!(eta(harmonic(n)), n);
            assert_eq!(eta(harmonic(n) - 1e-9), n - 1);
        }
    }

    #[test]
    fn constant_means_collapse_to_autonomous() {
        let m = ConstantMean([[1.5, 0.3], [0.2, 1.1]]);
        let y = [2.0, 0.7, 3.0, 1.2];
        for t in [0.0, 1.3, 7.0, 40.0] {
            assert_eq!(nonauto_rhs(&y, t, &m), autonomous_rhs(&y, &m));
        }
    }

    #[test]
    fn empty_population_decays() {
        let m = ConstantMean([[2.0, 0.0], [0.0, 2.0]]);
        let y = [0.0, 0.0, 1.5, 0.4];
        assert_eq!(nonauto_rhs(&y, 3.0, &m), [0.0, 0.0, -1.5, -0.4]);
    }

    #[test]
    fn example_mean_enters_drift() {
        let m = LinearSaturating::example();
        let t = harmonic(100);
        assert_eq!(eta(t), 100);
        let y = [1.0, 1.0, 2.0, 2.0];
        let d = nonauto_rhs(&y, t, &m);
        // single type, β = 1: ψ̇ᶜ = m − 1 − ψᶜ with m(200) = 2.6
        assert!((d[0] - (2.6 - 1.0 - 1.0)).abs() < 1e-12);
        assert!((d[2] - (2.6 - 2.0)).abs() < 1e-12);
    }

    #[test]
    fn g_vanishes_at_lifted_equilibrium() {
        let m = ConstantMean([[1.2, 0.0], [0.0, 1.2]]);
        let h = h_of_beta(&m, 1.0);
        for (a, b) in h.iter().zip([0.2, 0.2, 1.2, 1.2]) {
            assert!((a - b).abs() < 1e-15);
        }
        let r = autonomous_rhs(&h, &m);
        assert!(r.iter().all(|v| v.abs() < 1e-15));
    }
}
