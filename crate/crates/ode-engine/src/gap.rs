use bp_core::{harmonic, RatioVector};

use crate::{OdeError, OdeTrajectory};

/// `sup ‖Υ_k − Υ(t_k − t_{n_start})‖∞` over epochs with `t_k` in
/// `[t_{n_start}, t_{n_start} + horizon]`, where `t_n = H_n`.
pub fn finite_time_gap(
    sa: &[(u64, RatioVector)],
    ode: &OdeTrajectory,
    n_start: u64,
    horizon: f64,
) -> Result<f64, OdeError> {
    let t0 = harmonic(n_start);
    let t1 = t0 + horizon;
    if !sa.iter().any(|(k, _)| *k == n_start) {
        return Err(OdeError::Insufficient(format!(
            "epoch {n_start} not recorded"
        )));
    }
    let last = sa.iter().map(|(k, _)| *k).max().unwrap_or(0);
    if harmonic(last + 1) <= t1 {
        return Err(OdeError::Insufficient(format!(
            "last epoch {last} ends before t = {t1}"
        )));
    }
    if ode.times.last().copied().unwrap_or(0.0) < horizon * (1.0 - 1e-12) {
        return Err(OdeError::Insufficient(
            "ODE horizon shorter than requested".into(),
        ));
    }
    let mut gap: f64 = 0.0;
    for (k, y) in sa {
        if *k < n_start {
            continue;
        }
        let t = harmonic(*k);
        if t > t1 {
            continue;
        }
        let z = ode.at(t - t0);
        let d = y
            .as_array()
            .iter()
            .zip(&z)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        gap = gap.max(d);
    }
    Ok(gap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::picard_solve;

    #[test]
    fn exact_samples_have_zero_gap() {
        let rhs = |y: &[f64], _: f64| y.iter().map(|v| 1.0 - v).collect::<Vec<_>>();
        let ode = picard_solve(rhs, &[2.0, 1.0, 3.0, 1.0], 2.0, 2, 10).unwrap();
        let t0 = harmonic(4);
        let sa: Vec<(u64, RatioVector)> = (4..40)
            .map(|k| {
                let v = ode.at(harmonic(k) - t0);
                (k, RatioVector::new(v[0], v[1], v[2], v[3]))
            })
            .collect();
        assert!(finite_time_gap(&sa, &ode, 4, 2.0).unwrap() < 1e-15);
    }

    #[test]
    fn frozen_origin_path() {
        let rhs = |y: &[f64], _: f64| y.iter().map(|v| -v).collect::<Vec<_>>();
        let ode = picard_solve(rhs, &[0.0; 4], 1.0, 5, 100).unwrap();
        let sa: Vec<_> = (3..20)
            .map(|k| (k, RatioVector::new(0.0, 0.0, 0.0, 0.0)))
            .collect();
        assert_eq!(finite_time_gap(&sa, &ode, 3, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn short_path_rejected() {
        let rhs = |y: &[f64], _: f64| y.to_vec();
        let ode = picard_solve(rhs, &[0.0; 4], 3.0, 1, 10).unwrap();
        let sa: Vec<_> = (5..10)
            .map(|k| (k, RatioVector::new(0.0, 0.0, 0.0, 0.0)))
            .collect();
        assert!(finite_time_gap(&sa, &ode, 5, 3.0).is_err());
    }
}
