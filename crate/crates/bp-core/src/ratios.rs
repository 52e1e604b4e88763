use serde::Serialize;

use crate::{BpError, RatioVector, Trajectory};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Harmonic number `H_n = Σ_{k≤n} 1/k`, the ODE time of epoch `n`.
pub fn harmonic(n: u64) -> f64 {
    if n <= 10_000 {
        return (1..=n).rev().map(|k| 1.0 / k as f64).sum();
    }
    let x = n as f64;
    x.ln() + EULER_GAMMA + 1.0 / (2.0 * x) - 1.0 / (12.0 * x * x) + 1.0 / (120.0 * x.powi(4))
}

/// `(epoch, Υ)` at each recorded epoch. If the path went extinct and
/// `horizon` lies beyond the last record, the frozen state is re-scaled at
/// `horizon`, so the ratios decay like `1/n`.
pub fn ratio_sequence(traj: &Trajectory, horizon: Option<u64>) -> Vec<(u64, RatioVector)> {
    let mut out: Vec<(u64, RatioVector)> =
        traj.records.iter().map(|r| (r.epoch, r.ratios)).collect();
    if let (true, Some(h), Some(last)) = (traj.extinct, horizon, traj.records.last()) {
        if h > last.epoch {
            out.push((h, RatioVector::at_epoch(&last.state, h)));
        }
    }
    out
}

/// Ratios via `Υ_n = Υ_{n-1} + (ΔΦ_n − Υ_{n-1})/n`, started from the
/// directly computed `Υ_1`. Needs every epoch recorded.
pub fn ratios_incremental(traj: &Trajectory) -> Result<Vec<RatioVector>, BpError> {
    let recs = &traj.records;
    if recs.is_empty() {
        return Err(BpError::Empty);
    }
    if recs.iter().enumerate().any(|(i, r)| r.epoch != i as u64) {
        return Err(BpError::InvalidSample("trajectory is thinned".into()));
    }
    let mut out = vec![recs[0].ratios];
    if recs.len() == 1 {
        return Ok(out);
    }
    let mut y = RatioVector::from_state(&recs[1].state).as_array();
    out.push(RatioVector::from_array(y));
    for (k, w) in recs.windows(2).enumerate().skip(1) {
        let n = (k + 1) as f64;
        let (a, b) = (w[0].state.phi(), w[1].state.phi());
        let delta = [
            (b[0] + b[1]) - (a[0] + a[1]),
            b[0] - a[0],
            (b[2] + b[3]) - (a[2] + a[3]),
            b[2] - a[2],
        ];
        for i in 0..4 {
            y[i] += (delta[i] - y[i]) / n;
        }
        out.push(RatioVector::from_array(y));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DichotomyStats {
    pub replications: usize,
    pub extinct: usize,
    pub extinct_fraction: f64,
    /// Survivors whose `S_n` at the cap is below `S_{n/2}`.
    pub unclassified: usize,
    pub growth_rates: Vec<f64>,
    pub mean_growth: f64,
    pub growth_se: f64,
}

/// Least-squares slope of `ln S` against `τ` over the latter half of the path.
fn growth_rate(traj: &Trajectory) -> Option<f64> {
    let recs = &traj.records;
    let pts: Vec<(f64, f64)> = recs[recs.len() / 2..]
        .iter()
        .filter(|r| r.state.sum_current() > 0)
        .map(|r| (r.tau, (r.state.sum_current() as f64).ln()))
        .collect();
    if pts.len() < 3 {
        return None;
    }
    let n = pts.len() as f64;
    let mt = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let ms = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mt).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mt) * (p.1 - ms)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

fn doubles(traj: &Trajectory) -> bool {
    let Some(last) = traj.records.last() else {
        return false;
    };
    let half = last.epoch / 2;
    let mid = traj
        .records
        .iter()
        .find(|r| r.epoch >= half)
        .unwrap_or(last);
    last.state.sum_current() >= mid.state.sum_current()
}

/// Extinction versus growth across replications.
pub fn dichotomy(trajs: &[Trajectory]) -> DichotomyStats {
    let extinct = trajs.iter().filter(|t| t.extinct).count();
    let survivors: Vec<&Trajectory> = trajs.iter().filter(|t| !t.extinct).collect();
    let unclassified = survivors.iter().filter(|t| !doubles(t)).count();
    let growth_rates: Vec<f64> = survivors.iter().filter_map(|t| growth_rate(t)).collect();
    let k = growth_rates.len() as f64;
    let (mean_growth, growth_se) = if growth_rates.is_empty() {
        (f64::NAN, f64::NAN)
    } else {
        let m = growth_rates.iter().sum::<f64>() / k;
        let var = if k > 1.0 {
            growth_rates.iter().map(|g| (g - m).powi(2)).sum::<f64>() / (k - 1.0)
        } else {
            0.0
        };
        (m, (var / k).sqrt())
    };
    DichotomyStats {
        replications: trajs.len(),
        extinct,
        extinct_fraction: if trajs.is_empty() {
            f64::NAN
        } else {
            extinct as f64 / trajs.len() as f64
        },
        unclassified,
        growth_rates,
        mean_growth,
        growth_se,
    }
}

/// Ratio sequence of one replication, indexed by epoch.
pub type RatioPath = Vec<(u64, RatioVector)>;

pub fn ratios_and_dichotomy(
    trajs: &[Trajectory],
) -> Result<(Vec<RatioPath>, DichotomyStats), BpError> {
    if trajs.is_empty() {
        return Err(BpError::Empty);
    }
    let seqs = trajs.iter().map(|t| ratio_sequence(t, None)).collect();
    Ok((seqs, dichotomy(trajs)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_small_and_large_agree() {
        assert_eq!(harmonic(0), 0.0);
        assert!((harmonic(3) - 11.0 / 6.0).abs() < 1e-15);
        let exact: f64 = (1..=10_001u64).rev().map(|k| 1.0 / k as f64).sum();
        assert!((harmonic(10_001) - exact).abs() < 1e-12);
    }

    #[test]
    fn empty_input_is_error() {
        assert_eq!(ratios_and_dichotomy(&[]).unwrap_err(), BpError::Empty);
    }
}
