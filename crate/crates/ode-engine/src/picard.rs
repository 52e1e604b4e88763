use serde::Serialize;

use crate::OdeError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverMeta {
    pub sweeps: usize,
    pub step: f64,
    /// Sup-distance between consecutive iterates, per sweep (last window).
    pub sweep_deltas: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OdeTrajectory {
    pub times: Vec<f64>,
    pub values: Vec<Vec<f64>>,
    pub meta: SolverMeta,
}

impl OdeTrajectory {
    /// Linear interpolation at `t`, clamped to the covered range.
    pub fn at(&self, t: f64) -> Vec<f64> {
        let last = self.times.len() - 1;
        if t <= self.times[0] {
            return self.values[0].clone();
        }
        if t >= self.times[last] {
            return self.values[last].clone();
        }
        let i = self.times.partition_point(|&s| s <= t) - 1;
        let (t0, t1) = (self.times[i], self.times[i + 1]);
        let w = (t - t0) / (t1 - t0);
        self.values[i]
            .iter()
            .zip(&self.values[i + 1])
            .map(|(a, b)| a + w * (b - a))
            .collect()
    }

    pub fn last(&self) -> &[f64] {
        self.values.last().expect("non-empty trajectory")
    }
}

/// Picard iterate `y_{k+1}(t) = y0 + ∫_0^t f(y_k(s), s) ds` on a uniform mesh of
/// `mesh` intervals over `[0, t_end]`, with trapezoid quadrature.
pub fn picard_solve<F>(
    rhs: F,
    y0: &[f64],
    t_end: f64,
    sweeps: usize,
    mesh: usize,
) -> Result<OdeTrajectory, OdeError>
where
    F: Fn(&[f64], f64) -> Vec<f64>,
{
    picard_solve_windowed(rhs, y0, t_end, sweeps, mesh, t_end)
}

/// Picard iteration restarted on consecutive windows of length `window`,
/// each initialised at the previous window's end value. Keeps the iteration
/// contractive on long horizons.
pub fn picard_solve_windowed<F>(
    rhs: F,
    y0: &[f64],
    t_end: f64,
    sweeps: usize,
    mesh: usize,
    window: f64,
) -> Result<OdeTrajectory, OdeError>
where
    F: Fn(&[f64], f64) -> Vec<f64>,
{
    if sweeps == 0 || mesh == 0 || !(t_end > 0.0) || !(window > 0.0) {
        return Err(OdeError::BadArg(
            "sweeps, mesh, horizon and window must be positive".into(),
        ));
    }
    let h = t_end / mesh as f64;
    let per_window = ((window / h).round() as usize).clamp(1, mesh);
    let dim = y0.len();
    let mut times = vec![0.0];
    let mut values = vec![y0.to_vec()];
    let mut deltas = Vec::new();
    let mut start = 0;
    while start < mesh {
        let len = per_window.min(mesh - start);
        let ts: Vec<f64> = (0..=len).map(|i| (start + i) as f64 * h).collect();
        let init = values.last().expect("seeded").clone();
        let mut cur = vec![init.clone(); len + 1];
        deltas.clear();
        for _ in 0..sweeps {
            let f: Vec<Vec<f64>> = cur
                .iter()
                .zip(&ts)
                .map(|(y, &t)| {
                    let v = rhs(y, t);
                    if v.iter().any(|x| !x.is_finite()) {
                        Err(OdeError::NonFinite { time: t })
                    } else {
                        Ok(v)
                    }
                })
                .collect::<Result<_, _>>()?;
            let mut next = Vec::with_capacity(len + 1);
            let mut acc = init.clone();
            next.push(acc.clone());
            for i in 1..=len {
                for d in 0..dim {
                    acc[d] += 0.5 * h * (f[i - 1][d] + f[i][d]);
                }
                next.push(acc.clone());
            }
            let delta = next
                .iter()
                .zip(&cur)
                .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
                .fold(0.0, f64::max);
            deltas.push(delta);
            cur = next;
        }
        times.extend_from_slice(&ts[1..]);
        values.extend(cur.into_iter().skip(1));
        start += len;
    }
    Ok(OdeTrajectory {
        times,
        values,
        meta: SolverMeta {
            sweeps,
            step: h,
            sweep_deltas: deltas,
        },
    })
}
