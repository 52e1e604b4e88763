/// Smallest fixed point of a probability generating function on `[0, 1]`.
pub fn extinction_prob_pgf<F: Fn(f64) -> f64>(pgf: F) -> f64 {
    let h = |s: f64| pgf(s) - s;
    if h(0.0) <= 1e-15 {
        return 0.0;
    }
    const GRID: usize = 4096;
    let mut lo = 0.0;
    let mut hi = 1.0;
    for i in 1..=GRID {
        let s = i as f64 / GRID as f64;
        if h(s) <= 0.0 {
            hi = s;
            break;
        }
        lo = s;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if h(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    hi
}

/// PGF of `Poisson(mean)`.
pub fn poisson_pgf(mean: f64) -> impl Fn(f64) -> f64 {
    move |s| (mean * (s - 1.0)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic() {
        assert!((extinction_prob_pgf(|s| 0.25 + 0.75 * s * s) - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn subcritical_and_identity() {
        assert!((extinction_prob_pgf(|s| 0.6 + 0.4 * s) - 1.0).abs() < 1e-12);
        assert_eq!(extinction_prob_pgf(|s| s), 0.0);
    }

    #[test]
    fn poisson_two() {
        // q = exp(2(q − 1)) has root 0.2031878699...
        assert!((extinction_prob_pgf(poisson_pgf(2.0)) - 0.203_187_869_979_980).abs() < 1e-9);
    }
}
