use proptest::prelude::*;
use saturated_market::*;

/// Golden-section maximum of `f` on `[lo, hi]` after a coarse scan.
fn numeric_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> f64 {
    let n = 2000;
    let h = (hi - lo) / n as f64;
    let k = (0..=n)
        .max_by(|&i, &j| f(lo + i as f64 * h).total_cmp(&f(lo + j as f64 * h)))
        .unwrap();
    let (mut a, mut b) = (
        (lo + (k as f64 - 1.0) * h).max(lo),
        (lo + (k as f64 + 1.0) * h).min(hi),
    );
    let r = (5f64.sqrt() - 1.0) / 2.0;
    while b - a > 1e-12 {
        let (x1, x2) = (b - r * (b - a), a + r * (b - a));
        if f(x1) < f(x2) {
            a = x1;
        } else {
            b = x2;
        }
    }
    f(0.5 * (a + b))
}

#[test]
fn snap_peak_and_reach() {
    for rho in [0.4, 0.6] {
        let p = TefParams::snap(rho);
        let cf = closed_form(&p, 2.0, 2.0).unwrap();
        let m = metrics(&p, 2.0, 2.0).unwrap();
        let num = numeric_max(|t| cf.c(t), 0.0, cf.tau_e);
        assert!(
            (m.c_star - num).abs() / num < 0.005,
            "{rho}: {} vs {num}",
            m.c_star
        );
        assert!((cf.a_epoch(m.n_e).unwrap() - m.n_e).abs() <= 1.0);
        assert_eq!(m.max_reach, m.n_e);
    }
}

#[test]
fn growth_rate_per_phase() {
    let p = TefParams::snap(0.6);
    let cf = closed_form(&p, 2.0, 2.0).unwrap();
    let ns = cf.n_s().unwrap();
    let slope = |phase: &Phase, n0: f64, n1: f64| {
        let f = |n: f64| (phase.w1 - cf.a_epoch(n).unwrap()).ln();
        (f(n1) - f(n0)) / (n1 - n0)
    };
    let s1 = slope(&cf.phase1, 100.0, ns - 100.0);
    let s2 = slope(
        cf.phase2.as_ref().unwrap(),
        ns + 100.0,
        cf.n_e().unwrap() - 100.0,
    );
    assert!((s1 / (-p.kappa1 * p.rho) - 1.0).abs() < 0.05, "{s1}");
    assert!((s2 / (-p.kappa2 * p.rho) - 1.0).abs() < 0.05, "{s2}");
}

#[test]
fn totals_saturate() {
    let cf = closed_form(&TefParams::snap(0.4), 2.0, 2.0).unwrap();
    let ts: Vec<f64> = (0..400).map(|k| k as f64 * 0.05).collect();
    let tr = cf.sample(&ts).unwrap();
    assert!(tr.a.windows(2).all(|w| w[1] >= w[0]));
    for (t, (&a, &c)) in ts.iter().zip(tr.a.iter().zip(&tr.c)) {
        if *t >= tr.tau_e {
            assert_eq!(c, 0.0);
            assert_eq!(a, cf.a(tr.tau_e));
        }
    }
}

prop_compose! {
    fn tef_params()(m_bar in 5.0..30.0f64, k1 in 1e-4..1e-3f64, ratio in 0.05..0.8f64,
                    brk in 0.3..0.95f64, rho in 0.3..1.0f64) -> TefParams {
        TefParams { m_bar, kappa1: k1, kappa2: k1 * ratio, a_break: brk * m_bar / k1, rho }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn peak_formula_matches_numeric_max(p in tef_params(), a0 in 1u32..5) {
        prop_assume!(p.validate().is_ok());
        let a0 = a0 as f64;
        let cf = closed_form(&p, a0, a0).unwrap();
        let num = numeric_max(|t| cf.c(t), 0.0, cf.tau_e);
        prop_assert!((cf.c_star() - num).abs() / num < 0.005, "{} vs {}", cf.c_star(), num);
    }

    #[test]
    fn epoch_identity_holds(p in tef_params(), n in 1.0..1e5f64) {
        prop_assume!(p.validate().is_ok());
        let cf = closed_form(&p, 1.0, 1.0).unwrap();
        let n = n.floor().min(cf.n_e().unwrap().floor());
        prop_assert_eq!(cf.a_epoch(n).unwrap() - cf.c_epoch(n).unwrap(), n);
    }
}
