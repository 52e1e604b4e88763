use fakepost_wm::*;
use proptest::prelude::*;

prop_compose! {
    fn config()(
        ay_r in 0.05..0.2f64, sep_r in 1.1..2.0f64, lift in 1.1..2.5f64,
        gamma in 0.05..0.3f64, eta_r in 0.05..0.4f64, eta_lift in 1.05..1.5f64,
        rho in 0.1..0.9f64, mu1 in 0.0..0.25f64, mu2 in 0.2..0.5f64, mua in 0.0..0.2f64,
    ) -> (WmParams, UserMix) {
        let ax_r = ay_r * sep_r;
        let eta_f = (eta_r * eta_lift).min(0.95);
        let params = WmParams {
            m_f: 20.0,
            gamma,
            eta_a: (eta_f + 0.02).min(0.99),
            rho,
            real: PostModel { eta: eta_r, alpha_x: ax_r, alpha_y: ay_r },
            fake: PostModel { eta: eta_f, alpha_x: (ax_r * lift).min(0.95 / (1.0 + gamma)), alpha_y: ay_r * lift.min(sep_r) },
            k: 0.0,
            friends: FriendLaw::Geometric,
        };
        (params, UserMix::new(mu1, mu2, mua).unwrap())
    }
}

fn eo_root(p: &WmParams, m: &UserMix, u: Actuality, w: f64, b: f64) -> (f64, Limits) {
    let l = limit_proportions(&Warning::eo(w, b, p.gamma), u, p, m).unwrap();
    (l.roots[0], l)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn eo_has_one_root_inside_bounds((p, m) in config(), wf in 0.0..1.0f64, b in 0.0..3.0f64) {
        prop_assume!(p.validate().is_ok());
        let w = wf * (1.0 / p.fake.alpha_x - p.gamma);
        for u in [Actuality::R, Actuality::F] {
            let (r, l) = eo_root(&p, &m, u, w, b);
            prop_assert_eq!(l.roots.len(), 1);
            prop_assert!(r > l.lower - 1e-12 && r <= l.upper + 1e-9, "{} not in ({}, {}]", r, l.lower, l.upper);
            prop_assert!(gbeta_wm(r, u, &Warning::eo(w, b, p.gamma), &p, &m).abs() < 1e-9);
        }
    }

    #[test]
    fn eo_root_monotone((p, m) in config(), wf in 0.05..0.9f64, b in 0.01..2.0f64) {
        prop_assume!(p.validate().is_ok());
        let w = wf * (1.0 / p.fake.alpha_x - p.gamma);
        for u in [Actuality::R, Actuality::F] {
            let (r0, _) = eo_root(&p, &m, u, w, b);
            let (rw, _) = eo_root(&p, &m, u, w * 1.1, b);
            let (rb, _) = eo_root(&p, &m, u, w, b * 1.1);
            prop_assert!(rw > r0, "w: {} -> {}", r0, rw);
            prop_assert!(rb < r0, "b: {} -> {}", r0, rb);
        }
    }

    #[test]
    fn optimal_eo_saturates_constraint((p, m) in config(), delta in 0.02..0.2f64) {
        prop_assume!(p.validate().is_ok());
        if let Ok(d) = optimize_eo(&p, &m, delta, DeltaMode::Qos) {
            if d.b > 0.0 {
                prop_assert!((d.real.max_root() - delta).abs() < 1e-6, "{:?}", d.real.roots);
            } else {
                prop_assert!(d.real.max_root() <= delta);
            }
        }
    }

    #[test]
    fn ea_warning_dominates_eo((p, m) in config(), w in 0.1..2.0f64, b in 0.0..2.0f64, beta in 0.0..=1.0f64) {
        let a = Warning::ea(w, b, &p, &m).omega(beta);
        let o = Warning::eo(w, b, p.gamma).omega(beta);
        if m.mua * beta == 0.0 {
            prop_assert_eq!(a, o);
        } else {
            prop_assert!(a > o);
        }
    }

    #[test]
    fn eh_not_worse_than_ea((p, m) in config(), delta in 0.03..0.2f64) {
        prop_assume!(p.validate().is_ok() && m.mua > 0.01);
        let (Ok(ea), Ok(eh)) = (design_ea(&p, &m, delta), design_eh(&p, &m, delta, DeltaMode::Iqos)) else {
            return Ok(());
        };
        prop_assume!(eh.zeta >= 1.0);
        prop_assert!(eh.fake.qos >= ea.fake.qos - 1e-9, "{} < {}", eh.fake.qos, ea.fake.qos);
    }
}
