use bp_core::{
    harmonic, ratio_sequence, replication_rng, simulate, ConstantMean, LinearSaturating,
    PoissonOffspring, PopulationState, SimConfig, UniformDeath,
};
use ode_engine::*;
use proptest::prelude::*;

/// Roots strictly inside (0,1), pairwise separated, plus a leading sign.
fn poly() -> impl Strategy<Value = (Vec<f64>, f64)> {
    (
        prop::collection::vec(0.002..0.998f64, 0..=4),
        prop::bool::ANY,
    )
        .prop_filter_map("separated roots", |(mut r, pos)| {
            r.sort_by(f64::total_cmp);
            let ok = r.windows(2).all(|w| w[1] - w[0] > 0.002);
            ok.then_some((r, if pos { 1.0 } else { -1.0 }))
        })
}

fn dense_oracle(g: &dyn Fn(f64) -> f64) -> Vec<(f64, EqKind)> {
    let n = 100_000;
    let mut out = Vec::new();
    let mut prev = g(0.0);
    for j in 1..=n {
        let x = j as f64 / n as f64;
        let v = g(x);
        if prev.signum() != v.signum() {
            let kind = if prev > 0.0 {
                EqKind::Attractor
            } else {
                EqKind::Repeller
            };
            out.push((x - 0.5 / n as f64, kind));
        }
        prev = v;
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn classification_matches_dense_scan((roots, lead) in poly()) {
        let r2 = roots.clone();
        let g = move |b: f64| lead * r2.iter().map(|r| b - r).product::<f64>();
        let oracle = dense_oracle(&g);
        let rep = classify_scalar(&ScalarField::new(g), 10_000, 1e-12).unwrap();
        let got: Vec<_> = rep.equilibria.iter().map(|e| (e.beta, e.kind)).collect();
        prop_assert_eq!(got.len(), oracle.len());
        for ((b, k), (ob, ok)) in got.iter().zip(&oracle) {
            prop_assert_eq!(k, ok);
            prop_assert!((b - ob).abs() <= 1e-5);
            let gb = lead * roots.iter().map(|r| b - r).product::<f64>();
            prop_assert!(gb.abs() <= 1e-9);
        }
    }
}

#[test]
fn lifted_attractor_is_the_limit() {
    let m = ConstantMean([[1.5, 0.4], [0.3, 1.2]]);
    let rep = classify_scalar(&g_beta_field(m, vec![]), 10_000, 1e-12).unwrap();
    let rep = lift_limits(&rep, |b| h_of_beta(&m, b));
    let att: Vec<_> = rep
        .lifted
        .iter()
        .filter(|l| l.kind == LiftKind::Attractor)
        .collect();
    assert_eq!(att.len(), 1);
    let target = att[0].h;
    assert!(autonomous_rhs(&target, &m).iter().all(|v| v.abs() < 1e-10));
    for y0 in [
        [1.0, 0.1, 1.0, 0.1],
        [2.0, 1.9, 3.0, 2.0],
        [0.5, 0.25, 4.0, 1.0],
    ] {
        let rhs = |y: &[f64], _: f64| autonomous_rhs(&[y[0], y[1], y[2], y[3]], &m).to_vec();
        let sol = picard_solve_windowed(rhs, &y0, 20.0, 30, 10_000, 1.0).unwrap();
        let err = sol
            .last()
            .iter()
            .zip(&target)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-3, "{y0:?}: {err}");
    }
}

#[test]
fn scalar_flow_rises_monotonically_to_attractor() {
    let g = |b: f64| b * (1.0 - b) * (0.5 - b);
    let sol = picard_solve_windowed(|y, _| vec![g(y[0])], &[0.05], 60.0, 30, 30_000, 1.0).unwrap();
    let ys: Vec<f64> = sol.values.iter().map(|v| v[0]).collect();
    assert!(ys
        .windows(2)
        .all(|w| w[1] >= w[0] - 1e-12 || (w[0] - 0.5).abs() < 1e-9));
    assert!((ys.last().unwrap() - 0.5).abs() < 1e-3);
}

fn example_gap(n_start: u64, reps: u64) -> f64 {
    let model = LinearSaturating::example();
    let horizon = 3.0;
    let mut total = 0.0;
    let mut count = 0;
    for r in 0..reps {
        let mut rng = replication_rng(77, r);
        let events = eta(harmonic(n_start) + horizon) + 2;
        let cfg = SimConfig {
            max_events: events,
            thin: 1,
        };
        let mut s = PoissonOffspring { model };
        let t = simulate(
            &mut s,
            &UniformDeath { rate: 1.0 },
            PopulationState::new(2, 0),
            cfg,
            &mut rng,
        )
        .unwrap();
        if t.extinct {
            continue;
        }
        let seq = ratio_sequence(&t, None);
        let y0 = seq
            .iter()
            .find(|(k, _)| *k == n_start)
            .unwrap()
            .1
            .as_array();
        let rhs = |y: &[f64], _: f64| autonomous_rhs(&[y[0], y[1], y[2], y[3]], &model).to_vec();
        let ode = picard_solve_windowed(rhs, &y0, horizon, 30, 3000, 1.0).unwrap();
        total += finite_time_gap(&seq, &ode, n_start, horizon).unwrap();
        count += 1;
    }
    total / count as f64
}

#[test]
fn example_gap_shrinks_with_later_start() {
    let gaps: Vec<f64> = [5, 50, 500].iter().map(|&n| example_gap(n, 40)).collect();
    assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "{gaps:?}");
}
