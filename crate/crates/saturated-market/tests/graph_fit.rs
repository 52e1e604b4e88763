use bp_core::replication_rng;
use rand::Rng;
use saturated_market::*;

#[test]
fn noisy_two_slope_recovered() {
    let truth = TefParams {
        m_bar: 12.0,
        kappa1: 4e-4,
        kappa2: 1e-4,
        a_break: 20_000.0,
        rho: 1.0,
    };
    let mut rng = replication_rng(1, 0);
    let pts: Vec<_> = (0..80)
        .map(|k| {
            let a = 250.0 + 500.0 * k as f64;
            (a, truth.m_network(a) + rng.random_range(-0.05..0.05), 1.0)
        })
        .collect();
    let grid: Vec<f64> = (1..80).map(|k| 500.0 * k as f64).collect();
    let f = fit_two_slope(&pts, &grid);
    assert!(!f.degenerate);
    for (got, want) in [
        (f.m_bar, 12.0),
        (f.kappa1, 4e-4),
        (f.kappa2, 1e-4),
        (f.a_break, 20_000.0),
    ] {
        assert!((got / want - 1.0).abs() < 0.05, "{got} vs {want}");
    }
}

/// Random graph with a few hubs so that forwards fall as the post spreads.
fn synthetic_graph(n: u64, seed: u64) -> Graph {
    let mut rng = replication_rng(seed, 0);
    let mut edges = Vec::new();
    for u in 0..n {
        for _ in 0..6 {
            edges.push((u, rng.random_range(0..n)));
        }
        if u % 50 == 0 {
            for _ in 0..60 {
                edges.push((u, rng.random_range(0..n)));
            }
        }
    }
    Graph::from_edges(edges)
}

#[test]
fn estimated_tef_decreases() {
    let g = synthetic_graph(4000, 2);
    let cfg = EstimateConfig {
        rho: 1.0,
        bin_width: 200,
        runs: 20,
        viral_min: 1000,
    };
    let est = estimate_tef(&g, &cfg, 9).unwrap();
    assert!(est.viral_runs > 0);
    let first = est.bins.first().unwrap().mean;
    let last = est.bins.last().unwrap().mean;
    assert!(first > 2.0 * last, "{first} {last}");
    assert!(est.fit.m_bar > 0.0 && est.fit.kappa1 > 0.0);
}

#[test]
fn graph_runs_are_saturated() {
    let g = synthetic_graph(2000, 3);
    let mut rng = replication_rng(4, 0);
    let ev = propagate_on_graph(&g, &[0], 0.5, &mut rng).unwrap();
    let last = ev.last().unwrap();
    assert_eq!(last.c, 0);
    assert_eq!(last.a, ev.len() as u64);
    assert!(last.a <= g.node_count() as u64);
    for e in &ev {
        assert_eq!(e.a - e.c, e.epoch);
    }
}

/// Comparison against the SNAP Twitter graph, when `TCBP_SNAP_GRAPH` points to it.
#[test]
fn snap_graph_when_available() {
    let Ok(path) = std::env::var("TCBP_SNAP_GRAPH") else {
        eprintln!("SKIP: TCBP_SNAP_GRAPH not set");
        return;
    };
    let f = std::io::BufReader::new(std::fs::File::open(path).unwrap());
    let g = Graph::parse(f).unwrap();
    assert_eq!(g.node_count(), 81_306);
    assert!((g.mean_degree() - 29.77).abs() < 0.5, "{}", g.mean_degree());
}
