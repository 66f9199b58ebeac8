mod support;

use rand::Rng;
use randtopo_core::complex::{build_cech, NeighborGraph};
use randtopo_core::sampling::{sample_poisson, sample_uniform_manifold};
use randtopo_core::{Point, Space, TrialSeed};
use support::oracle::{brute_force_graph, clique_complex};

fn assert_graph_matches(space: &Space, pts: &[Point], alpha: f64) {
    let g = NeighborGraph::build(space, pts, alpha).unwrap();
    let brute = brute_force_graph(space, pts, alpha);
    for (i, want) in brute.iter().enumerate() {
        assert_eq!(g.neighbors(i), &want[..], "vertex {i}");
    }
}

#[test]
fn grid_graph_equals_brute_force_euclidean() {
    for d in 1..=3 {
        for trial in 0..10 {
            let mut rng = TrialSeed::new(d as u64, trial).rng();
            let pts: Vec<Point> = (0..500)
                .map(|_| {
                    Point::new(
                        &(0..d)
                            .map(|_| rng.random_range(-6.0..6.0))
                            .collect::<Vec<_>>(),
                    )
                    .unwrap()
                })
                .collect();
            let alpha = rng.random_range(0.05..0.8);
            assert_graph_matches(&Space::euclidean(d).unwrap(), &pts, alpha);
        }
    }
}

#[test]
fn grid_graph_equals_brute_force_on_manifolds() {
    for trial in 0..10 {
        let seed = TrialSeed::new(77, trial);
        for torus in [
            Space::flat_torus(2, 1.0).unwrap(),
            Space::flat_torus(3, 1.0).unwrap(),
        ] {
            let pts = sample_uniform_manifold(&torus, 500, &seed).unwrap();
            assert_graph_matches(&torus, &pts, 0.03 + 0.01 * trial as f64);
        }
        let sphere = Space::sphere2();
        let pts = sample_uniform_manifold(&sphere, 500, &seed).unwrap();
        assert_graph_matches(&sphere, &pts, 0.02 + 0.02 * trial as f64);
    }
}

#[test]
fn grid_graph_small_torus_falls_back() {
    let torus = Space::flat_torus(2, 1.0).unwrap();
    let pts = sample_uniform_manifold(&torus, 200, &TrialSeed::new(1, 1)).unwrap();
    assert_graph_matches(&torus, &pts, 0.2);
}

fn check_components(space: &Space, pts: &[Point], alpha: f64, k_max: usize) {
    let g = NeighborGraph::build(space, pts, alpha).unwrap();
    let comps = g.components();
    let mut seen = vec![false; pts.len()];
    for c in &comps {
        for &i in c.indices() {
            assert!(!seen[i as usize], "components overlap");
            seen[i as usize] = true;
        }
        let cx = build_cech(space, &g, c, pts, alpha, k_max).unwrap();
        assert!(cx.is_downward_closed());
        for k in 1..=k_max {
            for s in cx.simplices(k) {
                for (a, &u) in s.iter().enumerate() {
                    for &v in &s[a + 1..] {
                        assert!(g.contains_edge(u as usize, v as usize));
                    }
                }
            }
        }
    }
    assert!(seen.iter().all(|&s| s), "components cover the point set");
}

#[test]
fn cech_is_closed_flag_subcomplex() {
    for d in 1..=3 {
        for t in 0..5 {
            let pts = sample_poisson(d, 6.0, &TrialSeed::new(9, t)).unwrap();
            check_components(&Space::euclidean(d).unwrap(), &pts, 0.5, d + 1);
        }
    }
}

#[test]
fn cech_equals_rips_on_the_line() {
    let space = Space::euclidean(1).unwrap();
    for t in 0..20 {
        let pts = sample_poisson(1, 20.0, &TrialSeed::new(4, t)).unwrap();
        let alpha = 0.8;
        let g = NeighborGraph::build(&space, &pts, alpha).unwrap();
        let adj = brute_force_graph(&space, &pts, alpha);
        for c in g.components() {
            let k_max = 3;
            let cx = build_cech(&space, &g, &c, &pts, alpha, k_max).unwrap();
            let rips = clique_complex(&adj, c.indices(), k_max);
            for (k, level) in rips.iter().enumerate() {
                let got: Vec<Vec<u32>> = cx.simplices(k).map(|s| s.to_vec()).collect();
                let mut want = level.clone();
                want.sort();
                assert_eq!(got, want, "dimension {k}");
            }
        }
    }
}

#[test]
fn sphere_components_build() {
    let sphere = Space::sphere2();
    let pts = sample_uniform_manifold(&sphere, 2000, &TrialSeed::new(3, 0)).unwrap();
    check_components(
        &sphere,
        &pts,
        0.5 * (4.0 * std::f64::consts::PI / 2000.0).sqrt(),
        3,
    );
}
