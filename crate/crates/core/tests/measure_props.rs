use proptest::prelude::*;
use randtopo_core::measure::{component_contained, component_intersects, count_components};
use randtopo_core::{
    build_components, tv_distance, Ball, EmpiricalMeasure, Point, Signature, Space,
};

fn point2() -> impl Strategy<Value = Point> {
    (-6.0..6.0f64, -6.0..6.0f64).prop_map(|(x, y)| Point::from([x, y]))
}

fn signature() -> impl Strategy<Value = Signature> {
    prop_oneof![
        (0u32..4).prop_map(Signature::Wedge),
        Just(Signature::Point),
        Just(Signature::Oversize),
    ]
}

fn measure() -> impl Strategy<Value = EmpiricalMeasure> {
    prop::collection::vec(signature(), 1..30)
        .prop_map(|s| EmpiricalMeasure::from_signatures(s).unwrap())
}

proptest! {
    #[test]
    fn contained_counts_never_exceed_intersecting(pts in prop::collection::vec(point2(), 0..40), r in 0.5..6.0f64, alpha in 0.1..1.5f64) {
        let s = Space::euclidean(2).unwrap();
        let comps = build_components(&s, &pts, alpha).unwrap();
        let sigs: Vec<Signature> = comps.iter().map(|c| Signature::Wedge((c.len() % 3) as u32)).collect();
        let ball = Ball::new(Point::from([0.0, 0.0]), r).unwrap();
        for c in &comps {
            if component_contained(&s, c, &pts, &ball, alpha) {
                prop_assert!(component_intersects(&s, c, &pts, &ball, alpha));
            }
        }
        let report = count_components(&s, &comps, &sigs, &pts, &ball, alpha);
        prop_assert!(report.n_total <= report.n_star_total);
        for (sig, n) in &report.n {
            prop_assert!(*n <= report.intersecting(*sig));
        }
    }

    #[test]
    fn masses_sum_to_one(m in measure()) {
        let total: u64 = m.counts().values().sum();
        prop_assert_eq!(total, m.total());
        let mass: f64 = m.support().map(|s| m.mass(s)).sum();
        prop_assert!((mass - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tv_is_a_metric(a in measure(), b in measure(), c in measure()) {
        let ab = tv_distance(&a, &b);
        prop_assert_eq!(ab, tv_distance(&b, &a));
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert_eq!(tv_distance(&a, &a), 0.0);
        prop_assert!(tv_distance(&a, &c) <= ab + tv_distance(&b, &c) + 1e-12);
    }
}
