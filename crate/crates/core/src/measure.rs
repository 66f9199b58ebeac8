//! Component counting functions and empirical homotopy measures.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::complex::Component;
use crate::error::{Error, Result};
use crate::geometry::{Ball, Point, Space, REL_TOL};
use crate::homology::Signature;

/// Whether the union of the component's `alpha`-balls lies in the open ball.
pub fn component_contained(
    space: &Space,
    component: &Component,
    points: &[Point],
    ball: &Ball,
    alpha: f64,
) -> bool {
    let reach = ball.radius - alpha;
    if reach <= 0.0 {
        return false;
    }
    let x = ball.center.raw();
    component
        .indices()
        .iter()
        .all(|&i| space.distance_unchecked(&x, &points[i as usize].raw()) < reach)
}

/// Whether the union of the component's `alpha`-balls meets the closed ball.
pub fn component_intersects(
    space: &Space,
    component: &Component,
    points: &[Point],
    ball: &Ball,
    alpha: f64,
) -> bool {
    let reach = ball.radius + alpha;
    let x = ball.center.raw();
    component.indices().iter().any(|&i| {
        space.distance_unchecked(&x, &points[i as usize].raw()) <= reach * (1.0 + REL_TOL)
    })
}

/// Typed and untyped tallies of contained (`n`) and intersecting (`n_star`)
/// components.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CountReport {
    pub n: BTreeMap<Signature, u64>,
    pub n_star: BTreeMap<Signature, u64>,
    pub n_total: u64,
    pub n_star_total: u64,
}

impl CountReport {
    pub fn contained(&self, sig: Signature) -> u64 {
        self.n.get(&sig).copied().unwrap_or(0)
    }

    pub fn intersecting(&self, sig: Signature) -> u64 {
        self.n_star.get(&sig).copied().unwrap_or(0)
    }
}

pub fn count_components(
    space: &Space,
    components: &[Component],
    signatures: &[Signature],
    points: &[Point],
    ball: &Ball,
    alpha: f64,
) -> CountReport {
    assert_eq!(
        components.len(),
        signatures.len(),
        "one signature per component"
    );
    let mut report = CountReport::default();
    for (comp, &sig) in components.iter().zip(signatures) {
        if component_intersects(space, comp, points, ball, alpha) {
            *report.n_star.entry(sig).or_default() += 1;
            report.n_star_total += 1;
            if component_contained(space, comp, points, ball, alpha) {
                *report.n.entry(sig).or_default() += 1;
                report.n_total += 1;
            }
        }
    }
    report
}

/// Normalized counts of signatures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmpiricalMeasure {
    counts: BTreeMap<Signature, u64>,
    total: u64,
}

impl EmpiricalMeasure {
    pub fn from_signatures<I: IntoIterator<Item = Signature>>(sigs: I) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for s in sigs {
            *counts.entry(s).or_insert(0u64) += 1;
        }
        Self::from_counts(counts)
    }

    /// Zero counts are dropped.
    pub fn from_counts(mut counts: BTreeMap<Signature, u64>) -> Result<Self> {
        counts.retain(|_, c| *c > 0);
        let total = counts.values().sum();
        if total == 0 {
            return Err(Error::EmptyMeasure);
        }
        Ok(Self { counts, total })
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn count(&self, sig: Signature) -> u64 {
        self.counts.get(&sig).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<Signature, u64> {
        &self.counts
    }

    pub fn mass(&self, sig: Signature) -> f64 {
        self.count(sig) as f64 / self.total as f64
    }

    pub fn support(&self) -> impl Iterator<Item = Signature> + '_ {
        self.counts.keys().copied()
    }

    /// Signatures by decreasing mass; ties broken by signature order.
    pub fn ranked(&self) -> Vec<(Signature, u64)> {
        let mut v: Vec<(Signature, u64)> = self.counts.iter().map(|(s, c)| (*s, *c)).collect();
        v.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        v
    }

    /// `tail[m]` is the mass outside the `m` heaviest signatures.
    pub fn tail_masses(&self) -> Vec<f64> {
        let ranked = self.ranked();
        let mut outside = self.total;
        let mut tail = Vec::with_capacity(ranked.len() + 1);
        tail.push(1.0);
        for (_, c) in ranked {
            outside -= c;
            tail.push(outside as f64 / self.total as f64);
        }
        tail
    }

    pub fn merge(&mut self, other: &EmpiricalMeasure) {
        for (s, c) in &other.counts {
            *self.counts.entry(*s).or_insert(0) += c;
        }
        self.total += other.total;
    }
}

/// Total variation distance, as half the L1 distance of the mass functions.
pub fn tv_distance(a: &EmpiricalMeasure, b: &EmpiricalMeasure) -> f64 {
    let mut l1 = 0.0;
    let mut ia = a.counts.iter().peekable();
    let mut ib = b.counts.iter().peekable();
    let (ta, tb) = (a.total as f64, b.total as f64);
    loop {
        match (ia.peek(), ib.peek()) {
            (None, None) => break,
            (Some((_, &ca)), None) => {
                l1 += ca as f64 / ta;
                ia.next();
            }
            (None, Some((_, &cb))) => {
                l1 += cb as f64 / tb;
                ib.next();
            }
            (Some((sa, &ca)), Some((sb, &cb))) => match sa.cmp(sb) {
                core::cmp::Ordering::Less => {
                    l1 += ca as f64 / ta;
                    ia.next();
                }
                core::cmp::Ordering::Greater => {
                    l1 += cb as f64 / tb;
                    ib.next();
                }
                core::cmp::Ordering::Equal => {
                    l1 += libm::fabs(ca as f64 / ta - cb as f64 / tb);
                    ia.next();
                    ib.next();
                }
            },
        }
    }
    (0.5 * l1).min(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pts(xs: &[(f64, f64)]) -> Vec<Point> {
        xs.iter().map(|&(x, y)| Point::from([x, y])).collect()
    }

    fn ball(r: f64) -> Ball {
        Ball::new(Point::from([0.0, 0.0]), r).unwrap()
    }

    #[test]
    fn containment_uses_shrunken_radius() {
        let s = Space::euclidean(2).unwrap();
        let p = pts(&[(1.2, 0.0), (3.9, 0.0), (4.2, 0.0)]);
        let inside = Component::new(vec![0, 1]);
        let straddle = Component::new(vec![0, 2]);
        assert!(component_contained(&s, &inside, &p, &ball(5.0), 1.0));
        assert!(!component_contained(&s, &straddle, &p, &ball(5.0), 1.0));
        assert!(!component_contained(&s, &inside, &p, &ball(1.0), 1.0));
    }

    #[test]
    fn intersection_is_closed() {
        let s = Space::euclidean(2).unwrap();
        let p = pts(&[(6.0, 0.0), (6.5, 0.0)]);
        let c = Component::new(vec![0]);
        assert!(component_intersects(&s, &c, &p, &ball(5.0), 1.0));
        let far = Component::new(vec![1]);
        assert!(!component_intersects(&s, &far, &p, &ball(5.0), 1.0));
    }

    #[test]
    fn counts_split_contained_and_straddling() {
        let s = Space::euclidean(2).unwrap();
        let p = pts(&[(0.0, 0.0), (4.5, 0.0)]);
        let comps = vec![Component::new(vec![0]), Component::new(vec![1])];
        let sigs = vec![Signature::Wedge(0), Signature::Wedge(0)];
        let r = count_components(&s, &comps, &sigs, &p, &ball(5.0), 1.0);
        assert_eq!((r.n_total, r.n_star_total), (1, 2));
        assert_eq!(r.contained(Signature::Wedge(0)), 1);
        assert_eq!(r.intersecting(Signature::Wedge(0)), 2);
        let empty = count_components(&s, &[], &[], &p, &ball(5.0), 1.0);
        assert_eq!(empty, CountReport::default());
    }

    #[test]
    fn figure_one_measure() {
        let m = EmpiricalMeasure::from_signatures([
            Signature::Wedge(1),
            Signature::Wedge(0),
            Signature::Wedge(0),
        ])
        .unwrap();
        assert_eq!(m.count(Signature::Wedge(0)), 2);
        assert_eq!(m.total(), 3);
        assert!((m.mass(Signature::Wedge(1)) - 1.0 / 3.0).abs() < 1e-15);
        let delta = EmpiricalMeasure::from_signatures([Signature::Wedge(0)]).unwrap();
        assert!((tv_distance(&m, &delta) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn tv_extremes() {
        let a = EmpiricalMeasure::from_signatures([Signature::Point]).unwrap();
        let b = EmpiricalMeasure::from_signatures([Signature::Wedge(2)]).unwrap();
        assert_eq!(tv_distance(&a, &a), 0.0);
        assert_eq!(tv_distance(&a, &b), 1.0);
    }

    #[test]
    fn empty_measure_is_an_error() {
        assert_eq!(
            EmpiricalMeasure::from_signatures([]).unwrap_err(),
            Error::EmptyMeasure
        );
    }

    #[test]
    fn tail_masses_decrease_to_zero() {
        let m = EmpiricalMeasure::from_signatures([
            Signature::Wedge(0),
            Signature::Wedge(0),
            Signature::Wedge(1),
            Signature::Wedge(2),
        ])
        .unwrap();
        let t = m.tail_masses();
        assert_eq!(t, vec![1.0, 0.5, 0.25, 0.0]);
    }
}
