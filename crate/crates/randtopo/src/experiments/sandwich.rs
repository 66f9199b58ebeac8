//! Per-instance check of the integral-geometry sandwich
//!
//! ```text
//! ∫_{B_{R-r}} N(P, B(x,r); γ) / Vol(B_r) dx  <=  N(P, B_R; γ)  <=  ∫_{B_{R+r}} N*(P, B(x,r); γ) / Vol(B_r) dx
//! ```
//!
//! Both integrals are estimated by uniform sampling of `x`; the middle count
//! is exact. A component lies in the open `B(x, r)` iff `x` is within
//! `r - alpha` of every center, and meets the closed `B(x, r)` iff `x` is
//! within `r + alpha` of some center, so each integrand is a sum of
//! indicators over nearby components.

use std::collections::{BTreeSet, HashMap};

use rand::Rng;
use randtopo_core::geometry::{ball_volume, REL_TOL};
use randtopo_core::homology::Signature;
use randtopo_core::sampling::{sample_poisson_with, uniform_in_ball};
use randtopo_core::{Point, Space, TrialSeed};
use serde::Serialize;

use super::pipeline::{classify, contained_in_window, Instance};
use super::{check_alpha, check_dim, check_positive, check_trials, tags};
use crate::error::config;
use crate::report::signature_labels;
use crate::stats::Estimate;
use crate::{run_trials, Result};

/// Band width, in standard errors, for the Monte Carlo integrals.
pub const SE_BAND: f64 = 3.0;

#[derive(Clone, Debug, Serialize)]
pub struct IgsParams {
    pub d: usize,
    pub alpha: f64,
    #[serde(rename = "R")]
    pub radius: f64,
    pub r: f64,
    pub trials: u64,
    pub x_samples: u64,
    pub seed: u64,
    /// Restrict the typed sandwiches to these signatures; all observed
    /// signatures when empty.
    #[serde(serialize_with = "signature_labels")]
    pub signatures: Vec<Signature>,
}

impl IgsParams {
    pub fn validate(&self) -> Result<()> {
        check_dim(self.d)?;
        check_alpha(self.alpha)?;
        check_positive("R", self.radius)?;
        check_positive("r", self.r)?;
        check_trials(self.trials)?;
        validate_radii(self.alpha, self.radius, self.r)?;
        if self.x_samples < 2 {
            return Err(config("x_samples must be at least 2"));
        }
        Ok(())
    }
}

fn validate_radii(alpha: f64, radius: f64, r: f64) -> Result<()> {
    if r >= radius {
        return Err(config(format!("r must be < R (got r = {r}, R = {radius})")));
    }
    if alpha >= r {
        return Err(config(format!(
            "alpha must be < r (got alpha = {alpha}, r = {r})"
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct SandwichEntry {
    /// Signature label, or "all" for the untyped sandwich.
    pub signature: String,
    pub lower: Estimate,
    pub middle: u64,
    pub upper: Estimate,
    pub pass: bool,
}

impl SandwichEntry {
    fn new(signature: String, lower: Estimate, middle: u64, upper: Estimate) -> Self {
        let m = middle as f64;
        let pass = lower.mean - SE_BAND * lower.se <= m && m <= upper.mean + SE_BAND * upper.se;
        Self {
            signature,
            lower,
            middle,
            upper,
            pass,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SandwichReport {
    pub trial: u64,
    pub points: u64,
    pub entries: Vec<SandwichEntry>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IgsReport {
    pub instances: Vec<SandwichReport>,
    pub failures: u64,
    pub all_pass: bool,
}

/// Points bucketed in cubes of side `cell`; queries of radius at most `cell`
/// only need the 3^d surrounding cubes.
struct PointGrid {
    cell: f64,
    dim: usize,
    buckets: HashMap<[i64; 3], Vec<u32>>,
}

impl PointGrid {
    fn new(points: &[Point], dim: usize, cell: f64) -> Self {
        let mut buckets: HashMap<[i64; 3], Vec<u32>> = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            buckets
                .entry(Self::key(p.coords(), dim, cell))
                .or_default()
                .push(i as u32);
        }
        Self { cell, dim, buckets }
    }

    fn key(c: &[f64], dim: usize, cell: f64) -> [i64; 3] {
        let mut k = [0i64; 3];
        for i in 0..dim {
            k[i] = (c[i] / cell).floor() as i64;
        }
        k
    }

    fn visit(&self, x: &[f64], mut f: impl FnMut(u32)) {
        let base = Self::key(x, self.dim, self.cell);
        let span = |k: usize| if k < self.dim { -1..=1 } else { 0..=0 };
        for dx in span(0) {
            for dy in span(1) {
                for dz in span(2) {
                    let key = [base[0] + dx, base[1] + dy, base[2] + dz];
                    if let Some(b) = self.buckets.get(&key) {
                        b.iter().copied().for_each(&mut f);
                    }
                }
            }
        }
    }
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Running sums of one integrand per type, plus the untyped one.
struct Accumulator {
    sums: Vec<(f64, f64)>,
    untyped: (f64, f64),
    per_sample: Vec<u64>,
}

impl Accumulator {
    fn new(types: usize) -> Self {
        Self {
            sums: vec![(0.0, 0.0); types],
            untyped: (0.0, 0.0),
            per_sample: vec![0; types],
        }
    }

    fn flush(&mut self, untyped: u64) {
        for (s, c) in self.sums.iter_mut().zip(self.per_sample.iter_mut()) {
            let x = *c as f64;
            s.0 += x;
            s.1 += x * x;
            *c = 0;
        }
        let x = untyped as f64;
        self.untyped.0 += x;
        self.untyped.1 += x * x;
    }

    fn estimates(&self, n: u64, factor: f64) -> (Vec<Estimate>, Estimate) {
        let typed = self
            .sums
            .iter()
            .map(|&(s, s2)| Estimate::from_sums(n, s, s2).scaled(factor))
            .collect();
        let untyped = Estimate::from_sums(n, self.untyped.0, self.untyped.1).scaled(factor);
        (typed, untyped)
    }
}

/// Sandwich check for one fixed finite configuration.
#[allow(clippy::too_many_arguments)]
pub fn igs_instance<G: Rng + ?Sized>(
    points: &[Point],
    d: usize,
    alpha: f64,
    radius: f64,
    r: f64,
    x_samples: u64,
    filter: &[Signature],
    rng: &mut G,
) -> Result<SandwichReport> {
    validate_radii(alpha, radius, r)?;
    let space = Space::euclidean(d)?;
    let inst = Instance::build(&space, points, alpha)?;
    let ncomp = inst.components.len();

    let mut comp_of = vec![0u32; points.len()];
    let mut sigs = Vec::with_capacity(ncomp);
    for (ci, comp) in inst.components.iter().enumerate() {
        for &i in comp.indices() {
            comp_of[i as usize] = ci as u32;
        }
        sigs.push(classify(&space, &inst, comp, points, alpha)?.0);
    }
    let types: Vec<Signature> = if filter.is_empty() {
        sigs.iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    } else {
        filter.to_vec()
    };
    let type_of: Vec<Option<usize>> = sigs
        .iter()
        .map(|s| types.iter().position(|t| t == s))
        .collect();

    let mut middle = vec![0u64; types.len()];
    let mut middle_total = 0u64;
    for (ci, comp) in inst.components.iter().enumerate() {
        if contained_in_window(&space, comp, points, radius, alpha) {
            middle_total += 1;
            if let Some(t) = type_of[ci] {
                middle[t] += 1;
            }
        }
    }

    let grid = PointGrid::new(points, d, r + alpha);
    let mut stamp = vec![u64::MAX; ncomp];

    // lower integrand: components inside the open B(x, r)
    let inner = r - alpha;
    let inner2 = inner * inner;
    let mut lower = Accumulator::new(types.len());
    for s in 0..x_samples {
        let x = uniform_in_ball(rng, d, radius - r);
        let xc = x.coords();
        let mut untyped = 0;
        grid.visit(xc, |i| {
            let c = comp_of[i as usize] as usize;
            if stamp[c] == s || dist2(xc, points[i as usize].coords()) >= inner2 {
                return;
            }
            stamp[c] = s;
            let inside = inst.components[c]
                .indices()
                .iter()
                .all(|&j| dist2(xc, points[j as usize].coords()) < inner2);
            if inside {
                untyped += 1;
                if let Some(t) = type_of[c] {
                    lower.per_sample[t] += 1;
                }
            }
        });
        lower.flush(untyped);
    }

    // upper integrand: components meeting the closed B(x, r)
    stamp.fill(u64::MAX);
    let outer = r + alpha;
    let outer2 = outer * outer * (1.0 + REL_TOL);
    let mut upper = Accumulator::new(types.len());
    for s in 0..x_samples {
        let x = uniform_in_ball(rng, d, radius + r);
        let xc = x.coords();
        let mut untyped = 0;
        grid.visit(xc, |i| {
            let c = comp_of[i as usize] as usize;
            if stamp[c] == s || dist2(xc, points[i as usize].coords()) > outer2 {
                return;
            }
            stamp[c] = s;
            untyped += 1;
            if let Some(t) = type_of[c] {
                upper.per_sample[t] += 1;
            }
        });
        upper.flush(untyped);
    }

    let vol_r = ball_volume(d, r);
    let (lower_typed, lower_all) = lower.estimates(x_samples, ball_volume(d, radius - r) / vol_r);
    let (upper_typed, upper_all) = upper.estimates(x_samples, ball_volume(d, radius + r) / vol_r);

    let mut entries = vec![SandwichEntry::new(
        "all".to_string(),
        lower_all,
        middle_total,
        upper_all,
    )];
    for (t, sig) in types.iter().enumerate() {
        entries.push(SandwichEntry::new(
            sig.to_string(),
            lower_typed[t],
            middle[t],
            upper_typed[t],
        ));
    }
    let pass = entries.iter().all(|e| e.pass);
    Ok(SandwichReport {
        trial: 0,
        points: points.len() as u64,
        entries,
        pass,
    })
}

pub fn igs_check(params: &IgsParams, threads: usize) -> Result<IgsReport> {
    params.validate()?;
    let instances = run_trials(threads, 0..params.trials, |t| {
        let seed = TrialSeed::new(params.seed, t).derive(tags::IGS);
        let mut rng = seed.rng();
        let points = sample_poisson_with(&mut rng, params.d, params.radius + 2.0 * params.alpha)?;
        let mut report = igs_instance(
            &points,
            params.d,
            params.alpha,
            params.radius,
            params.r,
            params.x_samples,
            &params.signatures,
            &mut rng,
        )?;
        report.trial = t;
        Ok(report)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let failures = instances.iter().filter(|i| !i.pass).count() as u64;
    Ok(IgsReport {
        instances,
        failures,
        all_pass: failures == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rng() -> randtopo_core::TrialRng {
        TrialSeed::new(1, 0).rng()
    }

    #[test]
    fn single_point_lower_integral_is_area_ratio() {
        let pts = [Point::from([0.0, 0.0])];
        let rep = igs_instance(&pts, 2, 1.0, 10.0, 3.0, 20_000, &[], &mut rng()).unwrap();
        let all = &rep.entries[0];
        assert_eq!(all.middle, 1);
        // containment region B(0, r - alpha) = B(0, 2); factor Vol(B_7)/Vol(B_3)
        assert!(all.lower.covers(4.0 / 9.0, 4.0), "{:?}", all.lower);
        // intersection region B(0, r + alpha) = B(0, 4)
        assert!(all.upper.covers(16.0 / 9.0, 4.0), "{:?}", all.upper);
        assert!(rep.pass);
    }

    #[test]
    fn empty_instance_passes_trivially() {
        let rep = igs_instance(&[], 2, 1.0, 10.0, 3.0, 100, &[], &mut rng()).unwrap();
        assert_eq!(rep.entries.len(), 1);
        let e = &rep.entries[0];
        assert_eq!((e.lower.mean, e.middle, e.upper.mean), (0.0, 0, 0.0));
        assert!(rep.pass);
    }

    #[test]
    fn rejects_probe_radius_at_least_window() {
        let err = igs_instance(&[], 2, 1.0, 3.0, 5.0, 100, &[], &mut rng()).unwrap_err();
        assert!(err.to_string().contains("r must be < R"));
    }

    #[test]
    fn random_instances_pass() {
        let p = IgsParams {
            d: 2,
            alpha: 0.5,
            radius: 8.0,
            r: 2.0,
            trials: 6,
            x_samples: 4000,
            seed: 5,
            signatures: vec![],
        };
        let rep = igs_check(&p, 0).unwrap();
        assert!(
            rep.all_pass,
            "{:#?}",
            rep.instances.iter().find(|i| !i.pass)
        );
        for inst in &rep.instances {
            let typed: u64 = inst.entries[1..].iter().map(|e| e.middle).sum();
            assert_eq!(typed, inst.entries[0].middle);
        }
    }
}
