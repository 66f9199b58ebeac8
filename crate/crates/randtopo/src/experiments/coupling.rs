//! Local picture of the manifold model around a base point, rescaled by
//! `(n / Vol(M))^{1/d}`, against the Poisson model in `B(0, R)`.
//!
//! Instead of an explicit coupling, the distributions over trials of the
//! vector of contained per-signature counts are compared in total variation.

use std::collections::BTreeMap;

use randtopo_core::geometry::ball_volume;
use randtopo_core::homology::Signature;
use randtopo_core::sampling::{rescale_chart, sample_uniform_manifold};
use randtopo_core::{Point, Space, TrialSeed};
use serde::Serialize;

use super::limit::window_trial;
use super::pipeline::{classify, contained_in_window, Instance};
use super::{check_alpha, check_increasing_counts, check_positive, check_trials, tags, Manifold};
use crate::error::config;
use crate::report::signature_labels;
use crate::stats::Estimate;
use crate::{run_trials, Result};

#[derive(Clone, Debug, Serialize)]
pub struct CouplingParams {
    pub space: Manifold,
    pub alpha: f64,
    #[serde(rename = "R")]
    pub radius: f64,
    #[serde(rename = "n")]
    pub ns: Vec<usize>,
    pub trials: u64,
    pub seed: u64,
    /// Signatures kept in the count vectors; all when empty.
    #[serde(serialize_with = "signature_labels")]
    pub signatures: Vec<Signature>,
}

impl CouplingParams {
    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        check_positive("R", self.radius)?;
        check_increasing_counts("n", &self.ns)?;
        check_trials(self.trials)?;
        let n = self.ns[0];
        let s = scale(self.space, n);
        let chart = (self.radius + 2.0 * self.alpha) / s;
        let limit = chart_limit(self.space);
        if chart >= limit {
            return Err(config(format!(
                "n = {n}: the rescaled window R + 2 alpha covers geodesic radius {chart} on the {}, \
                 which must stay below {limit}; increase n or lower R",
                self.space
            )));
        }
        if self.alpha / s > self.space.max_radius() {
            return Err(config(format!(
                "n = {n} gives ball radius {} on the {}, above its limit {}; increase n",
                self.alpha / s,
                self.space,
                self.space.max_radius()
            )));
        }
        Ok(())
    }
}

/// Rescaling factor making the rescaled sample unit-intensity.
fn scale(m: Manifold, n: usize) -> f64 {
    let space = m.space();
    (n as f64 / space.volume().expect("compact")).powf(1.0 / space.dim() as f64)
}

/// Geodesic radius below which the chart is injective.
fn chart_limit(m: Manifold) -> f64 {
    match m {
        Manifold::Torus => 0.5,
        Manifold::Sphere => std::f64::consts::FRAC_PI_2,
    }
}

fn base_point(m: Manifold) -> Point {
    match m {
        Manifold::Torus => Point::from([0.5, 0.5]),
        Manifold::Sphere => Point::from([0.0, 0.0, 1.0]),
    }
}

/// Canonical key of a count vector, e.g. `pt:3;w1:1`; empty when no
/// component is contained.
fn vector_key(counts: &BTreeMap<Signature, u64>) -> String {
    counts
        .iter()
        .filter(|(_, &c)| c > 0)
        .map(|(s, c)| format!("{s}:{c}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn histogram<'a>(
    vectors: impl Iterator<Item = &'a BTreeMap<Signature, u64>>,
) -> BTreeMap<String, u64> {
    let mut h = BTreeMap::new();
    for v in vectors {
        *h.entry(vector_key(v)).or_insert(0) += 1;
    }
    h
}

fn histogram_tv(a: &BTreeMap<String, u64>, b: &BTreeMap<String, u64>) -> f64 {
    let ta: u64 = a.values().sum();
    let tb: u64 = b.values().sum();
    let mut l1 = 0.0;
    for k in a.keys().chain(b.keys().filter(|k| !a.contains_key(*k))) {
        let pa = a.get(k).copied().unwrap_or(0) as f64 / ta as f64;
        let pb = b.get(k).copied().unwrap_or(0) as f64 / tb as f64;
        l1 += (pa - pb).abs();
    }
    0.5 * l1
}

fn restrict(mut counts: BTreeMap<Signature, u64>, keep: &[Signature]) -> BTreeMap<Signature, u64> {
    if !keep.is_empty() {
        counts.retain(|s, _| keep.contains(s));
    }
    counts
}

struct LocalTrial {
    counts: BTreeMap<Signature, u64>,
    points_in_r: u64,
}

fn local_trial(params: &CouplingParams, n: usize, seed: &TrialSeed) -> Result<LocalTrial> {
    let m = params.space;
    let space = m.space();
    let s = scale(m, n);
    let alpha = params.alpha;
    let window = params.radius + 2.0 * alpha;
    let base = base_point(m);
    let points = sample_uniform_manifold(&space, n, seed)?;
    let mut local = Vec::new();
    let mut points_in_r = 0;
    for q in &points {
        let dist = space.distance(&base, q)? * s;
        if dist <= window {
            local.push(rescale_chart(&space, &base, s, q, window * (1.0 + 1e-9))?);
            if dist <= params.radius {
                points_in_r += 1;
            }
        }
    }
    let plane = Space::euclidean(2)?;
    let inst = Instance::build(&plane, &local, alpha)?;
    let mut counts = BTreeMap::new();
    for comp in &inst.components {
        if contained_in_window(&plane, comp, &local, params.radius, alpha) {
            let (sig, _) = classify(&plane, &inst, comp, &local, alpha)?;
            *counts.entry(sig).or_insert(0) += 1;
        }
    }
    Ok(LocalTrial {
        counts: restrict(counts, &params.signatures),
        points_in_r,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CountMean {
    pub signature: String,
    pub manifold: Estimate,
    pub reference: Estimate,
}

#[derive(Clone, Debug, Serialize)]
pub struct CouplingRow {
    pub n: usize,
    pub scale: f64,
    pub points_in_r: Estimate,
    pub expected_points: f64,
    pub distinct_vectors: usize,
    /// TV distance between the count-vector distributions.
    pub tv: f64,
    pub mean_counts: Vec<CountMean>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CouplingReport {
    pub reference_distinct_vectors: usize,
    pub rows: Vec<CouplingRow>,
    pub tv_decreasing: bool,
}

pub fn coupling_check(params: &CouplingParams, threads: usize) -> Result<CouplingReport> {
    params.validate()?;
    let reference: Vec<BTreeMap<Signature, u64>> = run_trials(threads, 0..params.trials, |t| {
        let seed = TrialSeed::new(params.seed, t).derive(tags::COUPLING_REFERENCE);
        window_trial(2, params.alpha, params.radius, &seed)
            .map(|c| restrict(c.by_signature, &params.signatures))
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let reference_hist = histogram(reference.iter());

    let mut rows = Vec::with_capacity(params.ns.len());
    for (ni, &n) in params.ns.iter().enumerate() {
        let trials = run_trials(threads, 0..params.trials, |t| {
            let seed = TrialSeed::new(params.seed, t).derive(tags::COUPLING + ni as u64);
            local_trial(params, n, &seed)
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        let hist = histogram(trials.iter().map(|t| &t.counts));

        let mut sigs: Vec<Signature> = trials
            .iter()
            .flat_map(|t| t.counts.keys())
            .chain(reference.iter().flat_map(|c| c.keys()))
            .copied()
            .collect();
        sigs.sort();
        sigs.dedup();
        let mean_of = |vs: &mut dyn Iterator<Item = &BTreeMap<Signature, u64>>, s: &Signature| {
            Estimate::from_samples(vs.map(|c| c.get(s).copied().unwrap_or(0) as f64))
        };
        let mean_counts = sigs
            .iter()
            .map(|s| CountMean {
                signature: s.to_string(),
                manifold: mean_of(&mut trials.iter().map(|t| &t.counts), s),
                reference: mean_of(&mut reference.iter(), s),
            })
            .collect();

        rows.push(CouplingRow {
            n,
            scale: scale(params.space, n),
            points_in_r: Estimate::from_samples(trials.iter().map(|t| t.points_in_r as f64)),
            expected_points: ball_volume(2, params.radius),
            distinct_vectors: hist.len(),
            tv: histogram_tv(&hist, &reference_hist),
            mean_counts,
        });
    }
    let tv_decreasing = rows.windows(2).all(|w| w[1].tv < w[0].tv);
    Ok(CouplingReport {
        reference_distinct_vectors: reference_hist.len(),
        rows,
        tv_decreasing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_keys_are_canonical() {
        let mut c = BTreeMap::new();
        assert_eq!(vector_key(&c), "");
        c.insert(Signature::Wedge(1), 1);
        c.insert(Signature::Wedge(0), 3);
        c.insert(Signature::Wedge(2), 0);
        assert_eq!(vector_key(&c), "w0:3;w1:1");
    }

    #[test]
    fn histogram_tv_extremes() {
        let a = BTreeMap::from([("x".to_string(), 2)]);
        let b = BTreeMap::from([("y".to_string(), 5)]);
        assert_eq!(histogram_tv(&a, &a), 0.0);
        assert_eq!(histogram_tv(&a, &b), 1.0);
    }

    #[test]
    fn local_point_count_matches_ball_volume() {
        for space in [Manifold::Torus, Manifold::Sphere] {
            let p = CouplingParams {
                space,
                alpha: 0.5,
                radius: 3.0,
                ns: vec![20_000],
                trials: 60,
                seed: 4,
                signatures: vec![],
            };
            let rep = coupling_check(&p, 0).unwrap();
            let row = &rep.rows[0];
            assert!(
                row.points_in_r.covers(row.expected_points, 4.0),
                "{space}: {:?} vs {}",
                row.points_in_r,
                row.expected_points
            );
        }
    }

    #[test]
    fn tiny_window_only_sees_points() {
        let p = CouplingParams {
            space: Manifold::Torus,
            alpha: 0.5,
            radius: 0.8,
            ns: vec![5000],
            trials: 30,
            seed: 4,
            signatures: vec![],
        };
        let rep = coupling_check(&p, 0).unwrap();
        for m in &rep.rows[0].mean_counts {
            assert_eq!(m.signature, "w0");
        }
    }

    #[test]
    fn rejects_window_beyond_chart() {
        let p = CouplingParams {
            space: Manifold::Torus,
            alpha: 0.5,
            radius: 20.0,
            ns: vec![100],
            trials: 1,
            seed: 0,
            signatures: vec![],
        };
        assert!(coupling_check(&p, 1).is_err());
    }
}
