//! Windowed estimates of the component densities `c_{R,gamma}`, their
//! ratios, and the convergence track across a radius schedule.

use std::collections::BTreeMap;

use rand::Rng;
use randtopo_core::geometry::ball_volume;
use randtopo_core::homology::Signature;
use randtopo_core::sampling::sample_poisson;
use randtopo_core::{tv_distance, EmpiricalMeasure, Point, Space, TrialSeed};
use serde::Serialize;

use super::pipeline::{classify, contained_in_window, Instance};
use super::{check_alpha, check_dim, check_increasing, check_trials, tags};
use crate::stats::Estimate;
use crate::{run_trials, Result};

#[derive(Clone, Debug, Serialize)]
pub struct MeasureParams {
    pub d: usize,
    pub alpha: f64,
    #[serde(rename = "R")]
    pub radii: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
}

impl MeasureParams {
    pub fn validate(&self) -> Result<()> {
        check_dim(self.d)?;
        check_alpha(self.alpha)?;
        check_trials(self.trials)?;
        check_increasing("R", &self.radii)
    }
}

/// Contained-component tallies of one trial.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TrialCounts {
    pub by_signature: BTreeMap<Signature, u64>,
    pub contained: u64,
    /// Isolated points with center in the open window, contained or not.
    pub singletons: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SignatureEstimate {
    pub signature: String,
    /// Mean contained count per unit volume.
    pub density: Estimate,
    /// Share of all contained components across trials.
    pub ratio: f64,
    pub count: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RadiusEstimate {
    #[serde(rename = "R")]
    pub radius: f64,
    pub volume: f64,
    pub density_all: Estimate,
    /// Isolated points per unit volume, located by their centers. Unlike
    /// the contained `w0` density this has no boundary bias.
    pub singleton_density: Estimate,
    pub signatures: Vec<SignatureEstimate>,
    pub contained_components: u64,
    /// Trials without a single contained component.
    pub empty_trials: u64,
    /// `tail_mass[m]`: mass outside the `m` most frequent signatures.
    pub tail_mass: Vec<f64>,
    #[serde(skip)]
    pub per_trial: Vec<TrialCounts>,
}

impl RadiusEstimate {
    pub fn measure(&self) -> Option<EmpiricalMeasure> {
        pooled_measure(self.per_trial.iter())
    }

    pub fn ratio(&self, sig: Signature) -> f64 {
        let label = sig.to_string();
        self.signatures
            .iter()
            .find(|s| s.signature == label)
            .map_or(0.0, |s| s.ratio)
    }

    pub fn density(&self, sig: Signature) -> Option<Estimate> {
        let label = sig.to_string();
        self.signatures
            .iter()
            .find(|s| s.signature == label)
            .map(|s| s.density)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub rows: Vec<RadiusEstimate>,
    /// TV distance between the pooled measures of consecutive radii.
    pub consecutive_tv: Vec<Option<f64>>,
}

pub fn pooled_measure<'a>(
    trials: impl Iterator<Item = &'a TrialCounts>,
) -> Option<EmpiricalMeasure> {
    let mut counts = BTreeMap::new();
    for t in trials {
        for (s, c) in &t.by_signature {
            *counts.entry(*s).or_insert(0) += c;
        }
    }
    EmpiricalMeasure::from_counts(counts).ok()
}

/// One windowed Poisson trial: points in `B(0, R + 2 alpha)`, components
/// contained in the open `B(0, R)`.
pub fn window_trial(d: usize, alpha: f64, radius: f64, seed: &TrialSeed) -> Result<TrialCounts> {
    let space = Space::euclidean(d)?;
    let points = sample_poisson(d, radius + 2.0 * alpha, seed)?;
    let inst = Instance::build(&space, &points, alpha)?;
    count_window(&space, &inst, &points, radius, alpha)
}

pub(crate) fn count_window(
    space: &Space,
    inst: &Instance,
    points: &[Point],
    radius: f64,
    alpha: f64,
) -> Result<TrialCounts> {
    let mut out = TrialCounts::default();
    for comp in &inst.components {
        if comp.len() == 1 && points[comp.indices()[0] as usize].norm() < radius {
            out.singletons += 1;
        }
        if !contained_in_window(space, comp, points, radius, alpha) {
            continue;
        }
        let (sig, _) = classify(space, inst, comp, points, alpha)?;
        *out.by_signature.entry(sig).or_insert(0) += 1;
        out.contained += 1;
    }
    Ok(out)
}

pub fn summarize_radius(radius: f64, d: usize, per_trial: Vec<TrialCounts>) -> RadiusEstimate {
    let volume = ball_volume(d, radius);
    let density_all = Estimate::from_samples(per_trial.iter().map(|t| t.contained as f64 / volume));
    let singleton_density =
        Estimate::from_samples(per_trial.iter().map(|t| t.singletons as f64 / volume));
    let contained: u64 = per_trial.iter().map(|t| t.contained).sum();
    let measure = pooled_measure(per_trial.iter());
    let signatures =
        measure
            .as_ref()
            .map(|m| {
                m.counts()
                    .iter()
                    .map(|(&sig, &count)| SignatureEstimate {
                        signature: sig.to_string(),
                        density: Estimate::from_samples(per_trial.iter().map(|t| {
                            t.by_signature.get(&sig).copied().unwrap_or(0) as f64 / volume
                        })),
                        ratio: count as f64 / contained as f64,
                        count,
                    })
                    .collect()
            })
            .unwrap_or_default();
    RadiusEstimate {
        radius,
        volume,
        density_all,
        singleton_density,
        signatures,
        contained_components: contained,
        empty_trials: per_trial.iter().filter(|t| t.contained == 0).count() as u64,
        tail_mass: measure.map(|m| m.tail_masses()).unwrap_or_default(),
        per_trial,
    }
}

fn consecutive_tv(rows: &[RadiusEstimate]) -> Vec<Option<f64>> {
    let measures: Vec<Option<EmpiricalMeasure>> = rows.iter().map(|r| r.measure()).collect();
    measures
        .windows(2)
        .map(|w| match (&w[0], &w[1]) {
            (Some(a), Some(b)) => Some(tv_distance(a, b)),
            _ => None,
        })
        .collect()
}

pub fn estimate_limit_measure(params: &MeasureParams, threads: usize) -> Result<ConvergenceReport> {
    params.validate()?;
    let mut rows = Vec::with_capacity(params.radii.len());
    for (ri, &radius) in params.radii.iter().enumerate() {
        let per_trial = run_trials(threads, 0..params.trials, |t| {
            let seed = TrialSeed::new(params.seed, t).derive(tags::MEASURE + ri as u64);
            window_trial(params.d, params.alpha, radius, &seed)
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        rows.push(summarize_radius(radius, params.d, per_trial));
    }
    let consecutive_tv = consecutive_tv(&rows);
    Ok(ConvergenceReport {
        rows,
        consecutive_tv,
    })
}

/// Fraction of bootstrap resamples (trials drawn with replacement,
/// independently per radius) in which the consecutive-radius TV sequence is
/// strictly decreasing.
pub fn bootstrap_tv_decreasing(report: &ConvergenceReport, resamples: usize, seed: u64) -> f64 {
    let mut rng = TrialSeed::new(seed, 0).derive(tags::BOOTSTRAP).rng();
    let mut hits = 0;
    for _ in 0..resamples {
        let measures: Vec<Option<EmpiricalMeasure>> = report
            .rows
            .iter()
            .map(|row| {
                let n = row.per_trial.len();
                pooled_measure((0..n).map(|_| &row.per_trial[rng.random_range(0..n)]))
            })
            .collect();
        let tvs: Option<Vec<f64>> = measures
            .windows(2)
            .map(|w| Some(tv_distance(w[0].as_ref()?, w[1].as_ref()?)))
            .collect();
        if let Some(tvs) = tvs {
            if tvs.windows(2).all(|w| w[1] < w[0]) {
                hits += 1;
            }
        }
    }
    hits as f64 / resamples as f64
}
