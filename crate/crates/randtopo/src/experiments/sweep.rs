//! Measure estimates across a grid of radii `alpha`, with the size of the
//! largest component as a percolation proxy.

use randtopo_core::homology::Signature;
use randtopo_core::sampling::sample_poisson;
use randtopo_core::{Space, TrialSeed};
use serde::Serialize;

use super::limit::{count_window, summarize_radius, RadiusEstimate, TrialCounts};
use super::pipeline::Instance;
use super::{check_dim, check_increasing, check_positive, check_trials, tags};
use crate::stats::Estimate;
use crate::{run_trials, Result};

#[derive(Clone, Debug, Serialize)]
pub struct SweepParams {
    pub d: usize,
    pub alphas: Vec<f64>,
    #[serde(rename = "R")]
    pub radius: f64,
    pub trials: u64,
    pub seed: u64,
}

impl SweepParams {
    pub fn validate(&self) -> Result<()> {
        check_dim(self.d)?;
        check_increasing("alpha", &self.alphas)?;
        check_positive("R", self.radius)?;
        check_trials(self.trials)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub largest_fraction: Estimate,
    /// Fraction of trials with a component above the classification cap.
    pub oversize_frequency: f64,
    pub estimate: RadiusEstimate,
}

#[derive(Clone, Debug, Serialize)]
pub struct Crossing {
    pub alpha: Option<f64>,
    /// Crossings of the mean plus and minus one standard error.
    pub lower: Option<f64>,
    pub upper: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    /// Where the mean largest-component fraction first reaches 1/2.
    pub half_crossing: Crossing,
}

struct SweepTrial {
    counts: TrialCounts,
    largest_fraction: f64,
    oversize: bool,
}

fn sweep_trial(d: usize, alpha: f64, radius: f64, seed: &TrialSeed) -> Result<SweepTrial> {
    let space = Space::euclidean(d)?;
    let points = sample_poisson(d, radius + 2.0 * alpha, seed)?;
    let inst = Instance::build(&space, &points, alpha)?;
    let counts = count_window(&space, &inst, &points, radius, alpha)?;
    let largest = inst.largest_component();
    Ok(SweepTrial {
        counts,
        largest_fraction: if points.is_empty() {
            0.0
        } else {
            largest as f64 / points.len() as f64
        },
        oversize: inst.components.iter().any(|c| c.is_oversize()),
    })
}

/// First `alpha` where `ys` reaches `level`, linearly interpolated.
fn first_crossing(xs: &[f64], ys: &[f64], level: f64) -> Option<f64> {
    if ys.first()? >= &level {
        return Some(xs[0]);
    }
    (1..xs.len()).find_map(|i| {
        let (y0, y1) = (ys[i - 1], ys[i]);
        (y0 < level && y1 >= level)
            .then(|| xs[i - 1] + (level - y0) / (y1 - y0) * (xs[i] - xs[i - 1]))
    })
}

pub fn alpha_sweep(params: &SweepParams, threads: usize) -> Result<SweepReport> {
    params.validate()?;
    let mut rows = Vec::with_capacity(params.alphas.len());
    for (ai, &alpha) in params.alphas.iter().enumerate() {
        let trials = run_trials(threads, 0..params.trials, |t| {
            let seed = TrialSeed::new(params.seed, t).derive(tags::SWEEP + ai as u64);
            sweep_trial(params.d, alpha, params.radius, &seed)
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        let largest_fraction = Estimate::from_samples(trials.iter().map(|t| t.largest_fraction));
        let oversize_frequency =
            trials.iter().filter(|t| t.oversize).count() as f64 / trials.len() as f64;
        let per_trial = trials.into_iter().map(|t| t.counts).collect();
        rows.push(SweepRow {
            alpha,
            largest_fraction,
            oversize_frequency,
            estimate: summarize_radius(params.radius, params.d, per_trial),
        });
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.alpha).collect();
    let curve = |shift: f64| -> Vec<f64> {
        rows.iter()
            .map(|r| r.largest_fraction.mean + shift * r.largest_fraction.se.max(0.0))
            .collect()
    };
    let half_crossing = Crossing {
        alpha: first_crossing(&xs, &curve(0.0), 0.5),
        lower: first_crossing(&xs, &curve(1.0), 0.5),
        upper: first_crossing(&xs, &curve(-1.0), 0.5),
    };
    Ok(SweepReport {
        rows,
        half_crossing,
    })
}

/// Share of the point-singleton type `w0`/`pt` in a sweep row.
pub fn point_ratio(row: &SweepRow, d: usize) -> f64 {
    let sig = if d == 1 {
        Signature::Point
    } else if d == 2 {
        Signature::Wedge(0)
    } else {
        Signature::Betti { b1: 0, b2: 0 }
    };
    row.estimate.ratio(sig)
}
