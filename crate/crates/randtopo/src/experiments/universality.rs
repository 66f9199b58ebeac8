//! Whole-manifold empirical measures on the unit flat torus and the unit
//! sphere, compared with each other and with the Euclidean windowed measure.

use std::collections::BTreeMap;

use randtopo_core::homology::Signature;
use randtopo_core::sampling::sample_uniform_manifold;
use randtopo_core::{tv_distance, EmpiricalMeasure, TrialSeed};
use serde::Serialize;

use super::limit::{estimate_limit_measure, MeasureParams, RadiusEstimate};
use super::pipeline::{classify, Instance};
use super::{check_alpha, check_increasing_counts, check_positive, check_trials, tags, Manifold};
use crate::error::config;
use crate::{run_trials, Result};

#[derive(Clone, Debug, Serialize)]
pub struct UniversalityParams {
    pub alpha: f64,
    #[serde(rename = "n")]
    pub ns: Vec<usize>,
    pub spaces: Vec<Manifold>,
    pub trials: u64,
    pub seed: u64,
    /// Window radius of the Euclidean reference measure.
    #[serde(rename = "reference_R")]
    pub reference_radius: f64,
    pub reference_trials: u64,
}

impl UniversalityParams {
    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        check_increasing_counts("n", &self.ns)?;
        check_trials(self.trials)?;
        check_trials(self.reference_trials)?;
        check_positive("reference_R", self.reference_radius)?;
        if self.spaces.is_empty() {
            return Err(config("spaces needs at least one of torus, sphere"));
        }
        if self.spaces.windows(2).any(|w| w[0] == w[1]) || !self.spaces.is_sorted() {
            return Err(config(
                "spaces must be distinct and listed as torus, sphere",
            ));
        }
        for &m in &self.spaces {
            let rho = m.radius(self.alpha, self.ns[0]);
            if rho > m.max_radius() {
                return Err(config(format!(
                    "n = {} gives ball radius {rho} on the {m}, above its limit {}; increase n or lower alpha",
                    self.ns[0],
                    m.max_radius()
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SignatureMass {
    pub signature: String,
    pub count: u64,
    pub mass: f64,
}

pub fn masses(m: &EmpiricalMeasure) -> Vec<SignatureMass> {
    m.counts()
        .iter()
        .map(|(s, &c)| SignatureMass {
            signature: s.to_string(),
            count: c,
            mass: m.mass(*s),
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ManifoldMeasure {
    pub space: Manifold,
    pub n: usize,
    pub ball_radius: f64,
    pub components: u64,
    pub mean_components: f64,
    pub mean_largest_fraction: f64,
    pub measure: Vec<SignatureMass>,
    /// TV distance to the Euclidean reference.
    pub tv_reference: Option<f64>,
    #[serde(skip)]
    pub pooled: Option<EmpiricalMeasure>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairDistance {
    pub a: Manifold,
    pub b: Manifold,
    pub tv: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct UniversalityRow {
    pub n: usize,
    pub spaces: Vec<ManifoldMeasure>,
    pub pairs: Vec<PairDistance>,
}

#[derive(Clone, Debug, Serialize)]
pub struct UniversalityReport {
    pub reference: RadiusEstimate,
    pub reference_measure: Vec<SignatureMass>,
    pub rows: Vec<UniversalityRow>,
}

impl UniversalityReport {
    pub fn tv(&self, n: usize, a: Manifold, b: Manifold) -> Option<f64> {
        let row = self.rows.iter().find(|r| r.n == n)?;
        row.pairs
            .iter()
            .find(|p| (p.a, p.b) == (a, b) || (p.a, p.b) == (b, a))
            .map(|p| p.tv)
    }

    pub fn tv_reference(&self, n: usize, m: Manifold) -> Option<f64> {
        let row = self.rows.iter().find(|r| r.n == n)?;
        row.spaces.iter().find(|s| s.space == m)?.tv_reference
    }
}

struct ManifoldTrial {
    counts: BTreeMap<Signature, u64>,
    components: u64,
    largest: usize,
}

/// All components of `n` uniform points with the thermodynamic radius.
fn manifold_trial(m: Manifold, n: usize, alpha: f64, seed: &TrialSeed) -> Result<ManifoldTrial> {
    let space = m.space();
    let rho = m.radius(alpha, n);
    let points = sample_uniform_manifold(&space, n, seed)?;
    let inst = Instance::build(&space, &points, rho)?;
    let mut counts = BTreeMap::new();
    for comp in &inst.components {
        let (sig, _) = classify(&space, &inst, comp, &points, rho)?;
        *counts.entry(sig).or_insert(0) += 1;
    }
    Ok(ManifoldTrial {
        counts,
        components: inst.components.len() as u64,
        largest: inst.largest_component(),
    })
}

pub fn universality_check(
    params: &UniversalityParams,
    threads: usize,
) -> Result<UniversalityReport> {
    params.validate()?;
    let reference = estimate_limit_measure(
        &MeasureParams {
            d: 2,
            alpha: params.alpha,
            radii: vec![params.reference_radius],
            trials: params.reference_trials,
            seed: TrialSeed::new(params.seed, 0)
                .derive(tags::UNIVERSALITY_REFERENCE)
                .master_seed,
        },
        threads,
    )?
    .rows
    .remove(0);
    let reference_pooled = reference.measure();

    let mut rows = Vec::with_capacity(params.ns.len());
    for (ni, &n) in params.ns.iter().enumerate() {
        let mut spaces = Vec::with_capacity(params.spaces.len());
        for &m in &params.spaces {
            let tag = tags::UNIVERSALITY + 16 * ni as u64 + m as u64;
            let trials = run_trials(threads, 0..params.trials, |t| {
                manifold_trial(
                    m,
                    n,
                    params.alpha,
                    &TrialSeed::new(params.seed, t).derive(tag),
                )
            })
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
            let mut counts = BTreeMap::new();
            for t in &trials {
                for (s, c) in &t.counts {
                    *counts.entry(*s).or_insert(0) += c;
                }
            }
            let pooled = EmpiricalMeasure::from_counts(counts).ok();
            let k = trials.len() as f64;
            spaces.push(ManifoldMeasure {
                space: m,
                n,
                ball_radius: m.radius(params.alpha, n),
                components: trials.iter().map(|t| t.components).sum(),
                mean_components: trials.iter().map(|t| t.components as f64).sum::<f64>() / k,
                mean_largest_fraction: trials
                    .iter()
                    .map(|t| t.largest as f64 / n as f64)
                    .sum::<f64>()
                    / k,
                measure: pooled.as_ref().map(masses).unwrap_or_default(),
                tv_reference: match (&pooled, &reference_pooled) {
                    (Some(a), Some(b)) => Some(tv_distance(a, b)),
                    _ => None,
                },
                pooled,
            });
        }
        let mut pairs = Vec::new();
        for i in 0..spaces.len() {
            for j in i + 1..spaces.len() {
                if let (Some(a), Some(b)) = (&spaces[i].pooled, &spaces[j].pooled) {
                    pairs.push(PairDistance {
                        a: spaces[i].space,
                        b: spaces[j].space,
                        tv: tv_distance(a, b),
                    });
                }
            }
        }
        rows.push(UniversalityRow { n, spaces, pairs });
    }
    Ok(UniversalityReport {
        reference_measure: reference_pooled.as_ref().map(masses).unwrap_or_default(),
        reference,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(alpha: f64, ns: Vec<usize>) -> UniversalityParams {
        UniversalityParams {
            alpha,
            ns,
            spaces: vec![Manifold::Torus, Manifold::Sphere],
            trials: 4,
            seed: 2,
            reference_radius: 8.0,
            reference_trials: 10,
        }
    }

    #[test]
    fn subcritical_measures_agree_roughly() {
        let rep = universality_check(&params(0.3, vec![2000]), 2).unwrap();
        let row = &rep.rows[0];
        assert_eq!(row.pairs.len(), 1);
        let tv = row.pairs[0].tv;
        assert!((0.0..0.1).contains(&tv), "tv {tv}");
        for s in &row.spaces {
            let sum: f64 = s.measure.iter().map(|m| m.mass).sum();
            assert!((sum - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_radius_beyond_chart() {
        let err = universality_check(&params(1.0, vec![10]), 1).unwrap_err();
        assert!(err.to_string().contains("increase n"), "{err}");
    }
}
