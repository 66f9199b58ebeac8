//! Averaged Betti numbers of the union of `alpha`-balls around a
//! unit-intensity Poisson sample, per unit volume.
//!
//! Points are sampled in `B(0, R)` itself and every component counts, so the
//! estimates carry an `O(1/R)` boundary bias.

use std::collections::BTreeMap;

use randtopo_core::geometry::ball_volume;
use randtopo_core::homology::Signature;
use randtopo_core::sampling::sample_poisson;
use randtopo_core::{Space, TrialSeed};
use serde::Serialize;

use super::pipeline::{classify, Instance};
use super::{check_alpha, check_dim, check_positive, check_trials, tags};
use crate::stats::Estimate;
use crate::{run_trials, Result};

#[derive(Clone, Debug, Serialize)]
pub struct ArnoldParams {
    pub d: usize,
    pub alpha: f64,
    #[serde(rename = "R")]
    pub radius: f64,
    pub trials: u64,
    pub seed: u64,
}

impl ArnoldParams {
    pub fn validate(&self) -> Result<()> {
        check_dim(self.d)?;
        check_alpha(self.alpha)?;
        check_positive("R", self.radius)?;
        check_trials(self.trials)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SignatureDensity {
    pub signature: String,
    pub density: Estimate,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArnoldReport {
    pub volume: f64,
    /// `betti[k]`: estimate of `beta_k`, for `k = 0..=d`.
    pub betti: Vec<Estimate>,
    pub beta0_by_signature: Vec<SignatureDensity>,
    /// Components too large to classify; their higher Betti numbers are
    /// missing from the estimates.
    pub oversize_components: u64,
}

struct ArnoldTrial {
    betti: Vec<u64>,
    by_signature: BTreeMap<Signature, u64>,
    oversize: u64,
}

fn arnold_trial(params: &ArnoldParams, seed: &TrialSeed) -> Result<ArnoldTrial> {
    let space = Space::euclidean(params.d)?;
    let points = sample_poisson(params.d, params.radius, seed)?;
    let inst = Instance::build(&space, &points, params.alpha)?;
    let mut out = ArnoldTrial {
        betti: vec![0; params.d + 1],
        by_signature: BTreeMap::new(),
        oversize: 0,
    };
    for comp in &inst.components {
        let (sig, b) = classify(&space, &inst, comp, &points, params.alpha)?;
        *out.by_signature.entry(sig).or_insert(0) += 1;
        match b {
            Some(b) => {
                for (k, x) in out.betti.iter_mut().enumerate() {
                    *x += b.get(k) as u64;
                }
            }
            None => {
                out.betti[0] += 1;
                out.oversize += 1;
            }
        }
    }
    Ok(out)
}

pub fn arnold_betti(params: &ArnoldParams, threads: usize) -> Result<ArnoldReport> {
    params.validate()?;
    let trials = run_trials(threads, 0..params.trials, |t| {
        arnold_trial(params, &TrialSeed::new(params.seed, t).derive(tags::ARNOLD))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let volume = ball_volume(params.d, params.radius);
    let betti = (0..=params.d)
        .map(|k| Estimate::from_samples(trials.iter().map(|t| t.betti[k] as f64 / volume)))
        .collect();
    let mut sigs: Vec<Signature> = trials
        .iter()
        .flat_map(|t| t.by_signature.keys())
        .copied()
        .collect();
    sigs.sort();
    sigs.dedup();
    let beta0_by_signature = sigs
        .iter()
        .map(|s| SignatureDensity {
            signature: s.to_string(),
            density: Estimate::from_samples(
                trials
                    .iter()
                    .map(|t| t.by_signature.get(s).copied().unwrap_or(0) as f64 / volume),
            ),
        })
        .collect();
    Ok(ArnoldReport {
        volume,
        betti,
        beta0_by_signature,
        oversize_components: trials.iter().map(|t| t.oversize).sum(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature_densities_add_up_to_beta0() {
        let p = ArnoldParams {
            d: 2,
            alpha: 0.45,
            radius: 8.0,
            trials: 10,
            seed: 3,
        };
        let rep = arnold_betti(&p, 2).unwrap();
        let sum: f64 = rep.beta0_by_signature.iter().map(|s| s.density.mean).sum();
        assert!((sum - rep.betti[0].mean).abs() < 1e-12);
        assert!(rep.betti[0].mean >= (-std::f64::consts::PI * 0.81f64).exp() * 0.8);
        assert_eq!(rep.betti.len(), 3);
        assert_eq!(rep.betti[2].mean, 0.0);
    }

    #[test]
    fn dust_has_no_cycles() {
        let p = ArnoldParams {
            d: 2,
            alpha: 0.05,
            radius: 10.0,
            trials: 5,
            seed: 3,
        };
        let rep = arnold_betti(&p, 1).unwrap();
        assert_eq!(rep.betti[1].mean, 0.0);
    }
}
