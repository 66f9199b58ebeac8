//! Frequencies of target signatures among contained window components.

use std::collections::BTreeMap;

use randtopo_core::homology::Signature;
use randtopo_core::TrialSeed;
use serde::Serialize;

use super::limit::window_trial;
use super::{check_alpha, check_dim, check_positive, check_trials, tags};
use crate::error::config;
use crate::report::signature_labels;
use crate::{run_trials, Result};

#[derive(Clone, Debug, Serialize)]
pub struct PositivityParams {
    pub d: usize,
    pub alpha: f64,
    /// Window radius of each trial.
    #[serde(rename = "R")]
    pub radius: f64,
    #[serde(serialize_with = "signature_labels")]
    pub targets: Vec<Signature>,
    /// Trials per batch.
    pub trials: u64,
    /// Keep running batches until this many components were seen...
    pub min_components: u64,
    /// ...or this many trials were run.
    pub max_trials: u64,
    pub seed: u64,
}

impl PositivityParams {
    pub fn validate(&self) -> Result<()> {
        check_dim(self.d)?;
        check_alpha(self.alpha)?;
        check_positive("R", self.radius)?;
        check_trials(self.trials)?;
        if self.targets.is_empty() {
            return Err(config("targets needs at least one signature"));
        }
        if self.max_trials < self.trials {
            return Err(config(format!(
                "max_trials ({}) must be at least trials ({})",
                self.max_trials, self.trials
            )));
        }
        Ok(())
    }

    /// w0..w5 in the plane, pt on the line, small Betti classes in space.
    pub fn default_targets(d: usize) -> Vec<Signature> {
        match d {
            1 => vec![Signature::Point],
            2 => (0..=5).map(Signature::Wedge).collect(),
            _ => vec![
                Signature::Betti { b1: 0, b2: 0 },
                Signature::Betti { b1: 1, b2: 0 },
                Signature::Betti { b1: 0, b2: 1 },
                Signature::Betti { b1: 2, b2: 0 },
            ],
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TargetFrequency {
    pub signature: String,
    pub count: u64,
    pub frequency: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PositivityReport {
    pub trials_run: u64,
    pub total_components: u64,
    pub targets: Vec<TargetFrequency>,
    /// Every signature seen, targets or not.
    pub observed: BTreeMap<String, u64>,
    pub missing: Vec<String>,
    pub all_observed: bool,
}

pub fn positivity_check(params: &PositivityParams, threads: usize) -> Result<PositivityReport> {
    params.validate()?;
    let mut counts: BTreeMap<Signature, u64> = BTreeMap::new();
    let mut total = 0u64;
    let mut next = 0u64;
    loop {
        let end = (next + params.trials).min(params.max_trials);
        let batch = run_trials(threads, next..end, |t| {
            let seed = TrialSeed::new(params.seed, t).derive(tags::POSITIVITY);
            window_trial(params.d, params.alpha, params.radius, &seed)
        });
        for trial in batch {
            let trial = trial?;
            total += trial.contained;
            for (s, c) in trial.by_signature {
                *counts.entry(s).or_insert(0) += c;
            }
        }
        next = end;
        if total >= params.min_components || next >= params.max_trials {
            break;
        }
    }
    let targets: Vec<TargetFrequency> = params
        .targets
        .iter()
        .map(|s| {
            let count = counts.get(s).copied().unwrap_or(0);
            TargetFrequency {
                signature: s.to_string(),
                count,
                frequency: if total > 0 {
                    count as f64 / total as f64
                } else {
                    0.0
                },
            }
        })
        .collect();
    let missing: Vec<String> = targets
        .iter()
        .filter(|t| t.count == 0)
        .map(|t| t.signature.clone())
        .collect();
    Ok(PositivityReport {
        trials_run: next,
        total_components: total,
        all_observed: missing.is_empty(),
        missing,
        targets,
        observed: counts.iter().map(|(s, c)| (s.to_string(), *c)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(d: usize, targets: Vec<Signature>) -> PositivityParams {
        PositivityParams {
            d,
            alpha: 0.5,
            radius: 10.0,
            targets,
            trials: 5,
            min_components: 0,
            max_trials: 5,
            seed: 1,
        }
    }

    #[test]
    fn line_only_has_points() {
        let rep = positivity_check(&params(1, PositivityParams::default_targets(1)), 2).unwrap();
        assert!(rep.all_observed);
        assert_eq!(rep.observed.len(), 1);
        assert_eq!(rep.targets[0].frequency, 1.0);
    }

    #[test]
    fn frequencies_sum_to_at_most_one() {
        let rep = positivity_check(&params(2, PositivityParams::default_targets(2)), 2).unwrap();
        let sum: f64 = rep.targets.iter().map(|t| t.frequency).sum();
        assert!(sum <= 1.0 + 1e-12);
        assert!(rep.targets[0].count > 0);
    }

    #[test]
    fn batches_run_until_component_budget() {
        let mut p = params(2, vec![Signature::Wedge(0)]);
        p.min_components = 200;
        p.max_trials = 1000;
        let rep = positivity_check(&p, 2).unwrap();
        assert!(rep.total_components >= 200);
        assert_eq!(rep.trials_run % 5, 0);
        assert!(rep.trials_run < 1000);
    }
}
