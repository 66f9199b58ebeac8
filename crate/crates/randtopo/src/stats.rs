//! Sample means with standard errors.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    /// Standard error of the mean; NaN with fewer than two samples.
    pub se: f64,
}

impl Estimate {
    pub fn from_samples<I: IntoIterator<Item = f64>>(samples: I) -> Self {
        // Welford's update, stable when the spread is tiny next to the mean
        let (mut n, mut mean, mut m2) = (0u64, 0.0, 0.0);
        for x in samples {
            n += 1;
            let delta = x - mean;
            mean += delta / n as f64;
            m2 += delta * (x - mean);
        }
        Self::from_moments(n, mean, m2)
    }

    fn from_moments(n: u64, mean: f64, m2: f64) -> Self {
        match n {
            0 => Self {
                mean: f64::NAN,
                se: f64::NAN,
            },
            1 => Self { mean, se: f64::NAN },
            _ => {
                let nf = n as f64;
                Self {
                    mean,
                    se: (m2.max(0.0) / (nf - 1.0) / nf).sqrt(),
                }
            }
        }
    }

    /// From a count and the first two power sums; exact for integer-valued
    /// samples.
    pub fn from_sums(n: u64, sum: f64, sum_sq: f64) -> Self {
        if n == 0 {
            return Self::from_moments(0, 0.0, 0.0);
        }
        let mean = sum / n as f64;
        Self::from_moments(n, mean, sum_sq - n as f64 * mean * mean)
    }

    pub fn scaled(self, factor: f64) -> Self {
        Self {
            mean: self.mean * factor,
            se: self.se * factor.abs(),
        }
    }

    /// Whether `value` lies within `k` standard errors of the mean.
    pub fn covers(&self, value: f64, k: f64) -> bool {
        (self.mean - value).abs() <= k * self.se
    }
}
