//! Experiment drivers. Each takes a parameter struct (echoed into reports)
//! and a worker-thread count that never influences the results.

pub mod arnold;
pub mod coupling;
pub mod limit;
pub mod pipeline;
pub mod positivity;
pub mod sandwich;
pub mod sweep;
pub mod universality;

use std::fmt;
use std::str::FromStr;

use randtopo_core::Space;
use serde::{Serialize, Serializer};

use crate::error::config;
use crate::Result;

pub use arnold::{arnold_betti, ArnoldParams, ArnoldReport};
pub use coupling::{coupling_check, CouplingParams, CouplingReport};
pub use limit::{
    bootstrap_tv_decreasing, estimate_limit_measure, ConvergenceReport, MeasureParams,
};
pub use positivity::{positivity_check, PositivityParams, PositivityReport};
pub use sandwich::{igs_check, igs_instance, IgsParams, IgsReport, SandwichReport};
pub use sweep::{alpha_sweep, SweepParams, SweepReport};
pub use universality::{universality_check, UniversalityParams, UniversalityReport};

/// Stream-family tags keeping the experiments' random streams disjoint.
pub(crate) mod tags {
    pub const MEASURE: u64 = 0x1000;
    pub const IGS: u64 = 0x2000;
    pub const UNIVERSALITY: u64 = 0x3000;
    pub const UNIVERSALITY_REFERENCE: u64 = 0x3800;
    pub const COUPLING: u64 = 0x4000;
    pub const COUPLING_REFERENCE: u64 = 0x4800;
    pub const POSITIVITY: u64 = 0x5000;
    pub const ARNOLD: u64 = 0x6000;
    pub const SWEEP: u64 = 0x7000;
    pub const BOOTSTRAP: u64 = 0x8000;
}

/// The compact model spaces, normalized as used by the manifold experiments:
/// the unit flat torus and the unit round sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Manifold {
    Torus,
    Sphere,
}

impl Manifold {
    pub fn space(self) -> Space {
        match self {
            Manifold::Torus => Space::flat_torus(2, 1.0).expect("unit torus"),
            Manifold::Sphere => Space::sphere2(),
        }
    }

    /// Ball radius `alpha (Vol(M) / n)^{1/d}`, the thermodynamic scaling on
    /// a space of volume `Vol(M)`.
    pub fn radius(self, alpha: f64, n: usize) -> f64 {
        let space = self.space();
        let vol = space.volume().expect("compact");
        alpha * (vol / n as f64).powf(1.0 / space.dim() as f64)
    }

    /// Largest ball radius the nerve test supports on this space.
    pub fn max_radius(self) -> f64 {
        match self {
            Manifold::Torus => 1.0 / 8.0,
            Manifold::Sphere => std::f64::consts::FRAC_PI_4,
        }
    }
}

impl fmt::Display for Manifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Manifold::Torus => "torus",
            Manifold::Sphere => "sphere",
        })
    }
}

impl FromStr for Manifold {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "torus" | "flat_torus" => Ok(Manifold::Torus),
            "sphere" | "sphere2" => Ok(Manifold::Sphere),
            _ => Err(config(format!(
                "unknown space {s:?}; expected \"torus\" or \"sphere\""
            ))),
        }
    }
}

impl Serialize for Manifold {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub(crate) fn check_dim(d: usize) -> Result<()> {
    if (1..=3).contains(&d) {
        Ok(())
    } else {
        Err(config(format!("d must be 1, 2 or 3, got {d}")))
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    check_positive("alpha", alpha)
}

pub(crate) fn check_positive(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(config(format!("{name} must be positive, got {x}")))
    }
}

pub(crate) fn check_trials(trials: u64) -> Result<()> {
    if trials >= 1 {
        Ok(())
    } else {
        Err(config("trials must be at least 1"))
    }
}

pub(crate) fn check_increasing(name: &str, xs: &[f64]) -> Result<()> {
    if xs.is_empty() {
        return Err(config(format!("{name} needs at least one value")));
    }
    for &x in xs {
        check_positive(name, x)?;
    }
    if xs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(config(format!(
            "{name} must be strictly increasing, got {xs:?}"
        )));
    }
    Ok(())
}

pub(crate) fn check_increasing_counts(name: &str, ns: &[usize]) -> Result<()> {
    if ns.is_empty() || ns[0] == 0 || ns.windows(2).any(|w| w[1] <= w[0]) {
        return Err(config(format!(
            "{name} must be a strictly increasing list of positive counts, got {ns:?}"
        )));
    }
    Ok(())
}
