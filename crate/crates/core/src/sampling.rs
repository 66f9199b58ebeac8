//! Reproducible point generation.
//!
//! Every trial owns a ChaCha8 stream keyed by the master seed and selected by
//! the trial index, so samples never depend on scheduling.

use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};

use crate::error::{invalid, Error, Result};
use crate::geometry::{ball_volume, dot, sphere_angle, sub, wrap, Point, Raw, Space, SpaceKind};

pub type TrialRng = ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TrialSeed {
    pub master_seed: u64,
    pub trial_index: u64,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

impl TrialSeed {
    pub fn new(master_seed: u64, trial_index: u64) -> Self {
        Self {
            master_seed,
            trial_index,
        }
    }

    /// An independent family of streams for a sub-experiment, e.g. one radius
    /// of a schedule. The trial index is kept.
    pub fn derive(&self, tag: u64) -> Self {
        Self {
            master_seed: splitmix64(self.master_seed ^ splitmix64(tag)),
            trial_index: self.trial_index,
        }
    }

    pub fn rng(&self) -> TrialRng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.trial_index);
        rng
    }
}

/// Uniform point in the closed Euclidean ball `B(0, radius)` by rejection
/// from the bounding cube.
pub fn uniform_in_ball<R: Rng + ?Sized>(rng: &mut R, dim: usize, radius: f64) -> Point {
    let r2 = radius * radius;
    loop {
        let mut c = [0.0; 3];
        for x in c.iter_mut().take(dim) {
            *x = radius * (2.0 * rng.random::<f64>() - 1.0);
        }
        if dot(&c, &c) <= r2 {
            return Point::from_raw(dim, c);
        }
    }
}

/// Unit-intensity Poisson process restricted to `B(0, window_radius)`.
pub fn sample_poisson(dim: usize, window_radius: f64, seed: &TrialSeed) -> Result<Vec<Point>> {
    sample_poisson_with(&mut seed.rng(), dim, window_radius)
}

pub fn sample_poisson_with<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    window_radius: f64,
) -> Result<Vec<Point>> {
    if !(1..=3).contains(&dim) {
        return Err(invalid(format!("dimension must be 1..=3, got {dim}")));
    }
    if !(window_radius > 0.0 && window_radius.is_finite()) {
        return Err(invalid(format!(
            "window radius must be positive, got {window_radius}"
        )));
    }
    let mean = ball_volume(dim, window_radius);
    let count = Poisson::new(mean)
        .map_err(|e| invalid(format!("poisson mean {mean}: {e}")))?
        .sample(rng) as usize;
    Ok((0..count)
        .map(|_| uniform_in_ball(rng, dim, window_radius))
        .collect())
}

/// `n` i.i.d. uniform points on a compact space.
pub fn sample_uniform_manifold(space: &Space, n: usize, seed: &TrialSeed) -> Result<Vec<Point>> {
    sample_uniform_manifold_with(&mut seed.rng(), space, n)
}

pub fn sample_uniform_manifold_with<R: Rng + ?Sized>(
    rng: &mut R,
    space: &Space,
    n: usize,
) -> Result<Vec<Point>> {
    match space.kind() {
        SpaceKind::Euclidean => Err(invalid(
            "uniform sampling needs a compact space (flat torus or sphere)",
        )),
        SpaceKind::FlatTorus { side } => Ok((0..n)
            .map(|_| {
                let mut c = [0.0; 3];
                for x in c.iter_mut().take(space.dim()) {
                    *x = side * rng.random::<f64>();
                }
                Point::from_raw(space.dim(), c)
            })
            .collect()),
        SpaceKind::Sphere2 => Ok((0..n)
            .map(|_| loop {
                let c: Raw = [
                    StandardNormal.sample(rng),
                    StandardNormal.sample(rng),
                    StandardNormal.sample(rng),
                ];
                let norm = libm::sqrt(dot(&c, &c));
                if norm > 1e-12 {
                    break Point::from_raw(3, [c[0] / norm, c[1] / norm, c[2] / norm]);
                }
            })
            .collect()),
    }
}

/// Orthonormal basis of the tangent plane of the unit sphere at `p`.
fn tangent_basis(p: &Raw) -> (Raw, Raw) {
    let k = (0..3)
        .min_by(|&i, &j| libm::fabs(p[i]).total_cmp(&libm::fabs(p[j])))
        .unwrap();
    let mut axis = [0.0; 3];
    axis[k] = 1.0;
    let proj = dot(&axis, p);
    let t = [
        axis[0] - proj * p[0],
        axis[1] - proj * p[1],
        axis[2] - proj * p[2],
    ];
    let n = libm::sqrt(dot(&t, &t));
    let e1 = [t[0] / n, t[1] / n, t[2] / n];
    let e2 = crate::geometry::cross(p, &e1);
    (e1, e2)
}

/// Rescaled normal coordinates around `base`: `scale * exp_base^{-1}(q)`.
///
/// Fails with [`Error::OutOfChart`] when `scale * d(base, q)` exceeds
/// `chart_radius`, or on the sphere when `q` is antipodal to `base`.
pub fn rescale_chart(
    space: &Space,
    base: &Point,
    scale: f64,
    q: &Point,
    chart_radius: f64,
) -> Result<Point> {
    if scale.is_nan() || scale <= 0.0 {
        return Err(invalid(format!(
            "chart scale must be positive, got {scale}"
        )));
    }
    space.validate_point(base)?;
    space.validate_point(q)?;
    let p = base.raw();
    let x = q.raw();
    let distance = space.distance_unchecked(&p, &x);
    if distance * scale > chart_radius {
        return Err(Error::OutOfChart {
            distance: distance * scale,
            radius: chart_radius,
        });
    }
    match space.kind() {
        SpaceKind::Euclidean => {
            let v = sub(&x, &p);
            Ok(Point::from_raw(space.dim(), v.map(|c| c * scale)))
        }
        SpaceKind::FlatTorus { side } => {
            let mut v = [0.0; 3];
            for k in 0..space.dim() {
                v[k] = scale * wrap(x[k] - p[k], side);
            }
            Ok(Point::from_raw(space.dim(), v))
        }
        SpaceKind::Sphere2 => {
            let theta = sphere_angle(&p, &x);
            if theta >= core::f64::consts::PI - 1e-12 {
                return Err(Error::OutOfChart {
                    distance: theta * scale,
                    radius: chart_radius,
                });
            }
            if theta == 0.0 {
                return Ok(Point::origin(2));
            }
            let c = dot(&p, &x);
            let t = [x[0] - c * p[0], x[1] - c * p[1], x[2] - c * p[2]];
            let tn = libm::sqrt(dot(&t, &t));
            let (e1, e2) = tangent_basis(&p);
            let f = scale * theta / tn;
            Ok(Point::from([f * dot(&t, &e1), f * dot(&t, &e2)]))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_points() {
        let seed = TrialSeed::new(7, 3);
        let a = sample_poisson(2, 5.0, &seed).unwrap();
        let b = sample_poisson(2, 5.0, &seed).unwrap();
        assert_eq!(a, b);
        let c = sample_poisson(2, 5.0, &TrialSeed::new(7, 4)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn derived_streams_differ() {
        let seed = TrialSeed::new(7, 3);
        assert_ne!(seed.derive(0), seed.derive(1));
        assert_eq!(seed.derive(5).trial_index, 3);
    }

    #[test]
    fn poisson_points_lie_in_window() {
        let pts = sample_poisson(3, 2.0, &TrialSeed::new(1, 0)).unwrap();
        assert!(pts.iter().all(|p| p.dim() == 3 && p.norm() <= 2.0));
    }

    #[test]
    fn poisson_rejects_bad_parameters() {
        let s = TrialSeed::new(1, 0);
        assert!(sample_poisson(4, 1.0, &s).is_err());
        assert!(sample_poisson(2, 0.0, &s).is_err());
    }

    #[test]
    fn manifold_sampling_needs_compact_space() {
        let s = Space::euclidean(2).unwrap();
        assert!(sample_uniform_manifold(&s, 10, &TrialSeed::new(0, 0)).is_err());
    }

    #[test]
    fn single_manifold_point() {
        let sphere = Space::sphere2();
        let pts = sample_uniform_manifold(&sphere, 1, &TrialSeed::new(0, 0)).unwrap();
        assert_eq!(pts.len(), 1);
        sphere.validate_point(&pts[0]).unwrap();
        let torus = Space::flat_torus(2, 1.0).unwrap();
        let pts = sample_uniform_manifold(&torus, 1, &TrialSeed::new(0, 0)).unwrap();
        assert_eq!(pts.len(), 1);
        assert!(pts[0].coords().iter().all(|c| (0.0..1.0).contains(c)));
    }

    #[test]
    fn chart_at_base_is_origin() {
        let sphere = Space::sphere2();
        let p = Point::from([0.0, 0.6, 0.8]);
        let o = rescale_chart(&sphere, &p, 3.0, &p, 1.0).unwrap();
        assert_eq!(o.coords(), &[0.0, 0.0]);
    }

    #[test]
    fn torus_chart_wraps_then_scales() {
        let torus = Space::flat_torus(2, 10.0).unwrap();
        let v = rescale_chart(&torus, &[0.0, 0.0].into(), 2.0, &[9.5, 0.0].into(), 5.0).unwrap();
        assert!((v.coords()[0] + 1.0).abs() < 1e-12 && v.coords()[1].abs() < 1e-12);
    }

    #[test]
    fn sphere_chart_preserves_radial_distance() {
        let sphere = Space::sphere2();
        let north = Point::from([0.0, 0.0, 1.0]);
        let q = Point::from([libm::sin(0.1), 0.0, libm::cos(0.1)]);
        let v = rescale_chart(&sphere, &north, 10.0, &q, 5.0).unwrap();
        assert!((v.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn chart_rejects_far_points() {
        let sphere = Space::sphere2();
        let north = Point::from([0.0, 0.0, 1.0]);
        let q = Point::from([1.0, 0.0, 0.0]);
        assert!(matches!(
            rescale_chart(&sphere, &north, 10.0, &q, 5.0),
            Err(Error::OutOfChart { .. })
        ));
        let south = Point::from([0.0, 0.0, -1.0]);
        assert!(rescale_chart(&sphere, &north, 1.0, &south, 10.0).is_err());
    }
}
