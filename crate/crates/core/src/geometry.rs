//! Distances, balls and the nerve test on the three model spaces.
//!
//! Points carry up to three coordinates inline so that they stay `Copy` and
//! allocation free. Euclidean windows and flat tori use `d` coordinates; the
//! round 2-sphere is embedded as the unit sphere in `R^3`.

use core::f64::consts::PI;

use alloc::format;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};

/// Relative tolerance applied to every closed-ball comparison.
pub const REL_TOL: f64 = 1e-12;

/// Projected enclosing centers shorter than this mean the cap test is not
/// confined to an open hemisphere.
const HEMISPHERE_EPS: f64 = 1e-9;

const MAX_DIM: usize = 3;

pub(crate) type Raw = [f64; 3];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    dim: u8,
    coords: Raw,
}

impl Point {
    pub fn new(coords: &[f64]) -> Result<Self> {
        if coords.is_empty() || coords.len() > MAX_DIM {
            return Err(invalid(format!(
                "points need 1 to {MAX_DIM} coordinates, got {}",
                coords.len()
            )));
        }
        let mut raw = [0.0; 3];
        raw[..coords.len()].copy_from_slice(coords);
        Ok(Self {
            dim: coords.len() as u8,
            coords: raw,
        })
    }

    pub fn origin(dim: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&dim));
        Self {
            dim: dim as u8,
            coords: [0.0; 3],
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    #[inline]
    pub fn coords(&self) -> &[f64] {
        &self.coords[..self.dim as usize]
    }

    #[inline]
    pub(crate) fn raw(&self) -> Raw {
        self.coords
    }

    #[inline]
    pub(crate) fn from_raw(dim: usize, coords: Raw) -> Self {
        Self {
            dim: dim as u8,
            coords,
        }
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(dot(&self.coords, &self.coords))
    }
}

impl From<[f64; 1]> for Point {
    fn from(c: [f64; 1]) -> Self {
        Self::from_raw(1, [c[0], 0.0, 0.0])
    }
}

impl From<[f64; 2]> for Point {
    fn from(c: [f64; 2]) -> Self {
        Self::from_raw(2, [c[0], c[1], 0.0])
    }
}

impl From<[f64; 3]> for Point {
    fn from(c: [f64; 3]) -> Self {
        Self::from_raw(3, c)
    }
}

#[inline]
pub(crate) fn sub(a: &Raw, b: &Raw) -> Raw {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub(crate) fn dot(a: &Raw, b: &Raw) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub(crate) fn dist2(a: &Raw, b: &Raw) -> f64 {
    let v = sub(a, b);
    dot(&v, &v)
}

#[inline]
pub(crate) fn cross(a: &Raw, b: &Raw) -> Raw {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Geodesic angle between two unit vectors, accurate at small separations.
#[inline]
pub(crate) fn sphere_angle(a: &Raw, b: &Raw) -> f64 {
    let c = cross(a, b);
    libm::atan2(libm::sqrt(dot(&c, &c)), dot(a, b))
}

/// Volume of a Euclidean ball of radius `r` in dimension `dim`.
pub fn ball_volume(dim: usize, r: f64) -> f64 {
    match dim {
        1 => 2.0 * r,
        2 => PI * r * r,
        3 => 4.0 / 3.0 * PI * r * r * r,
        _ => panic!("ball_volume supports dimensions 1..=3, got {dim}"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpaceKind {
    Euclidean,
    FlatTorus { side: f64 },
    Sphere2,
}

/// An ambient geometry together with its intrinsic dimension.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Space {
    kind: SpaceKind,
    dim: usize,
}

impl Space {
    pub fn euclidean(dim: usize) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&dim) {
            return Err(invalid(format!(
                "euclidean dimension must be 1..=3, got {dim}"
            )));
        }
        Ok(Self {
            kind: SpaceKind::Euclidean,
            dim,
        })
    }

    pub fn flat_torus(dim: usize, side: f64) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&dim) {
            return Err(invalid(format!("torus dimension must be 1..=3, got {dim}")));
        }
        if !(side > 0.0 && side.is_finite()) {
            return Err(invalid(format!("torus side must be positive, got {side}")));
        }
        Ok(Self {
            kind: SpaceKind::FlatTorus { side },
            dim,
        })
    }

    pub fn sphere2() -> Self {
        Self {
            kind: SpaceKind::Sphere2,
            dim: 2,
        }
    }

    #[inline]
    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    /// Intrinsic dimension.
    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of coordinates a point of this space carries.
    #[inline]
    pub fn ambient_dim(&self) -> usize {
        match self.kind {
            SpaceKind::Sphere2 => 3,
            _ => self.dim,
        }
    }

    /// Total volume for compact spaces.
    pub fn volume(&self) -> Option<f64> {
        match self.kind {
            SpaceKind::Euclidean => None,
            SpaceKind::FlatTorus { side } => Some(libm::pow(side, self.dim as f64)),
            SpaceKind::Sphere2 => Some(4.0 * PI),
        }
    }

    pub fn is_compact(&self) -> bool {
        self.volume().is_some()
    }

    pub fn validate_point(&self, p: &Point) -> Result<()> {
        if p.dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: p.dim(),
            });
        }
        if self.kind == SpaceKind::Sphere2 && libm::fabs(p.norm() - 1.0) > REL_TOL {
            return Err(invalid(format!(
                "sphere points must have unit norm, got {}",
                p.norm()
            )));
        }
        Ok(())
    }

    pub fn distance(&self, p: &Point, q: &Point) -> Result<f64> {
        for x in [p, q] {
            if x.dim() != self.ambient_dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.ambient_dim(),
                    found: x.dim(),
                });
            }
        }
        Ok(self.distance_unchecked(&p.coords, &q.coords))
    }

    pub(crate) fn distance_unchecked(&self, p: &Raw, q: &Raw) -> f64 {
        match self.kind {
            SpaceKind::Sphere2 => sphere_angle(p, q),
            _ => libm::sqrt(self.flat_dist2(p, q)),
        }
    }

    /// Squared distance for the flat spaces (Euclidean and torus).
    #[inline]
    pub(crate) fn flat_dist2(&self, p: &Raw, q: &Raw) -> f64 {
        let mut v = sub(q, p);
        if let SpaceKind::FlatTorus { side } = self.kind {
            for c in v.iter_mut().take(self.dim) {
                *c = wrap(*c, side);
            }
        }
        dot(&v, &v)
    }

    /// The periodic image of `q` closest to `anchor`. Identity off the torus.
    pub fn nearest_image(&self, anchor: &Point, q: &Point) -> Point {
        match self.kind {
            SpaceKind::FlatTorus { side } => {
                let mut c = anchor.coords;
                for k in 0..self.dim {
                    c[k] += wrap(q.coords[k] - anchor.coords[k], side);
                }
                Point::from_raw(self.dim, c)
            }
            _ => *q,
        }
    }

    /// True when two closed balls of radius `alpha` around `p` and `q` meet.
    #[inline]
    pub(crate) fn balls_meet(&self, p: &Raw, q: &Raw, alpha: f64) -> bool {
        match self.kind {
            SpaceKind::Sphere2 => sphere_angle(p, q) <= 2.0 * alpha * (1.0 + REL_TOL),
            _ => self.flat_dist2(p, q) <= 4.0 * alpha * alpha * (1.0 + REL_TOL),
        }
    }
}

/// `x mod m` in `[0, m)`.
#[inline]
pub(crate) fn modulo(x: f64, m: f64) -> f64 {
    let r = x - m * libm::floor(x / m);
    if r >= m {
        0.0
    } else {
        r
    }
}

/// Minimal periodic representative of a coordinate difference, in `[-L/2, L/2]`.
#[inline]
pub(crate) fn wrap(delta: f64, side: f64) -> f64 {
    delta - side * libm::round(delta / side)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if radius.is_nan() || radius <= 0.0 {
            return Err(invalid(format!(
                "ball radius must be positive, got {radius}"
            )));
        }
        Ok(Self { center, radius })
    }
}

// ---------------------------------------------------------------------------
// Smallest enclosing ball (Welzl, move-to-front variant)
// ---------------------------------------------------------------------------

#[derive(Clone, Copy)]
struct Support {
    pts: [Raw; MAX_DIM + 1],
    len: usize,
}

impl Support {
    fn push(&mut self, p: Raw) {
        self.pts[self.len] = p;
        self.len += 1;
    }
}

#[derive(Clone, Copy, Debug)]
struct RawBall {
    center: Raw,
    /// Squared radius; negative encodes the empty ball.
    r2: f64,
}

impl RawBall {
    const EMPTY: RawBall = RawBall {
        center: [0.0; 3],
        r2: -1.0,
    };

    #[inline]
    fn contains(&self, p: &Raw) -> bool {
        self.r2 >= 0.0 && dist2(&self.center, p) <= self.r2 * (1.0 + REL_TOL)
    }
}

/// Smallest closed Euclidean ball containing every point.
///
/// The result does not depend on input order beyond floating tolerance.
pub fn min_enclosing_ball(points: &[Point]) -> Result<(Point, f64)> {
    let first = points
        .first()
        .ok_or_else(|| invalid("min_enclosing_ball needs at least one point"))?;
    let dim = first.dim();
    if let Some(bad) = points.iter().find(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.dim(),
        });
    }
    let ball = if points.len() <= 8 {
        let mut buf = [[0.0; 3]; 8];
        for (b, p) in buf.iter_mut().zip(points) {
            *b = p.coords;
        }
        raw_meb(&mut buf[..points.len()], dim)
    } else {
        let mut buf: Vec<Raw> = points.iter().map(|p| p.coords).collect();
        raw_meb(&mut buf, dim)
    };
    Ok((
        Point::from_raw(dim, ball.center),
        libm::sqrt(ball.r2.max(0.0)),
    ))
}

fn raw_meb(pts: &mut [Raw], dim: usize) -> RawBall {
    let mut support = Support {
        pts: [[0.0; 3]; MAX_DIM + 1],
        len: 0,
    };
    let n = pts.len();
    move_to_front(pts, n, &mut support, dim)
}

fn move_to_front(pts: &mut [Raw], end: usize, support: &mut Support, dim: usize) -> RawBall {
    let mut ball = circumball(&support.pts[..support.len], dim);
    if support.len == dim + 1 {
        return ball;
    }
    for i in 0..end {
        if !ball.contains(&pts[i]) {
            let p = pts[i];
            let saved = *support;
            support.push(p);
            ball = move_to_front(pts, i, support, dim);
            *support = saved;
            pts[..=i].rotate_right(1);
        }
    }
    ball
}

/// Smallest ball with every support point on its boundary, centered in
/// their affine hull.
fn circumball(support: &[Raw], dim: usize) -> RawBall {
    match support.len() {
        0 => RawBall::EMPTY,
        1 => RawBall {
            center: support[0],
            r2: 0.0,
        },
        k => match solve_circumcenter(support) {
            Some(ball) => ball,
            // Affinely dependent support only arises from ties; fall back to
            // the best ball over sub-supports.
            None => degenerate_support_ball(support, dim, k),
        },
    }
}

fn solve_circumcenter(support: &[Raw]) -> Option<RawBall> {
    let p0 = support[0];
    let m = support.len() - 1;
    let mut v = [[0.0; 3]; MAX_DIM];
    for i in 0..m {
        v[i] = sub(&support[i + 1], &p0);
    }
    let mut a = [[0.0; MAX_DIM + 1]; MAX_DIM];
    for i in 0..m {
        for j in 0..m {
            a[i][j] = 2.0 * dot(&v[i], &v[j]);
        }
        a[i][m] = dot(&v[i], &v[i]);
    }
    let lambda = gauss_solve(&mut a, m)?;
    let mut offset = [0.0; 3];
    for i in 0..m {
        for c in 0..3 {
            offset[c] += lambda[i] * v[i][c];
        }
    }
    Some(RawBall {
        center: [p0[0] + offset[0], p0[1] + offset[1], p0[2] + offset[2]],
        r2: dot(&offset, &offset),
    })
}

/// Gaussian elimination with partial pivoting on an `m x (m+1)` augmented
/// system. `None` when the system is numerically singular.
fn gauss_solve(a: &mut [[f64; MAX_DIM + 1]; MAX_DIM], m: usize) -> Option<[f64; MAX_DIM]> {
    let scale = a
        .iter()
        .take(m)
        .flat_map(|row| row[..m].iter())
        .fold(0.0f64, |s, x| s.max(libm::fabs(*x)));
    if scale == 0.0 {
        return None;
    }
    for col in 0..m {
        let pivot = (col..m)
            .max_by(|&i, &j| libm::fabs(a[i][col]).total_cmp(&libm::fabs(a[j][col])))
            .unwrap();
        if libm::fabs(a[pivot][col]) <= 1e-12 * scale {
            return None;
        }
        a.swap(col, pivot);
        for row in col + 1..m {
            let f = a[row][col] / a[col][col];
            for k in col..=m {
                a[row][k] -= f * a[col][k];
            }
        }
    }
    let mut x = [0.0; MAX_DIM];
    for row in (0..m).rev() {
        let mut s = a[row][m];
        for k in row + 1..m {
            s -= a[row][k] * x[k];
        }
        x[row] = s / a[row][row];
    }
    Some(x)
}

fn degenerate_support_ball(support: &[Raw], dim: usize, k: usize) -> RawBall {
    let mut best = RawBall::EMPTY;
    for mask in 1u32..(1 << k) - 1 {
        let mut sub_pts = [[0.0; 3]; MAX_DIM + 1];
        let mut len = 0;
        for (i, p) in support.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sub_pts[len] = *p;
                len += 1;
            }
        }
        let ball = circumball(&sub_pts[..len], dim);
        if support.iter().all(|p| ball.contains(p)) && (best.r2 < 0.0 || ball.r2 < best.r2) {
            best = ball;
        }
    }
    best
}

// ---------------------------------------------------------------------------
// Nerve test
// ---------------------------------------------------------------------------

/// Whether the closed radius-`alpha` balls around `centers` share a point.
///
/// Callers guarantee the clique precondition (centers pairwise within
/// `2 alpha`). Torus centers are unwrapped around the first center; sphere
/// centers must lie in an open hemisphere.
pub fn common_intersection_nonempty(space: &Space, centers: &[Point], alpha: f64) -> Result<bool> {
    if centers.is_empty() {
        return Err(invalid(
            "common_intersection_nonempty needs at least one center",
        ));
    }
    for c in centers {
        if c.dim() != space.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: space.ambient_dim(),
                found: c.dim(),
            });
        }
    }
    let mut buf = [[0.0; 3]; 8];
    let mut heap;
    let pts: &mut [Raw] = if centers.len() <= buf.len() {
        for (b, c) in buf.iter_mut().zip(centers) {
            *b = c.coords;
        }
        &mut buf[..centers.len()]
    } else {
        heap = centers.iter().map(|c| c.coords).collect::<Vec<_>>();
        &mut heap
    };
    if let SpaceKind::FlatTorus { side } = space.kind {
        let anchor = pts[0];
        for p in pts.iter_mut().skip(1) {
            for k in 0..space.dim {
                p[k] = anchor[k] + wrap(p[k] - anchor[k], side);
            }
        }
    }
    nerve_test_raw(space, pts, alpha)
}

/// Nerve test on coordinates already expressed in one chart.
pub(crate) fn nerve_test_raw(space: &Space, pts: &mut [Raw], alpha: f64) -> Result<bool> {
    match space.kind {
        SpaceKind::Euclidean | SpaceKind::FlatTorus { .. } => {
            let ball = raw_meb(pts, space.dim);
            Ok(ball.r2 <= alpha * alpha * (1.0 + REL_TOL))
        }
        SpaceKind::Sphere2 => {
            let ball = raw_meb(pts, 3);
            let norm = libm::sqrt(dot(&ball.center, &ball.center));
            if norm < HEMISPHERE_EPS {
                return Err(Error::Degenerate(format!(
                    "centers not in an open hemisphere (enclosing center norm {norm:e})"
                )));
            }
            let axis = [
                ball.center[0] / norm,
                ball.center[1] / norm,
                ball.center[2] / norm,
            ];
            let reach = pts
                .iter()
                .map(|p| sphere_angle(&axis, p))
                .fold(0.0f64, f64::max);
            Ok(reach <= alpha * (1.0 + REL_TOL))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use core::f64::consts::FRAC_PI_2;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        libm::fabs(a - b) <= tol
    }

    #[test]
    fn euclidean_distance_is_pythagorean() {
        let s = Space::euclidean(2).unwrap();
        let d = s.distance(&[0.0, 0.0].into(), &[3.0, 4.0].into()).unwrap();
        assert!(close(d, 5.0, 1e-15));
    }

    #[test]
    fn torus_distance_wraps() {
        let s = Space::flat_torus(2, 10.0).unwrap();
        let d = s.distance(&[0.0, 0.0].into(), &[9.0, 0.0].into()).unwrap();
        assert!(close(d, 1.0, 1e-12));
    }

    #[test]
    fn sphere_distance_is_arc_length() {
        let s = Space::sphere2();
        let d = s
            .distance(&[1.0, 0.0, 0.0].into(), &[0.0, 1.0, 0.0].into())
            .unwrap();
        assert!(close(d, FRAC_PI_2, 1e-15));
    }

    #[test]
    fn distance_rejects_dimension_mismatch() {
        let s = Space::euclidean(2).unwrap();
        let err = s.distance(&[0.0].into(), &[1.0, 1.0].into()).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn meb_of_pair_is_midpoint() {
        let (c, r) = min_enclosing_ball(&[[0.0, 0.0].into(), [2.0, 0.0].into()]).unwrap();
        assert!(close(c.coords()[0], 1.0, 1e-15) && close(c.coords()[1], 0.0, 1e-15));
        assert!(close(r, 1.0, 1e-15));
    }

    #[test]
    fn meb_of_equilateral_triangle_is_circumcircle() {
        let h = libm::sqrt(3.0) / 2.0;
        let pts = [[0.0, 0.0].into(), [1.0, 0.0].into(), [0.5, h].into()];
        let (_, r) = min_enclosing_ball(&pts).unwrap();
        assert!(close(r, 1.0 / libm::sqrt(3.0), 1e-12));
    }

    #[test]
    fn meb_of_obtuse_triangle_uses_long_side() {
        let pts = [[0.0, 0.0].into(), [4.0, 0.0].into(), [1.0, 1.0].into()];
        let (c, r) = min_enclosing_ball(&pts).unwrap();
        assert!(close(r, 2.0, 1e-12));
        assert!(close(c.coords()[0], 2.0, 1e-12) && close(c.coords()[1], 0.0, 1e-12));
    }

    #[test]
    fn meb_handles_duplicates_and_collinear_points() {
        let pts = [
            [1.0, 1.0].into(),
            [1.0, 1.0].into(),
            [2.0, 2.0].into(),
            [3.0, 3.0].into(),
        ];
        let (c, r) = min_enclosing_ball(&pts).unwrap();
        assert!(close(r, libm::sqrt(2.0), 1e-12));
        assert!(close(c.coords()[0], 2.0, 1e-12));
    }

    #[test]
    fn meb_rejects_empty_input() {
        assert!(matches!(
            min_enclosing_ball(&[]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn meb_many_points_in_3d() {
        // Vertices of a cube: the enclosing ball is the circumsphere.
        let mut pts = vec![];
        for x in [0.0, 1.0] {
            for y in [0.0, 1.0] {
                for z in [0.0, 1.0] {
                    pts.push(Point::from([x, y, z]));
                }
            }
        }
        pts.push([0.5, 0.5, 0.5].into());
        let (_, r) = min_enclosing_ball(&pts).unwrap();
        assert!(close(r, libm::sqrt(3.0) / 2.0, 1e-12));
    }

    fn equilateral(side: f64) -> [Point; 3] {
        [
            [0.0, 0.0].into(),
            [side, 0.0].into(),
            [side / 2.0, side * libm::sqrt(3.0) / 2.0].into(),
        ]
    }

    #[test]
    fn nerve_test_on_equilateral_triangles() {
        let s = Space::euclidean(2).unwrap();
        assert!(common_intersection_nonempty(&s, &equilateral(1.7), 1.0).unwrap());
        assert!(!common_intersection_nonempty(&s, &equilateral(1.8), 1.0).unwrap());
    }

    #[test]
    fn tangent_balls_intersect() {
        let s = Space::euclidean(2).unwrap();
        let c = [[0.0, 0.0].into(), [2.0, 0.0].into()];
        assert!(common_intersection_nonempty(&s, &c, 1.0).unwrap());
    }

    #[test]
    fn torus_nerve_test_unwraps_across_the_seam() {
        let s = Space::flat_torus(2, 10.0).unwrap();
        // Same triangle as above, straddling the x = 0 seam.
        let tri = equilateral(1.7).map(|p| {
            let c = p.coords();
            Point::from([modulo(c[0] - 0.85, 10.0), c[1]])
        });
        assert!(common_intersection_nonempty(&s, &tri, 1.0).unwrap());
        let tri = equilateral(1.8).map(|p| {
            let c = p.coords();
            Point::from([modulo(c[0] - 0.9, 10.0), c[1]])
        });
        assert!(!common_intersection_nonempty(&s, &tri, 1.0).unwrap());
    }

    fn on_sphere(theta: f64, phi: f64) -> Point {
        [
            libm::sin(theta) * libm::cos(phi),
            libm::sin(theta) * libm::sin(phi),
            libm::cos(theta),
        ]
        .into()
    }

    #[test]
    fn sphere_pair_meets_iff_within_twice_alpha() {
        let s = Space::sphere2();
        let alpha = 0.1;
        let a = on_sphere(0.0, 0.0);
        let near = on_sphere(2.0 * alpha - 1e-6, 0.0);
        let far = on_sphere(2.0 * alpha + 1e-6, 0.0);
        assert!(common_intersection_nonempty(&s, &[a, near], alpha).unwrap());
        assert!(!common_intersection_nonempty(&s, &[a, far], alpha).unwrap());
    }

    #[test]
    fn sphere_triangle_around_pole() {
        let s = Space::sphere2();
        // Three points at polar angle t around the north pole: the smallest
        // cap is centered at the pole with geodesic radius t.
        let t = 0.05;
        let pts = [
            on_sphere(t, 0.0),
            on_sphere(t, 2.0 * PI / 3.0),
            on_sphere(t, 4.0 * PI / 3.0),
        ];
        assert!(common_intersection_nonempty(&s, &pts, t + 1e-9).unwrap());
        assert!(!common_intersection_nonempty(&s, &pts, t - 1e-9).unwrap());
    }

    #[test]
    fn sphere_antipodal_configuration_is_degenerate() {
        let s = Space::sphere2();
        let pts = [on_sphere(0.0, 0.0), on_sphere(PI, 0.0)];
        assert!(matches!(
            common_intersection_nonempty(&s, &pts, 2.0),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn sphere_point_validation() {
        let s = Space::sphere2();
        assert!(s.validate_point(&[0.0, 0.0, 1.0].into()).is_ok());
        assert!(s.validate_point(&[0.0, 0.0, 1.1].into()).is_err());
        assert!(s.validate_point(&[0.0, 1.0].into()).is_err());
    }
}
