//! Brute-force reference implementations shared by the integration and
//! acceptance tests. None of these call into the code paths they check.

#![allow(dead_code, clippy::needless_range_loop)]

use rand::Rng;
use randtopo_core::{CechComplex, Point, Space};

/// Smallest enclosing ball by enumerating every subset of at most `d + 1`
/// points, solving for its circumcenter in the affine hull, and keeping the
/// smallest ball that covers all points. Returns `(center, radius)`.
pub fn brute_meb(points: &[Vec<f64>]) -> (Vec<f64>, f64) {
    let n = points.len();
    let d = points[0].len();
    let mut best: Option<(Vec<f64>, f64)> = None;
    for mask in 1u32..(1 << n) {
        let subset: Vec<&Vec<f64>> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| &points[i])
            .collect();
        if subset.len() > d + 1 {
            continue;
        }
        let Some(center) = affine_circumcenter(&subset) else {
            continue;
        };
        let r = subset
            .iter()
            .map(|p| euclid(p, &center))
            .fold(0.0f64, f64::max);
        let covers = points
            .iter()
            .all(|p| euclid(p, &center) <= r * (1.0 + 1e-9) + 1e-12);
        if covers && best.as_ref().is_none_or(|(_, br)| r < *br) {
            best = Some((center, r));
        }
    }
    best.expect("some subset always covers")
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Circumcenter of affinely independent points within their affine hull,
/// via Cramer-free normal equations solved by Gauss-Jordan.
fn affine_circumcenter(pts: &[&Vec<f64>]) -> Option<Vec<f64>> {
    let p0 = pts[0];
    let m = pts.len() - 1;
    if m == 0 {
        return Some(p0.clone());
    }
    let v: Vec<Vec<f64>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect())
        .collect();
    let dotv = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let mut a: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            let mut row: Vec<f64> = (0..m).map(|j| 2.0 * dotv(&v[i], &v[j])).collect();
            row.push(dotv(&v[i], &v[i]));
            row
        })
        .collect();
    for col in 0..m {
        let piv = (col..m).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-10 {
            return None;
        }
        a.swap(col, piv);
        let pv = a[col][col];
        for k in 0..=m {
            a[col][k] /= pv;
        }
        for row in 0..m {
            if row != col {
                let f = a[row][col];
                for k in 0..=m {
                    a[row][k] -= f * a[col][k];
                }
            }
        }
    }
    let mut c = p0.clone();
    for i in 0..m {
        for (ck, vk) in c.iter_mut().zip(&v[i]) {
            *ck += a[i][m] * vk;
        }
    }
    Some(c)
}

/// Grid search for a common point of closed planar disks of radius `alpha`.
///
/// Scans x in steps of `step` across the intersection of the disks' x-ranges
/// and intersects the exact y-chords of every disk at each x.
pub fn grid_common_point_2d(centers: &[[f64; 2]], alpha: f64, step: f64) -> bool {
    let lo = centers
        .iter()
        .map(|c| c[0] - alpha)
        .fold(f64::MIN, f64::max);
    let hi = centers
        .iter()
        .map(|c| c[0] + alpha)
        .fold(f64::MAX, f64::min);
    if lo > hi {
        return false;
    }
    let steps = ((hi - lo) / step).ceil() as usize;
    (0..=steps).any(|i| {
        let x = (lo + i as f64 * step).min(hi);
        let mut ylo = f64::MIN;
        let mut yhi = f64::MAX;
        for c in centers {
            let h2 = alpha * alpha - (x - c[0]) * (x - c[0]);
            if h2 < 0.0 {
                return false;
            }
            let h = h2.sqrt();
            ylo = ylo.max(c[1] - h);
            yhi = yhi.min(c[1] + h);
        }
        ylo <= yhi
    })
}

/// Adjacency lists from all `n^2` pairs.
pub fn brute_force_graph(space: &Space, points: &[Point], alpha: f64) -> Vec<Vec<u32>> {
    let n = points.len();
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            if i != j && space.distance(&points[i], &points[j]).unwrap() <= 2.0 * alpha {
                adj[i].push(j as u32);
            }
        }
    }
    adj
}

/// Every clique of the graph with at most `k_max + 1` vertices.
pub fn clique_complex(adj: &[Vec<u32>], vertices: &[u32], k_max: usize) -> Vec<Vec<Vec<u32>>> {
    let mut levels: Vec<Vec<Vec<u32>>> = vec![vertices.iter().map(|&v| vec![v]).collect()];
    for k in 1..=k_max {
        let mut next = Vec::new();
        for s in &levels[k - 1] {
            for &w in vertices.iter().filter(|&&w| w > *s.last().unwrap()) {
                if s.iter().all(|&u| adj[u as usize].contains(&w)) {
                    let mut t = s.clone();
                    t.push(w);
                    next.push(t);
                }
            }
        }
        levels.push(next);
    }
    levels
}

/// Rank over GF(2) of a dense 0/1 matrix given as rows of bit words.
fn gf2_rank(mut rows: Vec<Vec<u64>>, ncols: usize) -> usize {
    let mut rank = 0;
    for col in 0..ncols {
        let (w, b) = (col / 64, col % 64);
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] >> b & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for r in 0..rows.len() {
            if r != rank && rows[r][w] >> b & 1 == 1 {
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Dense boundary matrix rank, built from explicit facet lookup by linear
/// scan.
pub fn dense_boundary_rank(complex: &CechComplex, k: usize) -> usize {
    if k == 0 {
        return 0;
    }
    let lower: Vec<Vec<u32>> = complex.simplices(k - 1).map(|s| s.to_vec()).collect();
    let upper: Vec<Vec<u32>> = complex.simplices(k).map(|s| s.to_vec()).collect();
    if lower.is_empty() || upper.is_empty() {
        return 0;
    }
    let words = upper.len().div_ceil(64);
    let mut rows = vec![vec![0u64; words]; lower.len()];
    for (j, s) in upper.iter().enumerate() {
        for skip in 0..s.len() {
            let facet: Vec<u32> = s
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, v)| *v)
                .collect();
            let i = lower.iter().position(|f| *f == facet).expect("closed");
            rows[i][j / 64] ^= 1 << (j % 64);
        }
    }
    gf2_rank(rows, upper.len())
}

pub fn dense_betti(complex: &CechComplex, up_to: usize) -> Vec<usize> {
    (0..=up_to)
        .map(|k| {
            complex.count(k) - dense_boundary_rank(complex, k) - dense_boundary_rank(complex, k + 1)
        })
        .collect()
}

/// A random simplicial complex on at most `max_vertices` vertices: the
/// downward closure of a handful of random simplices of dimension <= 3.
pub fn random_complex<R: Rng>(rng: &mut R, max_vertices: u32, k_max: usize) -> CechComplex {
    let n = rng.random_range(1..=max_vertices);
    let facets = rng.random_range(1..=12);
    let mut simplices: Vec<Vec<u32>> = (0..n).map(|v| vec![v]).collect();
    for _ in 0..facets {
        let size = rng.random_range(1..=4usize.min(n as usize));
        let mut s: Vec<u32> = Vec::new();
        while s.len() < size {
            let v = rng.random_range(0..n);
            if !s.contains(&v) {
                s.push(v);
            }
        }
        simplices.push(s);
    }
    CechComplex::from_simplices(k_max, &simplices).unwrap()
}
