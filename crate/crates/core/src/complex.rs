//! Neighbor graphs, connected components and Čech nerves.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{invalid, Error, Result};
use crate::geometry::{modulo, nerve_test_raw, wrap, Point, Raw, Space, SpaceKind, REL_TOL};

/// Components with more points than this are not expanded into a nerve.
pub const OVERSIZE_LIMIT: usize = 5000;

/// Slack on grid cells so that pairs accepted under [`REL_TOL`] always sit in
/// adjacent cells.
const CELL_SLACK: f64 = 1e-9;

/// Adjacency lists of the "balls meet" relation: `i ~ j` iff
/// `distance(p_i, p_j) <= 2 alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborGraph {
    adj: Vec<Vec<u32>>,
}

impl NeighborGraph {
    /// Builds the graph with a uniform grid of cell side `2 alpha`.
    pub fn build(space: &Space, points: &[Point], alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        for p in points {
            space.validate_point(p)?;
        }
        if points.len() > u32::MAX as usize {
            return Err(invalid("too many points"));
        }
        let raw: Vec<Raw> = points.iter().map(|p| p.raw()).collect();
        let accept = |i: usize, j: usize| space.balls_meet(&raw[i], &raw[j], alpha);
        let adj = match space.kind() {
            SpaceKind::Euclidean => {
                let cell = 2.0 * alpha * (1.0 + CELL_SLACK);
                grid_adjacency(&raw, space.dim(), cell, None, accept)
            }
            SpaceKind::FlatTorus { side } => {
                let cells = libm::floor(side / (2.0 * alpha * (1.0 + CELL_SLACK)));
                if cells >= 3.0 {
                    let m = cells as i64;
                    grid_adjacency(&raw, space.dim(), side / cells, Some((side, m)), accept)
                } else {
                    all_pairs_adjacency(raw.len(), accept)
                }
            }
            SpaceKind::Sphere2 => {
                if 2.0 * alpha < core::f64::consts::PI {
                    let chord = 2.0 * libm::sin(alpha);
                    grid_adjacency(&raw, 3, chord * (1.0 + CELL_SLACK), None, accept)
                } else {
                    all_pairs_adjacency(raw.len(), accept)
                }
            }
        };
        Ok(Self { adj })
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Sorted neighbor list of vertex `i`.
    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.adj[i]
    }

    pub fn contains_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&(j as u32)).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(|(i, ns)| {
            let i = i as u32;
            ns.iter().filter(move |&&j| j > i).map(move |&j| (i, j))
        })
    }

    /// Connected components, ordered by smallest member.
    pub fn components(&self) -> Vec<Component> {
        let mut uf = UnionFind::new(self.len());
        for (i, j) in self.edges() {
            uf.union(i as usize, j as usize);
        }
        let mut slot = vec![usize::MAX; self.len()];
        let mut out: Vec<Component> = Vec::new();
        for i in 0..self.len() {
            let root = uf.find(i);
            if slot[root] == usize::MAX {
                slot[root] = out.len();
                out.push(Component {
                    indices: Vec::new(),
                });
            }
            out[slot[root]].indices.push(i as u32);
        }
        out
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("alpha must be positive, got {alpha}")))
    }
}

fn all_pairs_adjacency(n: usize, accept: impl Fn(usize, usize) -> bool) -> Vec<Vec<u32>> {
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if accept(i, j) {
                adj[i].push(j as u32);
                adj[j].push(i as u32);
            }
        }
    }
    adj
}

/// Candidate pairs come from the 3^d neighborhood of each cell. `periodic`
/// carries `(side, cells_per_axis)` with at least three cells per axis.
fn grid_adjacency(
    raw: &[Raw],
    dim: usize,
    cell: f64,
    periodic: Option<(f64, i64)>,
    accept: impl Fn(usize, usize) -> bool,
) -> Vec<Vec<u32>> {
    let n = raw.len();
    let mut adj = vec![Vec::new(); n];
    if n == 0 {
        return adj;
    }
    let mut lo = [0.0f64; 3];
    if periodic.is_none() {
        for k in 0..dim {
            lo[k] = raw.iter().map(|p| p[k]).fold(f64::INFINITY, f64::min);
        }
    }
    let cells: Vec<[i64; 3]> = raw
        .iter()
        .map(|p| {
            let mut c = [0i64; 3];
            for k in 0..dim {
                c[k] = match periodic {
                    Some((side, m)) => {
                        let x = modulo(p[k], side);
                        (libm::floor(x / side * m as f64) as i64).clamp(0, m - 1)
                    }
                    None => libm::floor((p[k] - lo[k]) / cell) as i64,
                };
            }
            c
        })
        .collect();
    let mut ext = [1i64; 3];
    for k in 0..dim {
        ext[k] = match periodic {
            Some((_, m)) => m,
            None => cells.iter().map(|c| c[k]).max().unwrap() + 1,
        };
    }
    let key = |c: &[i64; 3]| -> u64 { ((c[0] * ext[1] + c[1]) * ext[2] + c[2]) as u64 };
    let mut order: Vec<(u64, u32)> = cells
        .iter()
        .enumerate()
        .map(|(i, c)| (key(c), i as u32))
        .collect();
    order.sort_unstable();

    let span = |k: usize| if k < dim { -1..=1 } else { 0..=0 };
    for i in 0..n {
        let c = cells[i];
        for dx in span(0) {
            for dy in span(1) {
                for dz in span(2) {
                    let mut nc = [c[0] + dx, c[1] + dy, c[2] + dz];
                    let mut valid = true;
                    for k in 0..dim {
                        match periodic {
                            Some((_, m)) => nc[k] = nc[k].rem_euclid(m),
                            None => valid &= (0..ext[k]).contains(&nc[k]),
                        }
                    }
                    if !valid {
                        continue;
                    }
                    let target = key(&nc);
                    let start = order.partition_point(|&(k, _)| k < target);
                    for &(k, j) in &order[start..] {
                        if k != target {
                            break;
                        }
                        let j = j as usize;
                        if j > i && accept(i, j) {
                            adj[i].push(j as u32);
                            adj[j].push(i as u32);
                        }
                    }
                }
            }
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    adj
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            Ordering::Less => self.parent[ra] = rb,
            Ordering::Greater => self.parent[rb] = ra,
            Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// One connected piece of the union of balls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    indices: Vec<u32>,
}

impl Component {
    /// `indices` are sorted and deduplicated.
    pub fn new(mut indices: Vec<u32>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Self { indices }
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn is_oversize(&self) -> bool {
        self.indices.len() > OVERSIZE_LIMIT
    }
}

pub fn build_components(space: &Space, points: &[Point], alpha: f64) -> Result<Vec<Component>> {
    Ok(NeighborGraph::build(space, points, alpha)?.components())
}

/// Simplices of a nerve, stored per dimension as flat vertex tuples in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechComplex {
    k_max: usize,
    levels: Vec<Vec<u32>>,
}

impl CechComplex {
    /// Downward closure of the given simplices, truncated at `k_max`.
    pub fn from_simplices<S: AsRef<[u32]>>(k_max: usize, simplices: &[S]) -> Result<Self> {
        let mut levels: Vec<Vec<Vec<u32>>> = vec![Vec::new(); k_max + 1];
        for s in simplices {
            let mut verts = s.as_ref().to_vec();
            verts.sort_unstable();
            verts.dedup();
            if verts.is_empty() {
                return Err(invalid("empty simplex"));
            }
            let n = verts.len();
            // every nonempty subset of the vertex set, up to k_max + 1 vertices
            if n > 20 {
                return Err(invalid("simplex too large for closure"));
            }
            for mask in 1u32..(1 << n) {
                let size = mask.count_ones() as usize;
                if size > k_max + 1 {
                    continue;
                }
                let face: Vec<u32> = (0..n)
                    .filter(|&i| mask & (1 << i) != 0)
                    .map(|i| verts[i])
                    .collect();
                levels[size - 1].push(face);
            }
        }
        let levels = levels
            .into_iter()
            .enumerate()
            .map(|(k, mut faces)| {
                faces.sort_unstable();
                faces.dedup();
                let mut flat = Vec::with_capacity(faces.len() * (k + 1));
                for f in faces {
                    flat.extend_from_slice(&f);
                }
                flat
            })
            .collect();
        Ok(Self { k_max, levels })
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    /// Number of `k`-simplices (zero above `k_max`).
    pub fn count(&self, k: usize) -> usize {
        self.levels.get(k).map_or(0, |l| l.len() / (k + 1))
    }

    pub fn simplex(&self, k: usize, i: usize) -> &[u32] {
        &self.levels[k][i * (k + 1)..(i + 1) * (k + 1)]
    }

    pub fn simplices(&self, k: usize) -> impl Iterator<Item = &[u32]> {
        self.levels
            .get(k)
            .map(|l| l.chunks_exact(k + 1))
            .into_iter()
            .flatten()
    }

    /// Position of a sorted `k`-simplex, if present.
    pub fn index_of(&self, simplex: &[u32]) -> Option<usize> {
        let k = simplex.len().checked_sub(1)?;
        find_in_level(self.levels.get(k)?, k + 1, simplex)
    }

    /// Highest dimension holding a simplex.
    pub fn top_dim(&self) -> Option<usize> {
        (0..=self.k_max).rev().find(|&k| self.count(k) > 0)
    }

    pub fn vertex_count(&self) -> usize {
        self.count(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.k_max)
            .map(|k| {
                let c = self.count(k) as i64;
                if k % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .sum()
    }

    pub fn is_downward_closed(&self) -> bool {
        let mut facet = Vec::new();
        for k in 1..=self.k_max {
            for s in self.simplices(k) {
                for skip in 0..=k {
                    facet.clear();
                    facet.extend(
                        s.iter()
                            .enumerate()
                            .filter(|&(i, _)| i != skip)
                            .map(|(_, v)| *v),
                    );
                    if self.index_of(&facet).is_none() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn find_in_level(level: &[u32], stride: usize, key: &[u32]) -> Option<usize> {
    let n = level.len() / stride;
    let (mut lo, mut hi) = (0usize, n);
    while lo < hi {
        let mid = (lo + hi) / 2;
        match level[mid * stride..(mid + 1) * stride].cmp(key) {
            Ordering::Less => lo = mid + 1,
            Ordering::Greater => hi = mid,
            Ordering::Equal => return Some(mid),
        }
    }
    None
}

/// The Čech nerve of one component, up to dimension `k_max`.
///
/// Simplices grow one vertex at a time from accepted simplices; a candidate
/// is kept iff it is a clique, all its facets are present and its balls
/// share a point.
pub fn build_cech(
    space: &Space,
    graph: &NeighborGraph,
    component: &Component,
    points: &[Point],
    alpha: f64,
    k_max: usize,
) -> Result<CechComplex> {
    check_alpha(alpha)?;
    if k_max < 1 {
        return Err(invalid("k_max must be at least 1"));
    }
    if graph.len() != points.len() {
        return Err(invalid(format!(
            "graph has {} vertices but {} points were given",
            graph.len(),
            points.len()
        )));
    }
    let verts = component.indices();
    let n = verts.len();
    let local = |g: u32| verts.binary_search(&g).ok();
    let adj: Vec<Vec<u32>> = verts
        .iter()
        .map(|&g| {
            graph
                .neighbors(g as usize)
                .iter()
                .filter_map(|&h| local(h).map(|l| l as u32))
                .collect()
        })
        .collect();
    let coords = chart_coordinates(space, verts, &adj, points, alpha)?;

    let mut levels: Vec<Vec<u32>> = Vec::with_capacity(k_max + 1);
    levels.push((0..n as u32).collect());
    let mut cand = Vec::with_capacity(k_max + 2);
    let mut facet = Vec::with_capacity(k_max + 1);
    let mut buf: Vec<Raw> = Vec::with_capacity(k_max + 2);
    for k in 0..k_max {
        let stride = k + 1;
        let prev = &levels[k];
        let mut next = Vec::new();
        for sigma in prev.chunks_exact(stride) {
            let last = sigma[k] as usize;
            for &w in adj[last].iter().filter(|&&w| w > sigma[k]) {
                if !sigma[..k]
                    .iter()
                    .all(|&u| adj[u as usize].binary_search(&w).is_ok())
                {
                    continue;
                }
                cand.clear();
                cand.extend_from_slice(sigma);
                cand.push(w);
                if k >= 1 {
                    let closed = (0..=k).all(|skip| {
                        facet.clear();
                        facet.extend(
                            cand.iter()
                                .enumerate()
                                .filter(|&(i, _)| i != skip)
                                .map(|(_, v)| *v),
                        );
                        find_in_level(prev, stride, &facet).is_some()
                    });
                    if !closed {
                        continue;
                    }
                }
                buf.clear();
                buf.extend(cand.iter().map(|&v| coords[v as usize]));
                if nerve_test_raw(space, &mut buf, alpha)? {
                    next.extend_from_slice(&cand);
                }
            }
        }
        levels.push(next);
    }
    // local order follows global order, so lexicographic order survives
    for level in &mut levels {
        for v in level.iter_mut() {
            *v = verts[*v as usize];
        }
    }
    Ok(CechComplex { k_max, levels })
}

/// Coordinates of the component's points in one chart. Torus components are
/// unwrapped breadth-first, each point taking the periodic image nearest to
/// its parent.
fn chart_coordinates(
    space: &Space,
    verts: &[u32],
    adj: &[Vec<u32>],
    points: &[Point],
    alpha: f64,
) -> Result<Vec<Raw>> {
    let mut coords: Vec<Raw> = verts.iter().map(|&g| points[g as usize].raw()).collect();
    let SpaceKind::FlatTorus { side } = space.kind() else {
        return Ok(coords);
    };
    let n = verts.len();
    let mut seen = vec![false; n];
    let mut queue = Vec::with_capacity(n);
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        queue.clear();
        queue.push(root);
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            for &w in &adj[v] {
                let w = w as usize;
                if !seen[w] {
                    seen[w] = true;
                    let base = coords[v];
                    for k in 0..space.dim() {
                        coords[w][k] = base[k] + wrap(coords[w][k] - base[k], side);
                    }
                    queue.push(w);
                }
            }
        }
    }
    let limit = 4.0 * alpha * alpha * (1.0 + REL_TOL) * (1.0 + 1e-9);
    for (v, ns) in adj.iter().enumerate() {
        for &w in ns {
            let d = crate::geometry::dist2(&coords[v], &coords[w as usize]);
            if d > limit {
                return Err(Error::Degenerate(format!(
                    "component of {n} points wraps around the torus"
                )));
            }
        }
    }
    Ok(coords)
}
