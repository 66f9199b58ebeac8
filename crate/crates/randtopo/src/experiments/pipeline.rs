//! Per-instance analysis: graph, components, signatures.

use randtopo_core::complex::{build_cech, Component, NeighborGraph};
use randtopo_core::homology::{betti, signature, BettiVector, Signature};
use randtopo_core::measure::component_contained;
use randtopo_core::{Ball, Point, Space};

use crate::Result;

pub struct Instance {
    pub graph: NeighborGraph,
    pub components: Vec<Component>,
}

impl Instance {
    pub fn build(space: &Space, points: &[Point], alpha: f64) -> Result<Self> {
        let graph = NeighborGraph::build(space, points, alpha)?;
        let components = graph.components();
        Ok(Self { graph, components })
    }

    pub fn largest_component(&self) -> usize {
        self.components
            .iter()
            .map(Component::len)
            .max()
            .unwrap_or(0)
    }
}

/// Betti numbers `b_0..b_d` and signature of one component; oversize
/// components get no Betti numbers.
pub fn classify(
    space: &Space,
    instance: &Instance,
    component: &Component,
    points: &[Point],
    alpha: f64,
) -> Result<(Signature, Option<BettiVector>)> {
    if component.is_oversize() {
        return Ok((Signature::Oversize, None));
    }
    let d = space.dim();
    let cech = build_cech(space, &instance.graph, component, points, alpha, d + 1)?;
    let b = betti(&cech, d)?;
    Ok((signature(&b, d)?, Some(b)))
}

/// Contained in the open ball `B(0, radius)` of a Euclidean window.
pub fn contained_in_window(
    space: &Space,
    component: &Component,
    points: &[Point],
    radius: f64,
    alpha: f64,
) -> bool {
    let Ok(ball) = Ball::new(Point::origin(space.dim()), radius) else {
        return false;
    };
    component_contained(space, component, points, &ball, alpha)
}
