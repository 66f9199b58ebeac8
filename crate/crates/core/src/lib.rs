//! Core kernels for random geometric complexes in the thermodynamic regime.
//!
//! Everything here is allocation-only and IO-free: geometric predicates on
//! Euclidean windows, flat tori and the round 2-sphere, reproducible point
//! sampling, neighbor graphs and Čech nerves, Betti numbers over GF(2), and
//! the component counting / empirical-measure machinery built on top.
//!
//! The crate is `no_std` unless the `std` feature is enabled.

#![cfg_attr(not(feature = "std"), no_std)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod complex;
mod error;
pub mod geometry;
pub mod homology;
pub mod measure;
pub mod sampling;

pub use complex::{build_cech, build_components, CechComplex, Component, NeighborGraph};
pub use error::{Error, Result};
pub use geometry::{
    ball_volume, common_intersection_nonempty, min_enclosing_ball, Ball, Point, Space, SpaceKind,
};
pub use homology::{betti, boundary_rank, signature, BettiVector, Signature};
pub use measure::{
    component_contained, component_intersects, count_components, tv_distance, CountReport,
    EmpiricalMeasure,
};
pub use sampling::{
    rescale_chart, sample_poisson, sample_uniform_manifold, uniform_in_ball, TrialRng, TrialSeed,
};
