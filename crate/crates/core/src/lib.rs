//! Poisson-Voronoi maps in finite windows, low-degree peeling of their
//! Delaunay triangulations, and the colorings built on top of them.
//!
//! The crate is organised bottom-up:
//!
//! * [`geometry`]: seeded Poisson sampling, robust Delaunay triangulation,
//!   clipped Voronoi cells and outer-face extraction.
//! * [`peeling`]: synchronous deletion of low-degree vertices and the level
//!   function it induces.
//! * [`chromatics`]: the deterministic 6-coloring, the randomized
//!   symbol/component coloring, the 1-D 3-coloring and a properness verifier.
//! * [`planar`]: exact combinatorial identities on embedded planar maps.
//! * [`percolation`]: sealed squares, long edges, rare squares, the Ω events
//!   and dependent site processes, plus Monte-Carlo drivers.
//! * [`render`] and [`io`]: SVG figures and the exchange formats.

pub mod chromatics;
mod error;
pub mod fixtures;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod peeling;
pub mod percolation;
pub mod planar;
pub mod render;
pub mod rng;

pub use error::{Error, Result};
pub use geometry::{Point, PointSet, Triangulation, VoronoiCell, Window};
pub use graph::Graph;
