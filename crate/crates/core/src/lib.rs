//! Radius functions on planar Delaunay mosaics, chromatic persistence 1-norms
//! of randomly 2-colored point sets, lunar minimum spanning trees, and the
//! closed-form moments of Poisson–Delaunay critical cells.
//!
//! The crate is `no_std` and only needs an allocator. Sampling, file formats
//! and the command line live in the `chroma-mst` companion crate.
//!
//! Pipeline for a single 2-colored point set:
//!
//! 1. [`delaunay::triangulate`] builds the mosaic (unit square or flat torus).
//! 2. [`filtration::radius_values`] attaches the radius function and marks
//!    critical edges (Gabriel) and critical triangles (acute).
//! 3. [`persistence`] extracts the EMST, the degree-0/1 diagrams and norms.
//! 4. [`lunar::lunar_emst`] sweeps the union of lunes of the bichromatic pairs.
//! 5. [`sixpack::derive_norms`] completes the eleven 1-norms from the exact
//!    sequence relations.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analytics;
pub mod delaunay;
mod exact;
pub mod filtration;
pub mod geom;
pub mod grid;
pub mod lunar;
pub(crate) mod math;
pub mod persistence;
pub mod sixpack;
mod unionfind;

pub use delaunay::{triangulate, Mosaic};
pub use filtration::{radius_values, FilteredMosaic};
pub use geom::{Circle, Point2, Sign, Topology};
pub use lunar::{lunar_emst, LunarMode, LunarTree};
pub use persistence::{Diagram, SpanningTree};
pub use sixpack::SixPackNorms;
