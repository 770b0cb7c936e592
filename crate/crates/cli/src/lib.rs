//! Sampling, Monte Carlo sweeps, file formats and the command line around
//! `chroma-mst-core`.

pub mod analytic;
pub mod config;
pub mod fit;
pub mod formats;
pub mod plot;
pub mod sampling;
pub mod sweep;
pub mod trial;
