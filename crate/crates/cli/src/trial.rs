//! One Monte Carlo trial: sample, color, triangulate, persist, sweep lunes
//! and complete the six-pack.

use crate::config::{ExperimentConfig, Sampler, TopologyName};
use crate::sampling::{coloring_from, poisson_from, rng, trial_seed, uniform_from};
use chroma_mst_core::delaunay::DelaunayError;
use chroma_mst_core::filtration::{moment_counters, Region};
use chroma_mst_core::lunar::{lunar_emst, relative1_norm, LunarError};
use chroma_mst_core::persistence::{emst, h0_diagram, h1_diagram};
use chroma_mst_core::sixpack::{derive_norms_with, SixPackError, SixPackNorms};
use chroma_mst_core::{radius_values, triangulate, FilteredMosaic, Point2, Topology};
use serde::Serialize;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Moments {
    pub r0: f64,
    pub n1: f64,
    pub f1: f64,
    pub s1: f64,
    pub n2: f64,
    pub f2: f64,
    pub s2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub n: usize,
    pub trial: usize,
    pub seed: u64,
    pub topology: TopologyName,
    pub points: usize,
    pub emst_length: f64,
    pub lunar_cost: f64,
    pub norms: Norms,
    /// Derived norms that came out below the slack, kept under the warn
    /// policy.
    pub negatives: Vec<(String, f64)>,
    pub moments: Vec<Moments>,
    pub wall_ms: u64,
}

/// Serializable copy of the eleven norms.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Norms {
    pub dom0: f64,
    pub dom1: f64,
    pub cod0: f64,
    pub cod1: f64,
    pub rel1: f64,
    pub rel2: f64,
    pub ker0: f64,
    pub ker1: f64,
    pub im0: f64,
    pub im1: f64,
    pub cok1: f64,
}

impl From<SixPackNorms> for Norms {
    fn from(s: SixPackNorms) -> Self {
        Norms {
            dom0: s.dom0,
            dom1: s.dom1,
            cod0: s.cod0,
            cod1: s.cod1,
            rel1: s.rel1,
            rel2: s.rel2,
            ker0: s.ker0,
            ker1: s.ker1,
            im0: s.im0,
            im1: s.im1,
            cok1: s.cok1,
        }
    }
}

impl Norms {
    pub fn named(&self) -> [(&'static str, f64); 11] {
        [
            ("dom0", self.dom0),
            ("dom1", self.dom1),
            ("cod0", self.cod0),
            ("cod1", self.cod1),
            ("rel1", self.rel1),
            ("rel2", self.rel2),
            ("ker0", self.ker0),
            ("ker1", self.ker1),
            ("im0", self.im0),
            ("im1", self.im1),
            ("cok1", self.cok1),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StageError {
    #[error("triangulation of {what}: {source}")]
    Delaunay { what: &'static str, source: DelaunayError },
    #[error("lunar sweep: {0}")]
    Lunar(#[from] LunarError),
    #[error("six-pack: {0}")]
    SixPack(#[from] SixPackError),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("trial {trial} at n = {n} on the {topology} (seed {seed}): {source}")]
pub struct TrialError {
    pub n: usize,
    pub trial: usize,
    pub seed: u64,
    pub topology: &'static str,
    pub source: StageError,
}

/// Degree-0 and degree-1 norms of one point set and its EMST length.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PointSetNorms {
    pub h0: f64,
    pub h1: f64,
    pub emst_length: f64,
}

/// Norms of a point set too small or too flat for a mosaic: the EMST is a
/// path along the sorted points and there are no cycles.
fn path_norms(points: &[Point2], topology: Topology) -> PointSetNorms {
    let mut sorted = points.to_vec();
    sorted.sort_by(|p, q| p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y)));
    let len: f64 = sorted.windows(2).map(|w| topology.distance(w[0], w[1])).sum();
    PointSetNorms {
        h0: len / 2.0,
        h1: 0.0,
        emst_length: len,
    }
}

pub fn filtered(points: &[Point2], topology: Topology, what: &'static str) -> Result<FilteredMosaic, StageError> {
    triangulate(points, topology)
        .map(radius_values)
        .map_err(|source| StageError::Delaunay { what, source })
}

pub fn point_set_norms(points: &[Point2], topology: Topology, what: &'static str) -> Result<PointSetNorms, StageError> {
    match triangulate(points, topology) {
        Ok(m) => {
            let fm = radius_values(m);
            Ok(PointSetNorms {
                h0: h0_diagram(&fm).one_norm(),
                h1: h1_diagram(&fm).one_norm(),
                emst_length: emst(&fm).total_length,
            })
        }
        Err(DelaunayError::TooFewPoints(_)) => Ok(path_norms(points, topology)),
        Err(DelaunayError::Collinear) if topology == Topology::UnitSquare => Ok(path_norms(points, topology)),
        Err(source) => Err(StageError::Delaunay { what, source }),
    }
}

/// Sample of trial `trial` at size `n`; both topologies see the same one.
pub fn trial_sample(config: &ExperimentConfig, n: usize, trial: usize) -> (u64, Vec<Point2>, (Vec<Point2>, Vec<Point2>)) {
    let seed = trial_seed(config.seed, n as u64, trial as u64);
    let mut r = rng(seed);
    let points = match config.sampler {
        Sampler::Uniform => uniform_from(&mut r, n),
        Sampler::Poisson => poisson_from(&mut r, n as f64),
    };
    let split = coloring_from(&mut r, &points, config.color_probability);
    (seed, points, split)
}

pub fn run_trial(config: &ExperimentConfig, topology: TopologyName, n: usize, trial: usize) -> Result<TrialRecord, TrialError> {
    let start = Instant::now();
    let (seed, points, (a0, a1)) = trial_sample(config, n, trial);
    let wrap = |source| TrialError {
        n,
        trial,
        seed,
        topology: topology.as_str(),
        source,
    };
    let mut record = evaluate(config, topology, &points, &a0, &a1).map_err(wrap)?;
    record.n = n;
    record.trial = trial;
    record.seed = seed;
    if config.timing {
        record.wall_ms = start.elapsed().as_millis() as u64;
    }
    Ok(record)
}

/// The pipeline on a given colored sample. `n`, `trial` and `seed` of the
/// result are left at zero.
pub fn evaluate(
    config: &ExperimentConfig,
    topology: TopologyName,
    points: &[Point2],
    a0: &[Point2],
    a1: &[Point2],
) -> Result<TrialRecord, StageError> {
    let topo = topology.topology();
    let fm = filtered(points, topo, "the full sample")?;
    let tree = emst(&fm);
    let cod0 = h0_diagram(&fm).one_norm();
    let cod1 = h1_diagram(&fm).one_norm();
    let c0 = point_set_norms(a0, topo, "color 0")?;
    let c1 = point_set_norms(a1, topo, "color 1")?;
    let lunar = lunar_emst(a0, a1, topo, config.lunar_mode.mode())?;
    let rel1 = relative1_norm(&lunar);
    let (norms, bad) = derive_norms_with(
        c0.h0 + c1.h0,
        c0.h1 + c1.h1,
        cod0,
        cod1,
        rel1,
        config.negative_policy.policy(),
    )?;
    let moments = config
        .moment_r0
        .iter()
        .map(|&r0| {
            let m = moment_counters(&fm, r0, Region::UNIT);
            Moments {
                r0,
                n1: m.n1,
                f1: m.f1,
                s1: m.s1,
                n2: m.n2,
                f2: m.f2,
                s2: m.s2,
            }
        })
        .collect();
    Ok(TrialRecord {
        n: 0,
        trial: 0,
        seed: 0,
        topology,
        points: points.len(),
        emst_length: tree.total_length,
        lunar_cost: lunar.cost,
        norms: norms.into(),
        negatives: bad.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        moments,
        wall_ms: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> ExperimentConfig {
        ExperimentConfig {
            n_values: vec![200],
            trials: 2,
            moment_r0: vec![0.0, f64::INFINITY],
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn record_identities() {
        let c = small();
        for topo in [TopologyName::Square, TopologyName::Torus] {
            let r = run_trial(&c, topo, 200, 0).unwrap();
            assert!((r.norms.cod0 - 0.5 * r.emst_length).abs() < 1e-9);
            assert!((r.norms.rel1 - 0.5 * r.lunar_cost).abs() < 1e-12);
            assert_eq!(r.wall_ms, 0);
            assert_eq!(r.moments[0].n1, 0.0);
            assert!(r.moments[1].n1 > 0.0);
        }
    }

    #[test]
    fn reproducible_and_paired() {
        let c = small();
        let a = run_trial(&c, TopologyName::Square, 200, 1).unwrap();
        let b = run_trial(&c, TopologyName::Square, 200, 1).unwrap();
        assert_eq!(a, b);
        let t = run_trial(&c, TopologyName::Torus, 200, 1).unwrap();
        assert_eq!(a.seed, t.seed);
        assert!(t.emst_length <= a.emst_length + 1e-12);
        assert_ne!(a.seed, run_trial(&c, TopologyName::Square, 200, 0).unwrap().seed);
    }

    #[test]
    fn empty_color_is_an_error() {
        // with 1 point one class is always empty
        let c = small();
        let e = run_trial(&c, TopologyName::Square, 1, 0).unwrap_err();
        assert!(matches!(e.source, StageError::Delaunay { .. } | StageError::Lunar(LunarError::EmptyColor(_))));
        assert!(e.to_string().contains("n = 1"));
    }

    #[test]
    fn tiny_classes_use_paths() {
        let p = [Point2::new(0.1, 0.1), Point2::new(0.4, 0.1), Point2::new(0.2, 0.1)];
        let s = point_set_norms(&p, Topology::UnitSquare, "x").unwrap();
        assert!((s.emst_length - 0.3).abs() < 1e-15);
        assert_eq!(s.h1, 0.0);
        let s = point_set_norms(&p[..1], Topology::Torus, "x").unwrap();
        assert_eq!(s, PointSetNorms::default());
    }
}
