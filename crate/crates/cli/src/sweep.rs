//! Monte Carlo sweeps over `n`: parallel trials, per-n aggregation, fits and
//! output files.

use crate::config::ExperimentConfig;
use crate::fit::{fit_samples, FitResult, PerN};
use crate::formats::{write_results, FormatError};
use crate::plot::{render, Series};
use crate::trial::{run_trial, TrialError, TrialRecord};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

/// Fit of one quantity; the coefficients are absent when fewer than two
/// distinct `n` were run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantityFit {
    pub a1: Option<f64>,
    pub a0: Option<f64>,
    pub residual: Option<f64>,
    pub per_n: Vec<PerN>,
}

impl From<FitResult> for QuantityFit {
    fn from(f: FitResult) -> Self {
        QuantityFit {
            a1: Some(f.a1),
            a0: Some(f.a0),
            residual: Some(f.residual),
            per_n: f.per_n,
        }
    }
}

/// topology → quantity → fit.
pub type Summary = BTreeMap<&'static str, BTreeMap<&'static str, QuantityFit>>;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    /// In (n, trial, topology) order, topologies as listed in the config.
    pub records: Vec<TrialRecord>,
    pub summary: Summary,
}

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error(transparent)]
    Trial(#[from] TrialError),
    #[error("writing {path}: {source}")]
    Write { path: PathBuf, source: FormatError },
}

pub const QUANTITIES: [&str; 13] = [
    "emst_length",
    "lunar_cost",
    "dom0",
    "dom1",
    "cod0",
    "cod1",
    "rel1",
    "rel2",
    "ker0",
    "ker1",
    "im0",
    "im1",
    "cok1",
];

fn quantities(r: &TrialRecord) -> [f64; 13] {
    let mut q = [0.0; 13];
    q[0] = r.emst_length;
    q[1] = r.lunar_cost;
    for (slot, (_, v)) in q[2..].iter_mut().zip(r.norms.named()) {
        *slot = v;
    }
    q
}

pub fn run_sweep(config: &ExperimentConfig) -> Result<SweepOutput, TrialError> {
    let jobs: Vec<(usize, usize)> = config
        .n_values
        .iter()
        .flat_map(|&n| (0..config.trials).map(move |t| (n, t)))
        .collect();
    // collect keeps job order whatever order the trials finish in
    let results: Vec<Result<Vec<TrialRecord>, TrialError>> = jobs
        .par_iter()
        .map(|&(n, t)| {
            config
                .topologies
                .iter()
                .map(|&topo| run_trial(config, topo, n, t))
                .collect()
        })
        .collect();
    let mut records = Vec::with_capacity(jobs.len() * config.topologies.len());
    for r in results {
        records.extend(r?);
    }
    let summary = summarize(config, &records);
    Ok(SweepOutput { records, summary })
}

pub fn summarize(config: &ExperimentConfig, records: &[TrialRecord]) -> Summary {
    let mut summary = Summary::new();
    let mut topologies = config.topologies.clone();
    topologies.sort();
    topologies.dedup();
    for topo in topologies {
        let mut fits = BTreeMap::new();
        for (qi, &name) in QUANTITIES.iter().enumerate() {
            let groups: Vec<(usize, Vec<f64>)> = config
                .n_values
                .iter()
                .map(|&n| {
                    let xs = records
                        .iter()
                        .filter(|r| r.topology == topo && r.n == n)
                        .map(|r| quantities(r)[qi])
                        .collect();
                    (n, xs)
                })
                .collect();
            let fit = match fit_samples(&groups) {
                Ok(f) => f.into(),
                Err(_) => QuantityFit {
                    a1: None,
                    a0: None,
                    residual: None,
                    per_n: groups
                        .iter()
                        .map(|(n, xs)| {
                            let (mean, std) = crate::fit::mean_std(xs);
                            PerN { n: *n, mean, std }
                        })
                        .collect(),
                },
            };
            fits.insert(name, fit);
        }
        summary.insert(topo.as_str(), fits);
    }
    summary
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), SweepError> {
    fs::write(path, bytes).map_err(|e| SweepError::Write {
        path: path.to_path_buf(),
        source: e.into(),
    })
}

/// Writes `results.csv`, `summary.json` and, if asked, one SVG per
/// topology for the spanning tree costs and one for the norms.
pub fn write_outputs(config: &ExperimentConfig, out: &SweepOutput) -> Result<Vec<PathBuf>, SweepError> {
    let dir = &config.out_dir;
    fs::create_dir_all(dir).map_err(|e| SweepError::Write {
        path: dir.clone(),
        source: e.into(),
    })?;
    let mut written = Vec::new();

    let path = dir.join("results.csv");
    let mut buf = Vec::new();
    write_results(&mut buf, &out.records).map_err(|source| SweepError::Write {
        path: path.clone(),
        source,
    })?;
    write_file(&path, &buf)?;
    written.push(path);

    let path = dir.join("summary.json");
    let mut json = serde_json::to_string_pretty(&out.summary).expect("summary serializes");
    json.push('\n');
    write_file(&path, json.as_bytes())?;
    written.push(path);

    if config.plots {
        for (topo, fits) in &out.summary {
            if fits.values().any(|f| f.a1.is_none()) {
                continue;
            }
            let fit = |q: &str| {
                let f = &fits[q];
                FitResult {
                    a1: f.a1.unwrap_or(0.0),
                    a0: f.a0.unwrap_or(0.0),
                    residual: f.residual.unwrap_or(0.0),
                    per_n: f.per_n.clone(),
                }
            };
            let trees = [fit("emst_length"), fit("lunar_cost")];
            let labels = ["emst_length", "lunar_cost"];
            let series: Vec<Series> = labels.iter().zip(&trees).map(|(l, f)| Series { label: l, fit: f }).collect();
            let path = dir.join(format!("{topo}_trees.svg"));
            write_file(&path, render(&format!("spanning tree costs, {topo}"), &series).as_bytes())?;
            written.push(path);

            let norms: Vec<FitResult> = QUANTITIES[2..].iter().map(|q| fit(q)).collect();
            let series: Vec<Series> = QUANTITIES[2..]
                .iter()
                .zip(&norms)
                .map(|(l, f)| Series { label: l, fit: f })
                .collect();
            let path = dir.join(format!("{topo}_norms.svg"));
            write_file(&path, render(&format!("1-norms, {topo}"), &series).as_bytes())?;
            written.push(path);
        }
    }
    Ok(written)
}
