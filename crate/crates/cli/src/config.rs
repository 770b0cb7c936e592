//! Experiment configuration, read from JSON or assembled from flags.
//!
//! ```json
//! {
//!   "sampler": "uniform",
//!   "topologies": ["square", "torus"],
//!   "n_values": [2000, 3000, 4000, 5000, 6000, 7000],
//!   "trials": 100,
//!   "color_probability": 0.5,
//!   "seed": 1,
//!   "lunar_mode": "pruned",
//!   "out_dir": "results",
//!   "plots": true,
//!   "timing": false,
//!   "moment_r0": [],
//!   "negative_policy": "warn"
//! }
//! ```
//!
//! Every field has a default. With the `poisson` sampler each `n` is the
//! intensity.

use chroma_mst_core::sixpack::NegativePolicy;
use chroma_mst_core::{LunarMode, Topology};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum TopologyName {
    Square,
    Torus,
}

impl TopologyName {
    pub fn topology(self) -> Topology {
        match self {
            TopologyName::Square => Topology::UnitSquare,
            TopologyName::Torus => Topology::Torus,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TopologyName::Square => "square",
            TopologyName::Torus => "torus",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum, Default)]
#[serde(rename_all = "lowercase")]
pub enum Sampler {
    #[default]
    Uniform,
    Poisson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum, Default)]
#[serde(rename_all = "lowercase")]
pub enum LunarModeName {
    Exact,
    #[default]
    Pruned,
}

impl LunarModeName {
    pub fn mode(self) -> LunarMode {
        match self {
            LunarModeName::Exact => LunarMode::Exact,
            LunarModeName::Pruned => LunarMode::Pruned,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum, Default)]
#[serde(rename_all = "lowercase")]
pub enum PolicyName {
    #[default]
    Warn,
    Fail,
}

impl PolicyName {
    pub fn policy(self) -> NegativePolicy {
        match self {
            PolicyName::Warn => NegativePolicy::Warn,
            PolicyName::Fail => NegativePolicy::Fail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub sampler: Sampler,
    pub topologies: Vec<TopologyName>,
    pub n_values: Vec<usize>,
    pub trials: usize,
    pub color_probability: f64,
    pub seed: u64,
    pub lunar_mode: LunarModeName,
    pub out_dir: PathBuf,
    pub plots: bool,
    /// Record wall-clock milliseconds; off by default so that repeated runs
    /// write identical files.
    pub timing: bool,
    /// Radii at which moment counters are kept in the JSON records.
    pub moment_r0: Vec<f64>,
    pub negative_policy: PolicyName,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            sampler: Sampler::Uniform,
            topologies: vec![TopologyName::Square, TopologyName::Torus],
            n_values: vec![2000, 3000, 4000, 5000, 6000, 7000],
            trials: 100,
            color_probability: 0.5,
            seed: 1,
            lunar_mode: LunarModeName::Pruned,
            out_dir: PathBuf::from("results"),
            plots: true,
            timing: false,
            moment_r0: Vec::new(),
            negative_policy: PolicyName::Warn,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("n_values must not be empty")]
    NoSizes,
    #[error("topologies must not be empty")]
    NoTopologies,
    #[error("color probability {0} must lie strictly between 0 and 1")]
    ColorProbability(f64),
    #[error("every n must be positive")]
    ZeroSize,
}

impl ExperimentConfig {
    /// CI-sized sweep: three sizes up to 2000, 20 trials, pruned lunar mode.
    pub fn fast() -> Self {
        ExperimentConfig {
            n_values: vec![500, 1000, 2000],
            trials: 20,
            lunar_mode: LunarModeName::Pruned,
            ..ExperimentConfig::default()
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.trials == 0 {
            return Err(ConfigError::NoTrials);
        }
        if self.n_values.is_empty() {
            return Err(ConfigError::NoSizes);
        }
        if self.n_values.contains(&0) {
            return Err(ConfigError::ZeroSize);
        }
        if self.topologies.is_empty() {
            return Err(ConfigError::NoTopologies);
        }
        let p = self.color_probability;
        if !(p > 0.0 && p < 1.0) {
            return Err(ConfigError::ColorProbability(p));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}
