//! Run settings from a JSON file, overridden field by field by flags.

use std::path::Path;

use clap::Args;
use serde::{Deserialize, Serialize};
use srg_core::{Model, Sampler};

use crate::error::{CliError, Result};

fn parse_model(s: &str) -> std::result::Result<Model, String> {
    match s {
        "simple" => Ok(Model::Simple),
        "classical" => Ok(Model::Classical),
        _ => Err(format!("unknown model {s:?} (simple, classical)")),
    }
}

fn parse_sampler(s: &str) -> std::result::Result<Sampler, String> {
    match s {
        "naive" => Ok(Sampler::Naive),
        "event_driven" | "event-driven" => Ok(Sampler::EventDriven),
        _ => Err(format!("unknown sampler {s:?} (naive, event_driven)")),
    }
}

/// Which hierarchy the `oracle` command checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OracleKind {
    Trees,
    Unicycles,
}

/// Every setting a command may read. Unset fields fall back to the
/// command's defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, Args)]
#[serde(default, deny_unknown_fields)]
pub struct Settings {
    /// Number of vertices
    #[arg(long = "n")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_vertices: Option<usize>,
    /// Gluing probability (a rate when --rate-mode is set)
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    /// simple or classical
    #[arg(long, value_parser = parse_model)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<Model>,
    /// naive or event_driven
    #[arg(long, value_parser = parse_sampler)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampler: Option<Sampler>,
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rate_mode: Option<bool>,
    /// Independent realizations per configuration
    #[arg(long = "runs")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_runs: Option<usize>,
    /// Comma-separated, strictly increasing snapshot times
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub times: Option<Vec<f64>>,
    /// Comma-separated system sizes for jam-scan
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sizes: Option<Vec<usize>>,
    /// Record cycle lengths at birth
    #[arg(long = "cycles", num_args = 0..=1, default_missing_value = "true")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub track_cycles: Option<bool>,
    /// Also write size histograms
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub histograms: Option<bool>,
    #[arg(long = "bin-width")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa_bin_width: Option<f64>,
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<OracleKind>,
    /// Truncation size of the ODE hierarchy
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kmax: Option<usize>,
    /// RK4 step
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    /// Sizes 1..=k-check reported by the oracle command
    #[arg(long = "k-check")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_check: Option<usize>,
    #[arg(skip)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub master_seed: Option<u64>,
}

macro_rules! overlay {
    ($top:expr, $base:expr, $($f:ident),*) => {
        Settings { $($f: $top.$f.or($base.$f)),* }
    };
}

impl Settings {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// Fields set in `self` win over `base`.
    pub fn over(self, base: Settings) -> Settings {
        overlay!(
            self, base, n_vertices, p, model, sampler, rate_mode, n_runs, times, sizes,
            track_cycles, histograms, kappa_bin_width, kind, kmax, dt, k_check, master_seed
        )
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices.unwrap_or(10_000)
    }

    pub fn p(&self) -> f64 {
        self.p.unwrap_or(0.5)
    }

    pub fn model(&self) -> Model {
        self.model.unwrap_or(Model::Simple)
    }

    pub fn n_runs(&self) -> usize {
        self.n_runs.unwrap_or(100)
    }

    pub fn seed(&self) -> u64 {
        self.master_seed.unwrap_or(0)
    }

    pub fn flag(v: Option<bool>) -> bool {
        v.unwrap_or(false)
    }

    /// Snapshot grid, checked to be finite, non-negative and strictly
    /// increasing.
    pub fn times(&self, default: &[f64]) -> Result<Vec<f64>> {
        let times = self.times.clone().unwrap_or_else(|| default.to_vec());
        if times.is_empty() {
            return Err(CliError::Config("time grid is empty".into()));
        }
        if times.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
            return Err(CliError::Config(format!("invalid time in grid {times:?}")));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(CliError::Config(format!("time grid must be strictly increasing: {times:?}")));
        }
        Ok(times)
    }

    pub fn require_runs(&self, min: usize) -> Result<usize> {
        let n = self.n_runs();
        if n < min {
            return Err(CliError::Config(format!("need at least {min} runs, got {n}")));
        }
        Ok(n)
    }
}
