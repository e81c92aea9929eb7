use serde::{Deserialize, Serialize};

use super::ProcessError;

/// Which edge-addition process to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Every attempt succeeds; complex components may form.
    Classical,
    /// Only trees and unicycles: tree-unicycle edges succeed with
    /// probability `p`, unicycle-unicycle edges are always rejected.
    Simple,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sampler {
    /// Draw every ordered vertex pair at total rate `N/2`, rejecting as needed.
    Naive,
    /// Draw only successful events from their aggregate rate.
    EventDriven,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopCondition {
    AtTime(f64),
    AtJam,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProcessParams {
    pub n_vertices: usize,
    pub gluing_p: f64,
    /// Accept `gluing_p > 1`, read as a rate rather than a probability.
    #[serde(default)]
    pub rate_mode: bool,
    pub model: Model,
    pub sampler: Sampler,
    #[serde(default)]
    pub seed: u64,
    pub stop: StopCondition,
    #[serde(default)]
    pub track_cycles: bool,
}

impl ProcessParams {
    /// Simple process with the event-driven sampler, stopping at jam.
    pub fn simple(n_vertices: usize, gluing_p: f64) -> Self {
        Self {
            n_vertices,
            gluing_p,
            rate_mode: false,
            model: Model::Simple,
            sampler: Sampler::EventDriven,
            seed: 0,
            stop: StopCondition::AtJam,
            track_cycles: false,
        }
    }

    /// Classical process run up to time `t`.
    pub fn classical(n_vertices: usize, t: f64) -> Self {
        Self {
            n_vertices,
            gluing_p: 1.0,
            rate_mode: false,
            model: Model::Classical,
            sampler: Sampler::Naive,
            seed: 0,
            stop: StopCondition::AtTime(t),
            track_cycles: false,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_sampler(mut self, sampler: Sampler) -> Self {
        self.sampler = sampler;
        self
    }

    pub fn with_stop(mut self, stop: StopCondition) -> Self {
        self.stop = stop;
        self
    }

    pub fn with_cycles(mut self, track: bool) -> Self {
        self.track_cycles = track;
        self
    }

    pub fn with_rate_mode(mut self, rate_mode: bool) -> Self {
        self.rate_mode = rate_mode;
        self
    }

    pub fn validate(&self) -> Result<(), ProcessError> {
        let bad = |msg: String| Err(ProcessError::InvalidParams(msg));
        if self.n_vertices == 0 {
            return bad("need at least one vertex".into());
        }
        if self.n_vertices >= u32::MAX as usize {
            return bad(format!("too many vertices: {}", self.n_vertices));
        }
        if !(self.gluing_p >= 0.0) || !self.gluing_p.is_finite() {
            return bad(format!("gluing p must be finite and >= 0, got {}", self.gluing_p));
        }
        if self.gluing_p > 1.0 {
            if !self.rate_mode {
                return bad(format!("gluing p = {} > 1 needs rate mode", self.gluing_p));
            }
            if self.sampler == Sampler::Naive {
                return bad("rate mode needs the event-driven sampler".into());
            }
        }
        if self.model == Model::Classical {
            if self.sampler == Sampler::EventDriven {
                return bad("event-driven sampler needs the simple model".into());
            }
            if self.stop == StopCondition::AtJam {
                return bad("the classical process never jams".into());
            }
        }
        if let StopCondition::AtTime(t) = self.stop {
            if !(t >= 0.0) || !t.is_finite() {
                return bad(format!("stop time must be finite and >= 0, got {t}"));
            }
        }
        Ok(())
    }
}
