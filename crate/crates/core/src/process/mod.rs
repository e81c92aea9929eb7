//! Continuous-time simulation of the classical and simple random-graph
//! processes on `N` labeled vertices.

pub mod forest;
pub mod observe;
pub mod params;
pub mod state;

pub use forest::{ComponentForest, ComponentKind};
pub use observe::{Event, EventKind, JamReport, Snapshot};
pub use params::{Model, ProcessParams, Sampler, StopCondition};
pub use state::GraphState;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ProcessError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("the process is already jammed")]
    AlreadyJammed,
    #[error("no trees left, no further events")]
    Jammed,
    #[error("not applicable: {0}")]
    NotApplicable(&'static str),
    #[error("vertices {0} and {1} are not in the same tree")]
    NotInSameTree(u32, u32),
    #[error("cycle tracking is disabled")]
    TrackingDisabled,
    #[error("cannot run back to t = {target} from t = {now}")]
    InvalidTime { target: f64, now: f64 },
}

/// Runs a process to its configured stop condition.
pub fn run(params: ProcessParams) -> Result<Outcome, ProcessError> {
    let mut state = GraphState::new(params)?;
    match state.params().stop {
        StopCondition::AtTime(t) => state.run_to_time(t).map(Outcome::Snapshot),
        StopCondition::AtJam => state.run_to_jam().map(Outcome::Jam),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Snapshot(Snapshot),
    Jam(JamReport),
}
