//! Simulation, analytic theory and independent oracles for random graphs
//! that contain only trees and unicycles.

pub mod ensemble;
pub mod oracle;
pub mod process;
pub mod theory;

pub use process::{
    ComponentKind, Event, EventKind, GraphState, JamReport, Model, ProcessError, ProcessParams,
    Sampler, Snapshot, StopCondition,
};
pub use theory::{TheoryError, TheoryPoint};
