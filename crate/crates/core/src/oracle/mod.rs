//! Independent checks of the theory and the simulator: truncated rate
//! equations integrated numerically, and the exact finite-`N` jam law.

pub mod exact;
pub mod ode;

pub use exact::{
    enumerate_exact, enumerate_exact_rational, ratio, transitions, ChainState,
    ExactJamDistribution, MAX_EXACT_N,
};
pub use ode::{
    integrate_trees, integrate_unicycles, OdeConfig, OrderParameter, Trajectory, TreeInput,
    TruncatedSystem,
};

use crate::theory::TheoryError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("mass {loss} left the truncation window by t = {t}")]
    TruncationExceeded { t: f64, loss: f64 },
    #[error("exact enumeration supports N <= 6, got {0}")]
    NTooLarge(usize),
    #[error("supercritical simple runs need an externally supplied s(t)")]
    MissingOrderParameter,
    #[error("{0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Theory(#[from] TheoryError),
}
