//! Independent realizations run in parallel, aggregated in run order.

pub mod fit;
pub mod seed;
pub mod stats;

use rayon::prelude::*;
use serde::Serialize;

pub use fit::{
    fit_linear_in_log, fit_power_law, fit_power_law_fixed_log, fit_power_law_log, FitError,
    FitForm, ScalingFit,
};
pub use seed::{derive_seed, splitmix64};
pub use stats::{chi_square_gof, z_score, ChiSquare, Summary};

use crate::process::{GraphState, JamReport, ProcessError, ProcessParams, Snapshot};

/// Runs `f(run_index, seed)` for every run on the current rayon pool and
/// returns the results in run order, so the output does not depend on
/// scheduling.
pub fn run_ensemble<T, F>(n_runs: usize, master_seed: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize, u64) -> T + Sync + Send,
{
    (0..n_runs)
        .into_par_iter()
        .map(|i| f(i, derive_seed(master_seed, i as u64)))
        .collect()
}

/// Snapshots of every run at every grid time: `out[run][time]`.
pub fn simulate_grid(
    params: &ProcessParams,
    grid: &[f64],
    n_runs: usize,
    master_seed: u64,
) -> Result<Vec<Vec<Snapshot>>, ProcessError> {
    params.validate()?;
    run_ensemble(n_runs, master_seed, |_, seed| {
        let mut state = GraphState::new(params.clone().with_seed(seed))?;
        grid.iter().map(|&t| state.run_to_time(t)).collect()
    })
    .into_iter()
    .collect()
}

/// Jam reports of independent simple-model runs.
pub fn jam_ensemble(
    params: &ProcessParams,
    n_runs: usize,
    master_seed: u64,
) -> Result<Vec<JamReport>, ProcessError> {
    params.validate()?;
    run_ensemble(n_runs, master_seed, |_, seed| {
        GraphState::new(params.clone().with_seed(seed))?.run_to_jam()
    })
    .into_iter()
    .collect()
}

/// Observables aggregated over runs at one time.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleStats {
    pub t: f64,
    pub n_runs: usize,
    pub n_vertices: usize,
    pub observables: Vec<(&'static str, Summary)>,
    /// Standard deviation of the tree count divided by `sqrt(N)`.
    pub v: f64,
}

impl EnsembleStats {
    pub fn get(&self, name: &str) -> Option<&Summary> {
        self.observables.iter().find(|(n, _)| *n == name).map(|(_, s)| s)
    }
}

/// Names of the per-snapshot observables, in output order.
pub const SNAPSHOT_OBSERVABLES: [&str; 8] = [
    "s",
    "c_total",
    "E_over_N",
    "U",
    "M2",
    "n_trees",
    "largest_component",
    "largest_unicycle",
];

fn snapshot_values(s: &Snapshot) -> [f64; 8] {
    [
        s.s_empirical,
        s.c_total(),
        s.e_over_n(),
        s.n_unicycles as f64,
        s.m2_trees(),
        s.n_trees as f64,
        s.largest_component as f64,
        s.largest_unicycle as f64,
    ]
}

/// Aggregates snapshots taken at the same time in different runs.
pub fn snapshot_stats<'a>(snaps: impl IntoIterator<Item = &'a Snapshot>) -> EnsembleStats {
    let snaps: Vec<&Snapshot> = snaps.into_iter().collect();
    assert!(!snaps.is_empty());
    let observables = SNAPSHOT_OBSERVABLES
        .iter()
        .enumerate()
        .map(|(i, &name)| {
            let xs: Vec<f64> = snaps.iter().map(|s| snapshot_values(s)[i]).collect();
            (name, Summary::of(&xs))
        })
        .collect::<Vec<_>>();
    let n = snaps[0].n_vertices;
    let trees = observables[5].1;
    EnsembleStats {
        t: snaps[0].t,
        n_runs: snaps.len(),
        n_vertices: n,
        observables,
        v: trees.std_dev() / (n as f64).sqrt(),
    }
}

/// Per-time statistics for `simulate_grid` output.
pub fn grid_stats(runs: &[Vec<Snapshot>]) -> Vec<EnsembleStats> {
    let n_times = runs.first().map_or(0, |r| r.len());
    (0..n_times)
        .map(|j| snapshot_stats(runs.iter().map(|r| &r[j])))
        .collect()
}

/// Names of the jam observables, in output order.
pub const JAM_OBSERVABLES: [&str; 5] = ["t_jam", "u_jam", "kappa", "u1", "attempts"];

pub fn jam_stats(reports: &[JamReport]) -> Vec<(&'static str, Summary)> {
    let cols: [Vec<f64>; 5] = [
        reports.iter().map(|r| r.t_jam).collect(),
        reports.iter().map(|r| r.u_jam as f64).collect(),
        reports.iter().map(|r| r.kappa()).collect(),
        reports.iter().map(|r| r.unicycles_of_size(1) as f64).collect(),
        reports.iter().map(|r| r.attempts_total as f64).collect(),
    ];
    JAM_OBSERVABLES
        .iter()
        .zip(cols.iter())
        .map(|(&n, xs)| (n, Summary::of(xs)))
        .collect()
}

/// Histogram of `K/N` with bins `[i w, (i+1) w)`; `κ = 1` lands in the last bin.
pub fn kappa_histogram(reports: &[JamReport], bin_width: f64) -> Vec<(f64, u64)> {
    let bins = (1.0 / bin_width).round() as usize;
    let mut counts = vec![0u64; bins];
    for r in reports {
        let i = ((r.kappa() / bin_width) as usize).min(bins - 1);
        counts[i] += 1;
    }
    counts
        .into_iter()
        .enumerate()
        .map(|(i, c)| (i as f64 * bin_width, c))
        .collect()
}
