//! Fixed workloads shared by the benchmarks.

use srg_core::{GraphState, JamReport, ProcessParams, Snapshot, StopCondition};

/// One event-driven simple run to jam.
pub fn jam_once(n: usize, p: f64, seed: u64) -> JamReport {
    GraphState::new(ProcessParams::simple(n, p).with_seed(seed))
        .and_then(|mut s| s.run_to_jam())
        .expect("valid workload")
}

/// One naive simple run up to `t`.
pub fn naive_to(n: usize, p: f64, t: f64, seed: u64) -> Snapshot {
    let params = ProcessParams::simple(n, p)
        .with_sampler(srg_core::Sampler::Naive)
        .with_stop(StopCondition::AtTime(t))
        .with_seed(seed);
    GraphState::new(params)
        .and_then(|mut s| s.run_to_time(t))
        .expect("valid workload")
}

/// One classical run up to `t`, optionally recording cycle lengths.
pub fn classical_to(n: usize, t: f64, cycles: bool, seed: u64) -> Snapshot {
    let params = ProcessParams::classical(n, t).with_cycles(cycles).with_seed(seed);
    GraphState::new(params)
        .and_then(|mut s| s.run_to_time(t))
        .expect("valid workload")
}
