use std::collections::BTreeMap;

use serde::Serialize;

/// What one draw of the process did.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EventKind {
    /// Two trees of sizes `i` and `j` merged.
    TreeTreeMerge { i: u32, j: u32 },
    /// An edge inside a tree of size `k` made it a unicycle with a cycle of
    /// length `cycle_len` (when tracked).
    TreeCycleBirth { k: u32, cycle_len: Option<u32> },
    /// A tree of size `i` was glued onto a unicycle of size `j`.
    TreeUniGlue { i: u32, j: u32 },
    /// Classical model: two components merged where neither is a tree, or
    /// one is complex.
    ComplexMerge { i: u32, j: u32 },
    /// Classical model: an edge inside a unicycle or complex component of
    /// size `k`.
    InternalEdge { k: u32 },
    RejectedUniUni,
    RejectedIntraUni,
    RejectedGlue,
}

impl EventKind {
    pub fn is_rejection(&self) -> bool {
        matches!(
            self,
            EventKind::RejectedUniUni | EventKind::RejectedIntraUni | EventKind::RejectedGlue
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Event {
    pub kind: EventKind,
    pub time: f64,
}

/// Observables of one realization at one time.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Snapshot {
    pub t: f64,
    pub n_vertices: usize,
    /// Tree size -> number of trees.
    pub tree_hist: BTreeMap<u32, u64>,
    /// Unicycle size -> number of unicycles.
    pub uni_hist: BTreeMap<u32, u64>,
    /// Cycle length -> number of unicycles whose cycle was born with that
    /// length. Empty unless cycles are tracked.
    pub cycle_hist: BTreeMap<u32, u64>,
    /// Cycle length -> number of unicycles that are bare cycles (size equal
    /// to cycle length). Empty unless cycles are tracked.
    pub ring_hist: BTreeMap<u32, u64>,
    pub n_trees: usize,
    pub n_unicycles: usize,
    pub n_complex: usize,
    pub total_edges: u64,
    pub tree_mass: usize,
    pub uni_mass: usize,
    pub complex_mass: usize,
    pub s_empirical: f64,
    pub largest_component: u32,
    pub largest_component_edges: u64,
    pub largest_component_chi: i64,
    pub largest_unicycle: u32,
}

impl Snapshot {
    /// Trees per vertex.
    pub fn c_total(&self) -> f64 {
        self.n_trees as f64 / self.n_vertices as f64
    }

    pub fn e_over_n(&self) -> f64 {
        self.total_edges as f64 / self.n_vertices as f64
    }

    /// `Σ k² N_k / N` over trees.
    pub fn m2_trees(&self) -> f64 {
        let sum: f64 = self
            .tree_hist
            .iter()
            .map(|(&k, &c)| (k as f64) * (k as f64) * c as f64)
            .sum();
        sum / self.n_vertices as f64
    }

    pub fn trees_of_size(&self, k: u32) -> u64 {
        self.tree_hist.get(&k).copied().unwrap_or(0)
    }

    pub fn unicycles_of_size(&self, k: u32) -> u64 {
        self.uni_hist.get(&k).copied().unwrap_or(0)
    }

    pub fn cycles_of_len(&self, l: u32) -> u64 {
        self.cycle_hist.get(&l).copied().unwrap_or(0)
    }

    pub fn rings_of_len(&self, l: u32) -> u64 {
        self.ring_hist.get(&l).copied().unwrap_or(0)
    }
}

/// Final state of a simple-model run that reached jam.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JamReport {
    pub n_vertices: usize,
    pub t_jam: f64,
    pub u_jam: usize,
    pub largest_unicycle: u32,
    pub uni_hist: BTreeMap<u32, u64>,
    pub cycle_hist: BTreeMap<u32, u64>,
    /// Naive draws, or successful events for the event-driven sampler.
    pub attempts_total: u64,
    pub rejections_total: u64,
}

impl JamReport {
    pub fn unicycles_of_size(&self, k: u32) -> u64 {
        self.uni_hist.get(&k).copied().unwrap_or(0)
    }

    pub fn kappa(&self) -> f64 {
        self.largest_unicycle as f64 / self.n_vertices as f64
    }

    /// Sorted unicycle sizes, the jam state up to relabeling.
    pub fn size_multiset(&self) -> Vec<u32> {
        self.uni_hist
            .iter()
            .flat_map(|(&k, &c)| std::iter::repeat(k).take(c as usize))
            .collect()
    }
}
