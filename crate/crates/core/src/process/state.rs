use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

use super::forest::{ComponentForest, ComponentKind};
use super::observe::{Event, EventKind, JamReport, Snapshot};
use super::params::{Model, ProcessParams, Sampler};
use super::ProcessError;

/// One realization of the process: graph, clock and random stream.
#[derive(Debug, Clone)]
pub struct GraphState {
    params: ProcessParams,
    forest: ComponentForest,
    rng: ChaCha8Rng,
    time: f64,
    /// Absolute time of the next draw of the configured sampler, once drawn.
    pending: Option<f64>,
    attempts: u64,
    rejections: u64,
}

impl GraphState {
    pub fn new(params: ProcessParams) -> Result<Self, ProcessError> {
        params.validate()?;
        let simple = params.model == Model::Simple;
        let forest = ComponentForest::new(params.n_vertices, simple, params.track_cycles);
        let rng = ChaCha8Rng::seed_from_u64(params.seed);
        Ok(Self {
            params,
            forest,
            rng,
            time: 0.0,
            pending: None,
            attempts: 0,
            rejections: 0,
        })
    }

    pub fn params(&self) -> &ProcessParams {
        &self.params
    }

    pub fn forest(&self) -> &ComponentForest {
        &self.forest
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn attempts(&self) -> u64 {
        self.attempts
    }

    pub fn rejections(&self) -> u64 {
        self.rejections
    }

    pub fn is_jammed(&self) -> bool {
        self.params.model == Model::Simple && self.forest.tree_mass() == 0
    }

    fn n(&self) -> f64 {
        self.params.n_vertices as f64
    }

    /// Total rate of the successful events, `(m_T² + 2p m_T m_U) / 2N`.
    pub fn event_rate(&self) -> f64 {
        let mt = self.forest.tree_mass() as f64;
        let mu = self.forest.uni_mass() as f64;
        (mt * mt + 2.0 * self.params.gluing_p * mt * mu) / (2.0 * self.n())
    }

    fn sampler_rate(&self) -> f64 {
        match self.params.sampler {
            Sampler::Naive => 0.5 * self.n(),
            Sampler::EventDriven => self.event_rate(),
        }
    }

    fn waiting_time(&mut self, rate: f64) -> f64 {
        let e: f64 = self.rng.sample(Exp1);
        e / rate
    }

    fn peek_next_time(&mut self) -> f64 {
        if let Some(t) = self.pending {
            return t;
        }
        let t = self.time + self.waiting_time(self.sampler_rate());
        self.pending = Some(t);
        t
    }

    /// Performs the next draw of the configured sampler.
    pub fn step(&mut self) -> Result<Event, ProcessError> {
        match self.params.sampler {
            Sampler::Naive => self.attempt(),
            Sampler::EventDriven => self.advance_event(),
        }
    }

    /// One naive draw: an ordered vertex pair at total rate `N/2`.
    pub fn attempt(&mut self) -> Result<Event, ProcessError> {
        if self.is_jammed() {
            return Err(ProcessError::AlreadyJammed);
        }
        let t = match (self.params.sampler, self.pending.take()) {
            (Sampler::Naive, Some(t)) => t,
            _ => self.time + self.waiting_time(0.5 * self.n()),
        };
        let n = self.params.n_vertices as u32;
        let u = self.rng.random_range(0..n);
        let v = self.rng.random_range(0..n);
        self.time = t;
        let kind = self.apply_pair(u, v)?;
        Ok(Event { kind, time: t })
    }

    /// One rejection-free event of the simple process.
    pub fn advance_event(&mut self) -> Result<Event, ProcessError> {
        if self.params.model != Model::Simple {
            return Err(ProcessError::NotApplicable("event-driven sampling needs the simple model"));
        }
        if self.is_jammed() {
            return Err(ProcessError::Jammed);
        }
        let t = match (self.params.sampler, self.pending.take()) {
            (Sampler::EventDriven, Some(t)) => t,
            _ => self.time + self.waiting_time(self.event_rate()),
        };
        let mt = self.forest.tree_mass() as f64;
        let mu = self.forest.uni_mass() as f64;
        let p = self.params.gluing_p;
        let tree_tree = mt / (mt + 2.0 * p * mu);
        let u = self.forest.sample_tree_vertex(&mut self.rng);
        let both_trees = tree_tree >= 1.0 || self.rng.random::<f64>() < tree_tree;
        let v = if both_trees {
            self.forest.sample_tree_vertex(&mut self.rng)
        } else {
            self.forest.sample_unicycle_vertex(&mut self.rng)
        };
        self.time = t;
        self.attempts += 1;
        let ru = self.forest.find(u);
        let rv = self.forest.find(v);
        let kind = if both_trees {
            self.tree_edge(u, v, ru, rv)?
        } else {
            self.glue(u, v, ru, rv)
        };
        Ok(Event { kind, time: t })
    }

    /// Adds the ordered pair `(u, v)` as a naive attempt would, including the
    /// gluing coin, without advancing the clock.
    pub fn apply_pair(&mut self, u: u32, v: u32) -> Result<EventKind, ProcessError> {
        let n = self.params.n_vertices as u32;
        if u >= n || v >= n {
            return Err(ProcessError::InvalidParams(format!("vertex out of range: ({u}, {v})")));
        }
        self.attempts += 1;
        let ru = self.forest.find(u);
        let rv = self.forest.find(v);
        let (ku, kv) = (self.forest.kind(ru), self.forest.kind(rv));
        use ComponentKind::*;
        let kind = match self.params.model {
            Model::Simple => match (ku, kv) {
                (Tree, Tree) => self.tree_edge(u, v, ru, rv)?,
                (Tree, Unicycle) | (Unicycle, Tree) => {
                    let p = self.params.gluing_p;
                    let accept = p >= 1.0 || (p > 0.0 && self.rng.random::<f64>() < p);
                    if accept {
                        if ku == Tree {
                            self.glue(u, v, ru, rv)
                        } else {
                            self.glue(v, u, rv, ru)
                        }
                    } else {
                        EventKind::RejectedGlue
                    }
                }
                _ if ru == rv => EventKind::RejectedIntraUni,
                _ => EventKind::RejectedUniUni,
            },
            Model::Classical => match (ku, kv) {
                (Tree, Tree) => self.tree_edge(u, v, ru, rv)?,
                _ if ru == rv => {
                    let k = self.forest.size(ru);
                    self.forest.close(u, v, ru, None);
                    EventKind::InternalEdge { k }
                }
                (Tree, Unicycle) => self.glue(u, v, ru, rv),
                (Unicycle, Tree) => self.glue(v, u, rv, ru),
                _ => {
                    let (i, j) = (self.forest.size(ru), self.forest.size(rv));
                    self.forest.join(u, v, ru, rv);
                    EventKind::ComplexMerge { i, j }
                }
            },
        };
        if kind.is_rejection() {
            self.rejections += 1;
        }
        Ok(kind)
    }

    fn tree_edge(&mut self, u: u32, v: u32, ru: u32, rv: u32) -> Result<EventKind, ProcessError> {
        if ru == rv {
            let k = self.forest.size(ru);
            let cycle_len = if self.forest.tracks_adjacency() {
                Some(self.cycle_length(u, v)?)
            } else {
                None
            };
            self.forest.close(u, v, ru, cycle_len);
            Ok(EventKind::TreeCycleBirth { k, cycle_len })
        } else {
            let (i, j) = (self.forest.size(ru), self.forest.size(rv));
            self.forest.join(u, v, ru, rv);
            Ok(EventKind::TreeTreeMerge { i, j })
        }
    }

    /// `u` lies in the tree `ru`, `v` in the unicycle `rv`.
    fn glue(&mut self, u: u32, v: u32, ru: u32, rv: u32) -> EventKind {
        let (i, j) = (self.forest.size(ru), self.forest.size(rv));
        self.forest.join(u, v, ru, rv);
        EventKind::TreeUniGlue { i, j }
    }

    /// Length of the cycle the edge `(u, v)` would close inside their tree:
    /// tree distance plus one.
    pub fn cycle_length(&mut self, u: u32, v: u32) -> Result<u32, ProcessError> {
        if !self.forest.tracks_adjacency() {
            return Err(ProcessError::TrackingDisabled);
        }
        let ru = self.forest.find(u);
        if ru != self.forest.find(v) || self.forest.kind(ru) != ComponentKind::Tree {
            return Err(ProcessError::NotInSameTree(u, v));
        }
        let d = self
            .forest
            .distance(u, v)
            .ok_or(ProcessError::NotInSameTree(u, v))?;
        Ok(d + 1)
    }

    /// Runs every draw up to `t_target` and sets the clock there.
    pub fn run_to_time(&mut self, t_target: f64) -> Result<Snapshot, ProcessError> {
        if !(t_target >= self.time) {
            return Err(ProcessError::InvalidTime {
                target: t_target,
                now: self.time,
            });
        }
        while !self.is_jammed() && self.peek_next_time() <= t_target {
            self.step()?;
        }
        self.time = t_target;
        Ok(self.snapshot())
    }

    /// Runs the simple process until no trees remain.
    pub fn run_to_jam(&mut self) -> Result<JamReport, ProcessError> {
        if self.params.model != Model::Simple {
            return Err(ProcessError::NotApplicable("the classical process never jams"));
        }
        while !self.is_jammed() {
            self.step()?;
        }
        self.pending = None;
        let snap = self.snapshot();
        Ok(JamReport {
            n_vertices: self.params.n_vertices,
            t_jam: self.time,
            u_jam: snap.n_unicycles,
            largest_unicycle: snap.largest_unicycle,
            uni_hist: snap.uni_hist,
            cycle_hist: snap.cycle_hist,
            attempts_total: self.attempts,
            rejections_total: self.rejections,
        })
    }

    pub fn snapshot(&self) -> Snapshot {
        let f = &self.forest;
        let mut tree_hist = BTreeMap::new();
        let mut uni_hist = BTreeMap::new();
        let mut cycle_hist = BTreeMap::new();
        let mut ring_hist = BTreeMap::new();
        let mut complex_mass = 0usize;
        let mut largest = 0u32;
        let mut largest_edges = 0u64;
        let mut largest_uni = 0u32;
        for r in 0..self.params.n_vertices as u32 {
            if !f.is_root(r) {
                continue;
            }
            let size = f.size(r);
            if size > largest {
                largest = size;
                largest_edges = f.edges(r);
            }
            match f.kind(r) {
                ComponentKind::Tree => *tree_hist.entry(size).or_insert(0) += 1,
                ComponentKind::Unicycle => {
                    *uni_hist.entry(size).or_insert(0) += 1;
                    largest_uni = largest_uni.max(size);
                    if let Some(l) = f.cycle_len(r) {
                        *cycle_hist.entry(l).or_insert(0) += 1;
                        if l == size {
                            *ring_hist.entry(l).or_insert(0) += 1;
                        }
                    }
                }
                ComponentKind::Complex => complex_mass += size as usize,
            }
        }
        Snapshot {
            t: self.time,
            n_vertices: self.params.n_vertices,
            tree_hist,
            uni_hist,
            cycle_hist,
            ring_hist,
            n_trees: f.n_trees(),
            n_unicycles: f.n_unicycles(),
            n_complex: f.n_complex(),
            total_edges: f.total_edges(),
            tree_mass: f.tree_mass(),
            uni_mass: f.uni_mass(),
            complex_mass,
            s_empirical: f.uni_mass() as f64 / self.n(),
            largest_component: largest,
            largest_component_edges: largest_edges,
            largest_component_chi: largest as i64 - largest_edges as i64,
            largest_unicycle: largest_uni,
        }
    }

    /// Checks that every recorded birth cycle length matches the cycle
    /// recomputed from the current adjacency.
    pub fn verify_cycles(&mut self) -> Result<(), String> {
        if !self.forest.tracks_adjacency() {
            return Err("cycle tracking is off".into());
        }
        for r in 0..self.params.n_vertices as u32 {
            if !self.forest.is_root(r) || self.forest.kind(r) != ComponentKind::Unicycle {
                continue;
            }
            let recorded = self.forest.cycle_len(r);
            let actual = self.forest.cycle_len_from_adjacency(r);
            if recorded != actual {
                return Err(format!("component {r}: recorded {recorded:?}, actual {actual:?}"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::StopCondition;

    fn naive(n: usize, p: f64) -> GraphState {
        let params = ProcessParams::simple(n, p)
            .with_sampler(Sampler::Naive)
            .with_cycles(true)
            .with_seed(1);
        GraphState::new(params).unwrap()
    }

    #[test]
    fn initial_state() {
        let s = naive(3, 0.5);
        let snap = s.snapshot();
        assert_eq!(snap.n_trees, 3);
        assert_eq!(snap.tree_mass, 3);
        assert_eq!(snap.uni_mass, 0);
        assert_eq!(snap.total_edges, 0);
        assert_eq!(snap.trees_of_size(1), 3);
        assert!(GraphState::new(ProcessParams::simple(0, 0.5)).is_err());
    }

    #[test]
    fn forced_classifications() {
        let mut s = naive(4, 0.5);
        assert_eq!(s.apply_pair(0, 1).unwrap(), EventKind::TreeTreeMerge { i: 1, j: 1 });
        assert_eq!(s.snapshot().total_edges, 1);
        assert_eq!(
            s.apply_pair(2, 2).unwrap(),
            EventKind::TreeCycleBirth { k: 1, cycle_len: Some(1) }
        );
        assert_eq!(
            s.apply_pair(3, 3).unwrap(),
            EventKind::TreeCycleBirth { k: 1, cycle_len: Some(1) }
        );
        assert_eq!(s.apply_pair(2, 3).unwrap(), EventKind::RejectedUniUni);
        assert_eq!(s.apply_pair(2, 2).unwrap(), EventKind::RejectedIntraUni);
        assert_eq!(s.snapshot().total_edges, 3);
        assert_eq!(s.rejections(), 2);
        // Double edge closes a 2-cycle.
        assert_eq!(
            s.apply_pair(1, 0).unwrap(),
            EventKind::TreeCycleBirth { k: 2, cycle_len: Some(2) }
        );
        assert!(s.is_jammed());
        assert!(matches!(s.attempt(), Err(ProcessError::AlreadyJammed)));
        s.verify_cycles().unwrap();
    }

    #[test]
    fn glue_probability_extremes() {
        let mut s = naive(2, 0.0);
        s.apply_pair(0, 0).unwrap();
        for _ in 0..20 {
            assert_eq!(s.apply_pair(1, 0).unwrap(), EventKind::RejectedGlue);
        }
        let mut s = naive(2, 1.0);
        s.apply_pair(0, 0).unwrap();
        assert_eq!(s.apply_pair(0, 1).unwrap(), EventKind::TreeUniGlue { i: 1, j: 1 });
    }

    #[test]
    fn cycle_lengths_on_path_and_star() {
        let mut s = naive(6, 0.5);
        s.apply_pair(0, 1).unwrap();
        s.apply_pair(1, 2).unwrap();
        assert_eq!(s.cycle_length(0, 2).unwrap(), 3);
        assert_eq!(s.cycle_length(1, 1).unwrap(), 1);
        s.apply_pair(3, 4).unwrap();
        s.apply_pair(3, 5).unwrap();
        assert_eq!(s.cycle_length(4, 5).unwrap(), 3);
        assert!(matches!(s.cycle_length(0, 4), Err(ProcessError::NotInSameTree(..))));
        let mut off = GraphState::new(ProcessParams::simple(2, 0.5)).unwrap();
        assert!(matches!(off.cycle_length(0, 0), Err(ProcessError::TrackingDisabled)));
    }

    #[test]
    fn event_driven_rates() {
        let mut s = GraphState::new(ProcessParams::simple(10, 0.5)).unwrap();
        assert_eq!(s.event_rate(), 5.0);
        let mut two = GraphState::new(ProcessParams::simple(2, 0.5)).unwrap();
        two.apply_pair(1, 1).unwrap();
        assert_eq!(two.event_rate(), 0.5);
        while !s.is_jammed() {
            s.advance_event().unwrap();
        }
        assert!(matches!(s.advance_event(), Err(ProcessError::Jammed)));
        let mut c = GraphState::new(ProcessParams::classical(5, 1.0)).unwrap();
        assert!(matches!(c.advance_event(), Err(ProcessError::NotApplicable(_))));
        assert!(matches!(c.run_to_jam(), Err(ProcessError::NotApplicable(_))));
    }

    #[test]
    fn single_vertex_jams_after_one_self_loop() {
        for sampler in [Sampler::Naive, Sampler::EventDriven] {
            let params = ProcessParams::simple(1, 0.3).with_sampler(sampler).with_seed(9);
            let mut s = GraphState::new(params).unwrap();
            let r = s.run_to_jam().unwrap();
            assert_eq!((r.u_jam, r.largest_unicycle), (1, 1));
            assert!(r.t_jam > 0.0);
            assert_eq!(r.attempts_total, 1);
        }
    }

    #[test]
    fn run_to_time_is_idempotent_and_monotone() {
        let params = ProcessParams::simple(200, 0.5).with_stop(StopCondition::AtTime(2.0));
        let mut s = GraphState::new(params).unwrap();
        let a = s.run_to_time(1.0).unwrap();
        let b = s.run_to_time(1.0).unwrap();
        assert_eq!(a, b);
        assert!(s.run_to_time(0.5).is_err());
        let c = s.run_to_time(2.0).unwrap();
        assert!(c.total_edges >= a.total_edges);
        assert_eq!(c.t, 2.0);
    }

    #[test]
    fn snapshot_grid_does_not_change_the_trajectory() {
        let params = ProcessParams::simple(500, 0.5).with_seed(42);
        let mut fine = GraphState::new(params.clone()).unwrap();
        for i in 1..=30 {
            fine.run_to_time(0.1 * i as f64).unwrap();
        }
        let mut coarse = GraphState::new(params).unwrap();
        coarse.run_to_time(3.0).unwrap();
        let (a, b) = (fine.snapshot(), coarse.snapshot());
        assert_eq!(a.uni_hist, b.uni_hist);
        assert_eq!(a.tree_hist, b.tree_hist);
    }

    #[test]
    fn classical_builds_complex_components() {
        let mut s = GraphState::new(ProcessParams::classical(3, 1.0).with_cycles(true)).unwrap();
        s.apply_pair(0, 0).unwrap();
        assert_eq!(s.apply_pair(0, 0).unwrap(), EventKind::InternalEdge { k: 1 });
        assert_eq!(s.apply_pair(1, 0).unwrap(), EventKind::ComplexMerge { i: 1, j: 1 });
        let snap = s.snapshot();
        assert_eq!(snap.n_complex, 1);
        assert_eq!(snap.complex_mass, 2);
        assert_eq!(snap.largest_component_chi, -1);
        s.forest().verify(false).unwrap();
    }
}
