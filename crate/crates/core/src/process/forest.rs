//! Disjoint-set forest over the vertices, tracking per-component size, edge
//! count and kind, plus optional adjacency for cycle-length queries.

use rand::Rng;

pub(crate) const NIL: u32 = u32::MAX;

/// Topological kind of a component, read off `χ = V - E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum ComponentKind {
    /// χ = 1
    Tree,
    /// χ = 0
    Unicycle,
    /// χ < 0
    Complex,
}

impl ComponentKind {
    fn of(size: u32, edges: u64) -> Self {
        let chi = size as i64 - edges as i64;
        match chi {
            1 => ComponentKind::Tree,
            0 => ComponentKind::Unicycle,
            c if c < 0 => ComponentKind::Complex,
            _ => unreachable!("connected component with χ = {chi} > 1"),
        }
    }
}

/// Uniformly samplable partition of the vertices into tree and unicycle
/// vertices, maintained with swap-remove arrays.
#[derive(Debug, Clone)]
struct KindPools {
    trees: Vec<u32>,
    unicycles: Vec<u32>,
    /// Index of each vertex inside whichever pool holds it.
    pos: Vec<u32>,
}

impl KindPools {
    fn new(n: usize) -> Self {
        Self {
            trees: (0..n as u32).collect(),
            unicycles: Vec::new(),
            pos: (0..n as u32).collect(),
        }
    }

    fn move_to_unicycles(&mut self, v: u32) {
        let i = self.pos[v as usize] as usize;
        debug_assert_eq!(self.trees[i], v);
        let last = self.trees.pop().expect("tree pool is empty");
        if last != v {
            self.trees[i] = last;
            self.pos[last as usize] = i as u32;
        }
        self.pos[v as usize] = self.unicycles.len() as u32;
        self.unicycles.push(v);
    }
}

/// Half-edge adjacency lists plus scratch space for traversals.
#[derive(Debug, Clone)]
struct Adjacency {
    head: Vec<u32>,
    next: Vec<u32>,
    to: Vec<u32>,
    stamp: Vec<u32>,
    epoch: u32,
    dist: Vec<u32>,
    queue: Vec<u32>,
}

impl Adjacency {
    fn new(n: usize) -> Self {
        Self {
            head: vec![NIL; n],
            next: Vec::new(),
            to: Vec::new(),
            stamp: vec![0; n],
            epoch: 0,
            dist: vec![0; n],
            queue: Vec::new(),
        }
    }

    fn push_half(&mut self, from: u32, to: u32) {
        let id = self.to.len() as u32;
        self.to.push(to);
        self.next.push(self.head[from as usize]);
        self.head[from as usize] = id;
    }

    /// A self-loop contributes two half-edges at the same vertex.
    fn add_edge(&mut self, u: u32, v: u32) {
        self.push_half(u, v);
        self.push_half(v, u);
    }

    fn neighbors(&self, v: u32) -> Neighbors<'_> {
        Neighbors {
            adj: self,
            edge: self.head[v as usize],
        }
    }

    fn next_epoch(&mut self) -> u32 {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        self.epoch
    }
}

struct Neighbors<'a> {
    adj: &'a Adjacency,
    edge: u32,
}

impl Iterator for Neighbors<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.edge == NIL {
            return None;
        }
        let e = self.edge as usize;
        self.edge = self.adj.next[e];
        Some(self.adj.to[e])
    }
}

/// Component structure of the evolving graph.
///
/// Size, edge count and cycle length are only meaningful at roots. Members
/// of each component are threaded on a circular list (`ring_next`) so that
/// a component can be walked in time proportional to its size.
#[derive(Debug, Clone)]
pub struct ComponentForest {
    parent: Vec<u32>,
    size: Vec<u32>,
    edges: Vec<u64>,
    cycle_len: Vec<u32>,
    ring_next: Vec<u32>,
    n_trees: usize,
    n_unicycles: usize,
    n_complex: usize,
    tree_mass: usize,
    uni_mass: usize,
    total_edges: u64,
    pools: Option<KindPools>,
    adjacency: Option<Adjacency>,
}

impl ComponentForest {
    /// `n` isolated vertices. `kind_pools` enables uniform sampling of tree
    /// and unicycle vertices; `adjacency` enables cycle-length queries.
    pub fn new(n: usize, kind_pools: bool, adjacency: bool) -> Self {
        assert!(n >= 1 && n < NIL as usize);
        Self {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            edges: vec![0; n],
            cycle_len: vec![0; n],
            ring_next: (0..n as u32).collect(),
            n_trees: n,
            n_unicycles: 0,
            n_complex: 0,
            tree_mass: n,
            uni_mass: 0,
            total_edges: 0,
            pools: kind_pools.then(|| KindPools::new(n)),
            adjacency: adjacency.then(|| Adjacency::new(n)),
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.parent.len()
    }

    pub fn find(&mut self, v: u32) -> u32 {
        let mut root = v;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut x = v;
        while self.parent[x as usize] != root {
            let up = self.parent[x as usize];
            self.parent[x as usize] = root;
            x = up;
        }
        root
    }

    /// Root lookup without path compression.
    pub fn find_readonly(&self, v: u32) -> u32 {
        let mut root = v;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        root
    }

    pub fn is_root(&self, v: u32) -> bool {
        self.parent[v as usize] == v
    }

    pub fn size(&self, root: u32) -> u32 {
        self.size[root as usize]
    }

    pub fn edges(&self, root: u32) -> u64 {
        self.edges[root as usize]
    }

    pub fn chi(&self, root: u32) -> i64 {
        self.size[root as usize] as i64 - self.edges[root as usize] as i64
    }

    pub fn kind(&self, root: u32) -> ComponentKind {
        ComponentKind::of(self.size[root as usize], self.edges[root as usize])
    }

    /// Cycle length recorded when the unicycle was born, if tracked.
    pub fn cycle_len(&self, root: u32) -> Option<u32> {
        match self.cycle_len[root as usize] {
            0 => None,
            l => Some(l),
        }
    }

    pub fn n_trees(&self) -> usize {
        self.n_trees
    }

    pub fn n_unicycles(&self) -> usize {
        self.n_unicycles
    }

    pub fn n_complex(&self) -> usize {
        self.n_complex
    }

    /// Number of vertices in tree components (`m_T`).
    pub fn tree_mass(&self) -> usize {
        self.tree_mass
    }

    /// Number of vertices in unicyclic components (`m_U`).
    pub fn uni_mass(&self) -> usize {
        self.uni_mass
    }

    pub fn total_edges(&self) -> u64 {
        self.total_edges
    }

    pub fn tracks_adjacency(&self) -> bool {
        self.adjacency.is_some()
    }

    /// Iterates the vertices of the component rooted at `root`.
    pub fn members(&self, root: u32) -> impl Iterator<Item = u32> + '_ {
        let mut cur = Some(root);
        std::iter::from_fn(move || {
            let v = cur?;
            let nxt = self.ring_next[v as usize];
            cur = (nxt != root).then_some(nxt);
            Some(v)
        })
    }

    pub fn sample_tree_vertex<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        let pool = &self.pools.as_ref().expect("kind pools disabled").trees;
        pool[rng.random_range(0..pool.len())]
    }

    pub fn sample_unicycle_vertex<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        let pool = &self.pools.as_ref().expect("kind pools disabled").unicycles;
        pool[rng.random_range(0..pool.len())]
    }

    fn uncount(&mut self, root: u32) {
        let sz = self.size[root as usize] as usize;
        match self.kind(root) {
            ComponentKind::Tree => {
                self.n_trees -= 1;
                self.tree_mass -= sz;
            }
            ComponentKind::Unicycle => {
                self.n_unicycles -= 1;
                self.uni_mass -= sz;
            }
            ComponentKind::Complex => self.n_complex -= 1,
        }
    }

    fn count(&mut self, root: u32) {
        let sz = self.size[root as usize] as usize;
        match self.kind(root) {
            ComponentKind::Tree => {
                self.n_trees += 1;
                self.tree_mass += sz;
            }
            ComponentKind::Unicycle => {
                self.n_unicycles += 1;
                self.uni_mass += sz;
            }
            ComponentKind::Complex => self.n_complex += 1,
        }
    }

    /// Moves every vertex of a tree component into the unicycle pool.
    fn pool_tree_to_unicycles(&mut self, root: u32) {
        if self.pools.is_none() {
            return;
        }
        let mut v = root;
        loop {
            self.pools.as_mut().unwrap().move_to_unicycles(v);
            v = self.ring_next[v as usize];
            if v == root {
                break;
            }
        }
    }

    fn record_adjacency(&mut self, u: u32, v: u32) {
        if let Some(adj) = self.adjacency.as_mut() {
            adj.add_edge(u, v);
        }
    }

    /// Adds edge `(u, v)` between two different components with roots
    /// `ru`, `rv`. Returns the new root.
    ///
    /// Keeps the kind pools consistent for the transitions the simple
    /// process allows (tree + tree, tree + unicycle); other merges are only
    /// legal with pools disabled.
    pub fn join(&mut self, u: u32, v: u32, ru: u32, rv: u32) -> u32 {
        debug_assert!(ru != rv && self.is_root(ru) && self.is_root(rv));
        let (ku, kv) = (self.kind(ru), self.kind(rv));
        match (ku, kv) {
            (ComponentKind::Tree, ComponentKind::Unicycle) => self.pool_tree_to_unicycles(ru),
            (ComponentKind::Unicycle, ComponentKind::Tree) => self.pool_tree_to_unicycles(rv),
            (ComponentKind::Tree, ComponentKind::Tree) => {}
            _ => debug_assert!(self.pools.is_none(), "complex merge with kind pools"),
        }
        self.uncount(ru);
        self.uncount(rv);
        let cycle = self.cycle_len[ru as usize].max(self.cycle_len[rv as usize]);
        let (big, small) = if self.size[ru as usize] >= self.size[rv as usize] {
            (ru, rv)
        } else {
            (rv, ru)
        };
        self.parent[small as usize] = big;
        self.size[big as usize] += self.size[small as usize];
        self.edges[big as usize] += self.edges[small as usize] + 1;
        // Splice the two circular member lists.
        self.ring_next.swap(big as usize, small as usize);
        // A cycle length only survives if the result is still a unicycle.
        self.cycle_len[big as usize] = if self.kind(big) == ComponentKind::Unicycle {
            cycle
        } else {
            0
        };
        self.count(big);
        self.total_edges += 1;
        self.record_adjacency(u, v);
        big
    }

    /// Adds edge `(u, v)` inside the component rooted at `root`.
    /// `cycle_len` is stored if this turns a tree into a unicycle.
    pub fn close(&mut self, u: u32, v: u32, root: u32, cycle_len: Option<u32>) {
        debug_assert!(self.is_root(root));
        let was = self.kind(root);
        if was == ComponentKind::Tree {
            self.pool_tree_to_unicycles(root);
        } else {
            debug_assert!(self.pools.is_none(), "edge inside a unicycle with kind pools");
        }
        self.uncount(root);
        self.edges[root as usize] += 1;
        self.cycle_len[root as usize] = match (was, cycle_len) {
            (ComponentKind::Tree, Some(l)) => l,
            _ => 0,
        };
        self.count(root);
        self.total_edges += 1;
        self.record_adjacency(u, v);
    }

    /// Graph distance between `u` and `v` by breadth-first search, which
    /// never leaves the component of `u`. `None` if `v` is not reached or
    /// adjacency is not tracked.
    pub fn distance(&mut self, u: u32, v: u32) -> Option<u32> {
        let adj = self.adjacency.as_mut()?;
        if u == v {
            return Some(0);
        }
        let epoch = adj.next_epoch();
        adj.queue.clear();
        adj.queue.push(u);
        adj.stamp[u as usize] = epoch;
        adj.dist[u as usize] = 0;
        let mut head = 0;
        while head < adj.queue.len() {
            let x = adj.queue[head];
            head += 1;
            let dx = adj.dist[x as usize];
            let mut e = adj.head[x as usize];
            while e != NIL {
                let y = adj.to[e as usize];
                e = adj.next[e as usize];
                if adj.stamp[y as usize] != epoch {
                    if y == v {
                        return Some(dx + 1);
                    }
                    adj.stamp[y as usize] = epoch;
                    adj.dist[y as usize] = dx + 1;
                    adj.queue.push(y);
                }
            }
        }
        None
    }

    /// Length of the unique cycle of a unicycle, recomputed from adjacency
    /// by repeatedly stripping degree-one vertices.
    pub fn cycle_len_from_adjacency(&mut self, root: u32) -> Option<u32> {
        if self.kind(root) != ComponentKind::Unicycle {
            return None;
        }
        let members: Vec<u32> = self.members(root).collect();
        let adj = self.adjacency.as_mut()?;
        for &v in &members {
            adj.dist[v as usize] = adj.neighbors(v).count() as u32;
        }
        let mut leaves: Vec<u32> = members
            .iter()
            .copied()
            .filter(|&v| adj.dist[v as usize] == 1)
            .collect();
        let mut remaining = members.len() as u32;
        while let Some(x) = leaves.pop() {
            remaining -= 1;
            adj.dist[x as usize] = 0;
            let mut e = adj.head[x as usize];
            while e != NIL {
                let y = adj.to[e as usize];
                e = adj.next[e as usize];
                if adj.dist[y as usize] > 0 {
                    adj.dist[y as usize] -= 1;
                    if adj.dist[y as usize] == 1 {
                        leaves.push(y);
                    }
                }
            }
        }
        Some(remaining)
    }

    /// Full O(N) consistency check of the bookkeeping. Intended for tests.
    pub fn verify(&self, simple: bool) -> Result<(), String> {
        let n = self.n_vertices();
        let (mut vsum, mut esum) = (0usize, 0u64);
        let (mut nt, mut nu, mut nc, mut mt, mut mu) = (0, 0, 0, 0, 0);
        for r in 0..n as u32 {
            if !self.is_root(r) {
                continue;
            }
            let sz = self.size(r) as usize;
            let walked = self.members(r).count();
            if walked != sz {
                return Err(format!("component {r}: size {sz} but {walked} members"));
            }
            vsum += sz;
            esum += self.edges(r);
            match self.kind(r) {
                ComponentKind::Tree => {
                    nt += 1;
                    mt += sz;
                }
                ComponentKind::Unicycle => {
                    nu += 1;
                    mu += sz;
                }
                ComponentKind::Complex => {
                    if simple {
                        return Err(format!("complex component {r} in simple mode"));
                    }
                    nc += 1;
                }
            }
        }
        if vsum != n {
            return Err(format!("mass {vsum} != {n}"));
        }
        if esum != self.total_edges {
            return Err(format!("edge sum {esum} != {}", self.total_edges));
        }
        if (nt, nu, nc, mt, mu)
            != (self.n_trees, self.n_unicycles, self.n_complex, self.tree_mass, self.uni_mass)
        {
            return Err("cached component counts are stale".into());
        }
        if simple && mt + mu != n {
            return Err("tree and unicycle masses do not add up".into());
        }
        if let Some(pools) = &self.pools {
            if pools.trees.len() != mt || pools.unicycles.len() != mu {
                return Err("kind pool sizes disagree with masses".into());
            }
            for (i, &v) in pools.trees.iter().enumerate() {
                if pools.pos[v as usize] as usize != i
                    || self.kind(self.find_readonly(v)) != ComponentKind::Tree
                {
                    return Err(format!("vertex {v} misplaced in tree pool"));
                }
            }
            for (i, &v) in pools.unicycles.iter().enumerate() {
                if pools.pos[v as usize] as usize != i
                    || self.kind(self.find_readonly(v)) != ComponentKind::Unicycle
                {
                    return Err(format!("vertex {v} misplaced in unicycle pool"));
                }
            }
        }
        Ok(())
    }
}
