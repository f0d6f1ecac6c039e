//! Pivot clustering on a derived graph.
//!
//! Each round picks a live pivot `k`, makes `k` plus its live neighbors a
//! cluster and removes them. For the residual graph `G'` before the round,
//! `B_k` counts edges leaving the new cluster and `N_k` the non-adjacent
//! pairs inside it; the audit accumulates both.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PivotStrategy {
    /// Maximum residual degree, lowest id on ties.
    Degree,
    /// Minimum `|B_k| / |N_k|`, lowest id on ties.
    Ratio,
    /// Uniform over live nodes, from a ChaCha8 stream seeded with `seed`.
    Random { seed: u64 },
}

impl PivotStrategy {
    pub fn name(&self) -> &'static str {
        match self {
            PivotStrategy::Degree => "degree",
            PivotStrategy::Ratio => "ratio",
            PivotStrategy::Random { .. } => "random",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match *self {
            PivotStrategy::Random { seed } => Some(seed),
            _ => None,
        }
    }

    /// Whether the strategy guarantees `|B| <= 2|N|` on every run.
    pub fn is_deterministic(&self) -> bool {
        !matches!(self, PivotStrategy::Random { .. })
    }
}

/// A partition of the nodes into clusters with dense ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clustering {
    assignment: Vec<usize>,
    clusters: Vec<Vec<NodeId>>,
}

impl Clustering {
    /// Panics unless `clusters` partition `0..n`.
    pub fn from_clusters(n: usize, clusters: Vec<Vec<NodeId>>) -> Self {
        let mut assignment = vec![usize::MAX; n];
        for (c, members) in clusters.iter().enumerate() {
            for &v in members {
                assert!(assignment[v] == usize::MAX, "node {v} assigned twice");
                assignment[v] = c;
            }
        }
        assert!(assignment.iter().all(|&c| c != usize::MAX), "not a partition");
        Clustering {
            assignment,
            clusters,
        }
    }

    /// Builds a clustering from arbitrary labels, renumbered densely in
    /// order of first appearance.
    pub fn from_assignment(labels: &[usize]) -> Self {
        let mut remap = hashbrown::HashMap::new();
        let mut clusters: Vec<Vec<NodeId>> = Vec::new();
        for (v, &label) in labels.iter().enumerate() {
            let c = *remap.entry(label).or_insert_with(|| {
                clusters.push(Vec::new());
                clusters.len() - 1
            });
            clusters[c].push(v);
        }
        Clustering::from_clusters(labels.len(), clusters)
    }

    pub fn singletons(n: usize) -> Self {
        Clustering::from_clusters(n, (0..n).map(|v| vec![v]).collect())
    }

    pub fn cluster_of(&self, v: NodeId) -> usize {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn clusters(&self) -> &[Vec<NodeId>] {
        &self.clusters
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn same_cluster(&self, u: NodeId, v: NodeId) -> bool {
        self.assignment[u] == self.assignment[v]
    }
}

/// Counts for one pivot round.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PivotStep {
    pub pivot: NodeId,
    pub cluster_size: usize,
    pub boundary: u64,
    pub nonedges: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PivotAudit {
    /// Edges of the pivoted graph between clusters.
    pub boundary_edges: u64,
    /// Non-edges of the pivoted graph inside clusters.
    pub internal_nonedges: u64,
    pub steps: Vec<PivotStep>,
}

/// Live-node view of a graph during pivoting.
#[derive(Debug, Clone)]
pub struct ResidualGraph<'a> {
    g: &'a Graph,
    live: Vec<bool>,
    degree: Vec<usize>,
    live_count: usize,
    in_cluster: Vec<bool>,
}

impl<'a> ResidualGraph<'a> {
    pub fn new(g: &'a Graph) -> Self {
        ResidualGraph {
            g,
            live: vec![true; g.n()],
            degree: (0..g.n()).map(|v| g.degree(v)).collect(),
            live_count: g.n(),
            in_cluster: vec![false; g.n()],
        }
    }

    pub fn graph(&self) -> &'a Graph {
        self.g
    }

    pub fn is_live(&self, v: NodeId) -> bool {
        self.live[v]
    }

    pub fn live_degree(&self, v: NodeId) -> usize {
        self.degree[v]
    }

    pub fn live_count(&self) -> usize {
        self.live_count
    }

    pub fn live_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.g.n()).filter(|&v| self.live[v])
    }

    pub fn live_neighbors(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.g.neighbors(v).iter().copied().filter(|&u| self.live[u])
    }

    /// `(|B_k|, |N_k|)` for pivoting on live node `k` now.
    pub fn boundary_and_nonedge_counts(&self, k: NodeId) -> (u64, u64) {
        debug_assert!(self.live[k]);
        let g = self.g;
        let nbrs: Vec<NodeId> = self.live_neighbors(k).collect();
        let mut nonedges = 0;
        for (a, &i) in nbrs.iter().enumerate() {
            for &j in &nbrs[a + 1..] {
                nonedges += !g.has_edge(i, j) as u64;
            }
        }
        let mut boundary = 0;
        for &i in &nbrs {
            for w in self.live_neighbors(i) {
                boundary += (w != k && !g.has_edge(w, k)) as u64;
            }
        }
        (boundary, nonedges)
    }

    /// Removes `k` and its live neighbors. Nodes outside the cluster whose
    /// degree dropped are appended to `touched`, once per lost edge.
    pub fn remove_cluster(&mut self, k: NodeId, touched: &mut Vec<NodeId>) -> (Vec<NodeId>, PivotStep) {
        debug_assert!(self.live[k]);
        let g = self.g;
        let mut members = Vec::with_capacity(self.degree[k] + 1);
        members.push(k);
        members.extend(self.live_neighbors(k));
        for &u in &members {
            self.in_cluster[u] = true;
        }
        let mut inside_twice = 0u64;
        let mut boundary = 0u64;
        for &u in &members {
            for &w in g.neighbors(u) {
                if !self.live[w] {
                    continue;
                }
                if self.in_cluster[w] {
                    inside_twice += 1;
                } else {
                    boundary += 1;
                    self.degree[w] -= 1;
                    touched.push(w);
                }
            }
        }
        for &u in &members {
            self.in_cluster[u] = false;
            self.live[u] = false;
            self.degree[u] = 0;
        }
        self.live_count -= members.len();
        let c = members.len() as u64;
        let step = PivotStep {
            pivot: k,
            cluster_size: members.len(),
            boundary,
            nonedges: c * (c - 1) / 2 - inside_twice / 2,
        };
        (members, step)
    }
}

/// Bucket queue over residual degrees returning a maximum-degree live node,
/// lowest id first.
///
/// Degrees only fall, so the current top bucket never receives entries;
/// each bucket is sorted once when it becomes the top and then consumed
/// from the low-id end. Stale entries are skipped lazily.
#[derive(Debug, Clone)]
pub struct DegreeQueue {
    buckets: Vec<Vec<NodeId>>,
    top: usize,
    top_sorted: bool,
    seen: Vec<bool>,
}

impl DegreeQueue {
    pub fn new(state: &ResidualGraph<'_>) -> Self {
        let max = state.live_nodes().map(|v| state.live_degree(v)).max().unwrap_or(0);
        let mut buckets = vec![Vec::new(); max + 1];
        for v in state.live_nodes() {
            buckets[state.live_degree(v)].push(v);
        }
        DegreeQueue {
            buckets,
            top: max,
            top_sorted: false,
            seen: vec![false; state.graph().n()],
        }
    }

    /// Re-files nodes whose degree dropped.
    pub fn update(&mut self, state: &ResidualGraph<'_>, touched: &[NodeId]) {
        for &w in touched {
            if state.is_live(w) && !self.seen[w] {
                self.seen[w] = true;
                let d = state.live_degree(w);
                debug_assert!(d < self.top);
                self.buckets[d].push(w);
            }
        }
        for &w in touched {
            self.seen[w] = false;
        }
    }

    pub fn select(&mut self, state: &ResidualGraph<'_>) -> Option<NodeId> {
        loop {
            if !self.top_sorted {
                self.buckets[self.top].sort_unstable_by(|a, b| b.cmp(a));
                self.top_sorted = true;
            }
            while let Some(v) = self.buckets[self.top].pop() {
                if state.is_live(v) && state.live_degree(v) == self.top {
                    self.buckets[self.top].push(v);
                    return Some(v);
                }
            }
            if self.top == 0 {
                return None;
            }
            self.top -= 1;
            self.top_sorted = false;
        }
    }
}

/// Maximum residual degree, lowest id on ties, by direct scan.
pub fn select_degree_pivot(state: &ResidualGraph<'_>) -> Option<NodeId> {
    state
        .live_nodes()
        .fold(None, |best: Option<NodeId>, v| match best {
            Some(b) if state.live_degree(b) >= state.live_degree(v) => Some(b),
            _ => Some(v),
        })
}

/// Minimum `|B_k| / |N_k|` by cross-multiplication, where `0/0` counts as 0
/// and `b/0` with `b > 0` as infinity. Lowest id on ties.
pub fn select_ratio_pivot(state: &ResidualGraph<'_>) -> Option<NodeId> {
    let mut best: Option<(NodeId, u64, u64)> = None;
    for k in state.live_nodes() {
        let (b, n) = state.boundary_and_nonedge_counts(k);
        let better = match best {
            None => true,
            Some((_, bb, bn)) => ratio_less(b, n, bb, bn),
        };
        if better {
            best = Some((k, b, n));
        }
    }
    best.map(|(k, _, _)| k)
}

fn ratio_less(b1: u64, n1: u64, b2: u64, n2: u64) -> bool {
    // (numerator, denominator); a zero denominator stands for infinity.
    let key = |b: u64, n: u64| match (b, n) {
        (0, 0) => (0u128, 1u128),
        (_, 0) => (1, 0),
        _ => (b as u128, n as u128),
    };
    let ((p1, q1), (p2, q2)) = (key(b1, n1), key(b2, n2));
    match (q1 == 0, q2 == 0) {
        (true, _) => false,
        (false, true) => true,
        _ => p1 * q2 < p2 * q1,
    }
}

enum Selector {
    Degree(DegreeQueue),
    Ratio,
    Random {
        rng: Box<ChaCha8Rng>,
        pool: Vec<NodeId>,
        slot: Vec<usize>,
    },
}

/// Runs pivot on `g_hat` and returns the clusters with the audit counters.
pub fn pivot(g_hat: &Graph, strategy: PivotStrategy) -> (Clustering, PivotAudit) {
    let mut state = ResidualGraph::new(g_hat);
    let mut selector = match strategy {
        PivotStrategy::Degree => Selector::Degree(DegreeQueue::new(&state)),
        PivotStrategy::Ratio => Selector::Ratio,
        PivotStrategy::Random { seed } => Selector::Random {
            rng: Box::new(ChaCha8Rng::seed_from_u64(seed)),
            pool: (0..g_hat.n()).collect(),
            slot: (0..g_hat.n()).collect(),
        },
    };

    let mut clusters = Vec::new();
    let mut audit = PivotAudit::default();
    let mut touched = Vec::new();
    while state.live_count() > 0 {
        let k = match &mut selector {
            Selector::Degree(queue) => queue.select(&state),
            Selector::Ratio => select_ratio_pivot(&state),
            Selector::Random { rng, pool, .. } => Some(pool[rng.random_range(0..pool.len())]),
        }
        .expect("a live node exists");

        touched.clear();
        let (members, step) = state.remove_cluster(k, &mut touched);
        match &mut selector {
            Selector::Degree(queue) => queue.update(&state, &touched),
            Selector::Ratio => {}
            Selector::Random { pool, slot, .. } => {
                for &u in &members {
                    let at = slot[u];
                    let last = *pool.last().unwrap();
                    pool.swap_remove(at);
                    if last != u {
                        slot[last] = at;
                    }
                }
            }
        }
        audit.boundary_edges += step.boundary;
        audit.internal_nonedges += step.nonedges;
        audit.steps.push(step);
        clusters.push(members);
    }
    (Clustering::from_clusters(g_hat.n(), clusters), audit)
}
