//! Immutable simple undirected graphs, edge-list ingestion and open wedges.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;

/// Internal node id in `0..n`.
pub type NodeId = usize;

/// Internal edge id in `0..m`. Edge ids follow the lexicographic order of
/// the canonical `(min, max)` endpoint pairs.
pub type EdgeId = usize;

/// An open wedge `(i, j, k)`: the path `i - k - j` where `i` and `j` are not
/// adjacent. Stored canonically with `i < j`; `k` is the center.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpenWedge {
    pub i: NodeId,
    pub j: NodeId,
    pub k: NodeId,
}

impl OpenWedge {
    /// Builds a wedge centered at `k`, swapping the outer nodes if needed.
    pub fn new(a: NodeId, b: NodeId, k: NodeId) -> Self {
        let (i, j) = if a <= b { (a, b) } else { (b, a) };
        OpenWedge { i, j, k }
    }

    /// The two edges of the wedge, as canonical endpoint pairs.
    pub fn edges(&self) -> [(NodeId, NodeId); 2] {
        [canonical(self.i, self.k), canonical(self.j, self.k)]
    }
}

#[inline]
pub(crate) fn canonical(u: NodeId, v: NodeId) -> (NodeId, NodeId) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: invalid node label {token:?}")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: expected two node labels, found {found} tokens")]
    WrongArity { line: usize, found: usize },
    #[error("line {line}: not valid UTF-8")]
    InvalidUtf8 { line: usize },
}

/// A simple undirected graph with sorted adjacency arrays and a hash index
/// over edges.
///
/// Every node carries the label it had in the input; graphs built directly
/// from ids use the identity labelling.
#[derive(Clone)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<NodeId>,
    slot_edges: Vec<EdgeId>,
    edges: Vec<(NodeId, NodeId)>,
    edge_index: HashMap<(NodeId, NodeId), EdgeId>,
    labels: Vec<u64>,
    id_map: HashMap<u64, NodeId>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.m())
            .field("edges", &self.edges)
            .finish()
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph on nodes `0..n`. Self-loops are dropped and repeated
    /// or reversed pairs collapse into one edge.
    ///
    /// Panics if an endpoint is `>= n`.
    pub fn from_edges<I>(n: usize, pairs: I) -> Self
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let labels = (0..n as u64).collect();
        Self::build(labels, pairs.into_iter().collect())
    }

    /// Like [`Graph::from_edges`] but with explicit node labels.
    ///
    /// Panics if labels repeat.
    pub fn from_labeled_edges(labels: Vec<u64>, pairs: Vec<(NodeId, NodeId)>) -> Self {
        Self::build(labels, pairs)
    }

    fn build(labels: Vec<u64>, mut pairs: Vec<(NodeId, NodeId)>) -> Self {
        let n = labels.len();
        pairs.retain(|&(u, v)| {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for {n} nodes");
            u != v
        });
        for p in pairs.iter_mut() {
            *p = canonical(p.0, p.1);
        }
        pairs.sort_unstable();
        pairs.dedup();

        let mut degree = vec![0usize; n];
        for &(u, v) in &pairs {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        // Pairs are sorted, so filling in order leaves each list ascending.
        let mut fill = offsets[..n].to_vec();
        let mut neighbors = vec![0; 2 * pairs.len()];
        let mut slot_edges = vec![0; 2 * pairs.len()];
        let mut edge_index = HashMap::with_capacity(pairs.len());
        for (e, &(u, v)) in pairs.iter().enumerate() {
            neighbors[fill[u]] = v;
            slot_edges[fill[u]] = e;
            fill[u] += 1;
            neighbors[fill[v]] = u;
            slot_edges[fill[v]] = e;
            fill[v] += 1;
            edge_index.insert((u, v), e);
        }

        let mut id_map = HashMap::with_capacity(n);
        for (id, &label) in labels.iter().enumerate() {
            let prev = id_map.insert(label, id);
            assert!(prev.is_none(), "duplicate node label {label}");
        }

        Graph {
            offsets,
            neighbors,
            slot_edges,
            edges: pairs,
            edge_index,
            labels,
            id_map,
        }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Sorted neighbors of `v`.
    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Edge ids parallel to [`Graph::neighbors`].
    #[inline]
    pub fn neighbor_edges(&self, v: NodeId) -> &[EdgeId] {
        &self.slot_edges[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: NodeId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    #[inline]
    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        u != v && self.edge_index.contains_key(&canonical(u, v))
    }

    #[inline]
    pub fn edge_id(&self, u: NodeId, v: NodeId) -> Option<EdgeId> {
        if u == v {
            return None;
        }
        self.edge_index.get(&canonical(u, v)).copied()
    }

    /// Endpoints `(u, v)` of edge `e`, with `u < v`.
    #[inline]
    pub fn edge(&self, e: EdgeId) -> (NodeId, NodeId) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    /// Original label of node `v`.
    pub fn label(&self, v: NodeId) -> u64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Internal id of an input label.
    pub fn node_of_label(&self, label: u64) -> Option<NodeId> {
        self.id_map.get(&label).copied()
    }

    /// Streams every open wedge once, grouped by ascending center and then
    /// by lexicographic neighbor pair. Returns the number of wedges.
    pub fn for_each_open_wedge<F: FnMut(OpenWedge)>(&self, mut sink: F) -> u64 {
        self.for_each_open_wedge_with_edges(|w, _, _| sink(w))
    }

    /// Same as [`Graph::for_each_open_wedge`], also passing the edge ids of
    /// `(i, k)` and `(j, k)`.
    pub fn for_each_open_wedge_with_edges<F>(&self, mut sink: F) -> u64
    where
        F: FnMut(OpenWedge, EdgeId, EdgeId),
    {
        let mut count = 0;
        for k in 0..self.n() {
            let nbrs = self.neighbors(k);
            let eids = self.neighbor_edges(k);
            for a in 0..nbrs.len() {
                for b in a + 1..nbrs.len() {
                    if !self.has_edge(nbrs[a], nbrs[b]) {
                        count += 1;
                        sink(OpenWedge { i: nbrs[a], j: nbrs[b], k }, eids[a], eids[b]);
                    }
                }
            }
        }
        count
    }

    pub fn count_open_wedges(&self) -> u64 {
        self.for_each_open_wedge(|_| {})
    }

    pub fn is_open_wedge(&self, w: &OpenWedge) -> bool {
        w.i != w.j
            && w.i != w.k
            && w.j != w.k
            && self.has_edge(w.i, w.k)
            && self.has_edge(w.j, w.k)
            && !self.has_edge(w.i, w.j)
    }

    /// The graph on the same nodes and labels with the edges of `removed`
    /// taken out. Edge ids of the result are renumbered.
    pub fn without_edges(&self, removed: &EdgeSet) -> Graph {
        let kept = self
            .edges
            .iter()
            .enumerate()
            .filter(|(e, _)| !removed.contains(*e))
            .map(|(_, &p)| p)
            .collect();
        Graph::build(self.labels.clone(), kept)
    }

    /// Whether `nodes` induce a clique.
    pub fn is_clique(&self, nodes: &[NodeId]) -> bool {
        nodes
            .iter()
            .enumerate()
            .all(|(a, &u)| nodes[a + 1..].iter().all(|&v| self.has_edge(u, v)))
    }
}

/// Parses a whitespace-separated edge list. Lines starting with `#` are
/// comments and blank lines are ignored. Labels are compacted to internal ids
/// in order of first appearance.
pub fn parse_edge_list(text: &[u8]) -> Result<Graph, ParseError> {
    let mut labels: Vec<u64> = Vec::new();
    let mut ids: HashMap<u64, NodeId> = HashMap::new();
    let mut pairs = Vec::new();

    for (idx, raw) in text.split(|&b| b == b'\n').enumerate() {
        let line = idx + 1;
        let raw = raw.strip_suffix(b"\r").unwrap_or(raw);
        let s = core::str::from_utf8(raw).map_err(|_| ParseError::InvalidUtf8 { line })?;
        let s = s.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let mut endpoints = [0 as NodeId; 2];
        let mut found = 0;
        for token in s.split_ascii_whitespace() {
            if found == 2 {
                found += 1;
                break;
            }
            let label: u64 = token.parse().map_err(|_| ParseError::InvalidToken {
                line,
                token: token.into(),
            })?;
            endpoints[found] = *ids.entry(label).or_insert_with(|| {
                labels.push(label);
                labels.len() - 1
            });
            found += 1;
        }
        if found != 2 {
            let found = s.split_ascii_whitespace().count();
            return Err(ParseError::WrongArity { line, found });
        }
        pairs.push((endpoints[0], endpoints[1]));
    }
    Ok(Graph::build(labels, pairs))
}

/// Writes `g` as an edge list of original labels.
///
/// Every node without lower-numbered neighbors is introduced in id order,
/// so parsing the output of a graph that itself came from
/// [`parse_edge_list`] yields the same internal ids. Isolated nodes are not
/// representable and are dropped.
pub fn write_edge_list<W: fmt::Write>(g: &Graph, out: &mut W) -> fmt::Result {
    let mut written = EdgeSet::new(g.m());
    let mut seen = vec![false; g.n()];
    let emit = |out: &mut W, a: NodeId, b: NodeId, written: &mut EdgeSet| -> fmt::Result {
        let e = g.edge_id(a, b).expect("edge exists");
        written.insert(e);
        writeln!(out, "{} {}", g.label(a), g.label(b))
    };
    for v in 0..g.n() {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        if let Some(&w) = g.neighbors(v).first().filter(|&&w| w < v) {
            emit(out, w, v, &mut written)?;
        } else if let Some(&w) = g.neighbors(v).first() {
            // Introduces the smallest neighbor right after `v`.
            emit(out, v, w, &mut written)?;
            seen[w] = true;
        }
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if !written.contains(e) {
            writeln!(out, "{} {}", g.label(u), g.label(v))?;
        }
    }
    Ok(())
}

/// A set of edge ids, stored as a bitset.
#[derive(Clone, PartialEq, Eq)]
pub struct EdgeSet {
    bits: Vec<u64>,
    universe: usize,
    len: usize,
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl EdgeSet {
    /// An empty set over edge ids `0..m`.
    pub fn new(m: usize) -> Self {
        EdgeSet {
            bits: vec![0; m.div_ceil(64)],
            universe: m,
            len: 0,
        }
    }

    pub fn from_ids<I: IntoIterator<Item = EdgeId>>(m: usize, ids: I) -> Self {
        let mut set = Self::new(m);
        for e in ids {
            set.insert(e);
        }
        set
    }

    /// Inserts `e`, returning whether it was absent.
    #[inline]
    pub fn insert(&mut self, e: EdgeId) -> bool {
        assert!(e < self.universe, "edge id {e} out of range");
        let (w, b) = (e / 64, e % 64);
        let fresh = self.bits[w] & (1 << b) == 0;
        self.bits[w] |= 1 << b;
        self.len += fresh as usize;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, e: EdgeId) -> bool {
        let (w, b) = (e / 64, e % 64);
        let present = self.bits[w] & (1 << b) != 0;
        self.bits[w] &= !(1 << b);
        self.len -= present as usize;
        present
    }

    #[inline]
    pub fn contains(&self, e: EdgeId) -> bool {
        e < self.universe && self.bits[e / 64] & (1 << (e % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Size of the id universe this set was created for.
    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            core::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            })
        })
    }
}
