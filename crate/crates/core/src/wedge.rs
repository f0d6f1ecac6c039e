//! Maximal edge-disjoint sets of open wedges.
//!
//! Both matchers visit centers in ascending id order. The simple matcher
//! tries every pair of live neighbors of the center. The fast matcher walks
//! the same pairs through a `next` array that splices matched edges out of
//! the traversal, so every inspected pair is either a new wedge or a
//! triangle; with O(1) adjacency tests this gives O(m^1.5) time and O(m)
//! space.

use alloc::vec::Vec;

use crate::graph::{EdgeId, EdgeSet, Graph, NodeId, OpenWedge};

/// An edge-disjoint set of open wedges and the edges they cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeSet {
    pub wedges: Vec<OpenWedge>,
    /// The edges of all listed wedges (the weak edges `E_W`).
    pub weak: EdgeSet,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WedgeError {
    #[error("({}, {}, {}) is not an open wedge of the graph", .0.i, .0.j, .0.k)]
    NotAWedge(OpenWedge),
    #[error("wedges overlap on an edge")]
    NotDisjoint,
}

impl WedgeSet {
    pub fn empty(g: &Graph) -> Self {
        WedgeSet {
            wedges: Vec::new(),
            weak: EdgeSet::new(g.m()),
        }
    }

    /// Builds a set from explicit wedges, rejecting non-wedges and overlaps.
    /// Maximality is not checked; see [`verify_wedge_set`].
    pub fn from_wedges(g: &Graph, wedges: Vec<OpenWedge>) -> Result<Self, WedgeError> {
        let mut weak = EdgeSet::new(g.m());
        for w in &wedges {
            if !g.is_open_wedge(w) {
                return Err(WedgeError::NotAWedge(*w));
            }
            for (u, v) in w.edges() {
                if !weak.insert(g.edge_id(u, v).expect("wedge edge")) {
                    return Err(WedgeError::NotDisjoint);
                }
            }
        }
        Ok(WedgeSet { wedges, weak })
    }

    pub fn len(&self) -> usize {
        self.wedges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.wedges.is_empty()
    }
}

/// Work counters from one matcher run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MatchStats {
    /// Neighbor pairs tested for adjacency.
    pub pair_inspections: u64,
    /// Inspections that found a triangle.
    pub triangle_inspections: u64,
}

fn live_neighbors(g: &Graph, v: NodeId, weak: &EdgeSet, out: &mut Vec<(NodeId, EdgeId)>) {
    out.clear();
    out.extend(
        g.neighbors(v)
            .iter()
            .zip(g.neighbor_edges(v))
            .filter(|(_, &e)| !weak.contains(e))
            .map(|(&u, &e)| (u, e)),
    );
}

/// The O(Σ d²) matcher: for each center, scan pairs of live neighbors in
/// lexicographic order and take every open wedge that is still disjoint.
pub fn maximal_wedge_set_simple(g: &Graph) -> WedgeSet {
    maximal_wedge_set_simple_with_stats(g).0
}

pub fn maximal_wedge_set_simple_with_stats(g: &Graph) -> (WedgeSet, MatchStats) {
    let mut set = WedgeSet::empty(g);
    let mut stats = MatchStats::default();
    let mut live = Vec::new();
    let mut alive = Vec::new();
    for v in 0..g.n() {
        live_neighbors(g, v, &set.weak, &mut live);
        alive.clear();
        alive.resize(live.len(), true);
        for a in 0..live.len() {
            if !alive[a] {
                continue;
            }
            for b in a + 1..live.len() {
                if !alive[b] {
                    continue;
                }
                stats.pair_inspections += 1;
                let ((u, eu), (w, ew)) = (live[a], live[b]);
                if g.has_edge(u, w) {
                    stats.triangle_inspections += 1;
                    continue;
                }
                set.weak.insert(eu);
                set.weak.insert(ew);
                set.wedges.push(OpenWedge::new(u, w, v));
                alive[a] = false;
                alive[b] = false;
                break;
            }
        }
    }
    (set, stats)
}

const NIL: usize = usize::MAX;

/// The O(m^1.5) matcher.
pub fn maximal_wedge_set_fast(g: &Graph) -> WedgeSet {
    maximal_wedge_set_fast_with_stats(g).0
}

pub fn maximal_wedge_set_fast_with_stats(g: &Graph) -> (WedgeSet, MatchStats) {
    let mut set = WedgeSet::empty(g);
    let mut stats = MatchStats::default();
    let mut live = Vec::new();
    let mut next = Vec::new();
    for v in 0..g.n() {
        live_neighbors(g, v, &set.weak, &mut live);
        if live.len() < 2 {
            continue;
        }
        next.clear();
        next.extend(1..live.len());
        next.push(NIL);

        let mut cursor = Cursor { i: 0, j: 1, j_old: 0 };
        loop {
            let ((u, eu), (w, ew)) = (live[cursor.i], live[cursor.j]);
            stats.pair_inspections += 1;
            let finished = if g.has_edge(u, w) {
                stats.triangle_inspections += 1;
                cursor.triangle_increment(&next)
            } else {
                set.weak.insert(eu);
                set.weak.insert(ew);
                set.wedges.push(OpenWedge::new(u, w, v));
                cursor.open_wedge_increment(&mut next)
            };
            if finished {
                break;
            }
        }
    }
    (set, stats)
}

/// Indices into the live-neighbor array of the current center. The pair
/// `(i, j)` is under inspection and `next[j_old] == j`.
struct Cursor {
    i: usize,
    j: usize,
    j_old: usize,
}

impl Cursor {
    /// Advances past a closed pair. Returns true when the center is done.
    fn triangle_increment(&mut self, next: &[usize]) -> bool {
        if next[self.j] != NIL {
            self.j_old = self.j;
            self.j = next[self.j];
        } else if next[self.i] != self.j {
            self.i = next[self.i];
            self.j = next[self.i];
            self.j_old = self.i;
        } else {
            return true;
        }
        false
    }

    /// Splices `j` out of future traversal and moves `i` forward (the old
    /// `i` is never revisited). Returns true when the center is done.
    fn open_wedge_increment(&mut self, next: &mut [usize]) -> bool {
        next[self.j_old] = next[self.j];
        self.i = next[self.i];
        if self.i == NIL || next[self.i] == NIL {
            return true;
        }
        self.j = next[self.i];
        self.j_old = self.i;
        false
    }
}

/// Checks that `ws` is an edge-disjoint set of open wedges of `g`, that
/// `ws.weak` is exactly the union of their edges, and that every open wedge
/// of `g` touches `ws.weak`.
pub fn verify_wedge_set(g: &Graph, ws: &WedgeSet) -> bool {
    if ws.weak.universe() != g.m() {
        return false;
    }
    let mut union = EdgeSet::new(g.m());
    for w in &ws.wedges {
        if w.i >= g.n() || w.j >= g.n() || w.k >= g.n() || !g.is_open_wedge(w) {
            return false;
        }
        for (u, v) in w.edges() {
            let e = g.edge_id(u, v).expect("wedge edge");
            if !union.insert(e) {
                return false;
            }
        }
    }
    if union != ws.weak {
        return false;
    }
    let mut maximal = true;
    g.for_each_open_wedge_with_edges(|_, a, b| {
        maximal &= ws.weak.contains(a) || ws.weak.contains(b);
    });
    maximal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    fn path3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)])
    }

    #[test]
    fn path_has_unique_set() {
        let g = path3();
        for ws in [maximal_wedge_set_simple(&g), maximal_wedge_set_fast(&g)] {
            assert_eq!(ws.wedges, [OpenWedge { i: 0, j: 2, k: 1 }]);
            assert_eq!(ws.weak.len(), 2);
            assert!(verify_wedge_set(&g, &ws));
        }
    }

    #[test]
    fn triangle_has_none() {
        let g = generate::complete(3);
        assert!(maximal_wedge_set_simple(&g).is_empty());
        assert!(maximal_wedge_set_fast(&g).is_empty());
    }

    #[test]
    fn star_takes_one_wedge() {
        let g = generate::star(3);
        for ws in [maximal_wedge_set_simple(&g), maximal_wedge_set_fast(&g)] {
            assert_eq!(ws.len(), 1);
            assert_eq!(ws.weak.len(), 2);
            assert!(verify_wedge_set(&g, &ws));
        }
    }

    #[test]
    fn verifier_rejects_bad_sets() {
        let g = path3();
        assert!(!verify_wedge_set(&g, &WedgeSet::empty(&g)));

        let star = generate::star(3);
        let mut weak = EdgeSet::new(3);
        for e in 0..3 {
            weak.insert(e);
        }
        let overlapping = WedgeSet {
            wedges: vec![OpenWedge::new(1, 2, 0), OpenWedge::new(1, 3, 0)],
            weak,
        };
        assert!(!verify_wedge_set(&star, &overlapping));
        assert_eq!(
            WedgeSet::from_wedges(&star, overlapping.wedges.clone()),
            Err(WedgeError::NotDisjoint)
        );

        let not_wedge = vec![OpenWedge::new(0, 2, 1)];
        let tri = generate::complete(3);
        assert!(matches!(
            WedgeSet::from_wedges(&tri, not_wedge),
            Err(WedgeError::NotAWedge(_))
        ));
    }

    #[test]
    fn fast_matcher_splices_matched_edges() {
        // Center 0 with neighbors 1..=4 where 1-2 is the only chord: the
        // pair (1,2) is a triangle, (1,3) a wedge, then (2,4) a wedge.
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2)]);
        let (ws, stats) = maximal_wedge_set_fast_with_stats(&g);
        assert_eq!(ws.wedges, [OpenWedge::new(1, 3, 0), OpenWedge::new(2, 4, 0)]);
        assert_eq!(stats.pair_inspections, 3);
        assert_eq!(stats.triangle_inspections, 1);
        assert!(verify_wedge_set(&g, &ws));
    }
}
