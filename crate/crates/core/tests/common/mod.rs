#![allow(dead_code)]

use cdel_core::Graph;
use proptest::prelude::*;

/// Graphs on `1..=max_n` nodes, each pair an edge with probability ~ density.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| from_bits(n, &bits))
    })
}

/// Graphs with at most `max_m` edges.
pub fn arb_small_graph(max_n: usize, max_m: usize) -> impl Strategy<Value = Graph> {
    arb_graph(max_n).prop_map(move |g| {
        let kept: Vec<_> = g.edges().iter().copied().take(max_m).collect();
        Graph::from_edges(g.n(), kept)
    })
}

pub fn from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut idx = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[idx] {
                edges.push((u, v));
            }
            idx += 1;
        }
    }
    Graph::from_edges(n, edges)
}

pub fn count_triangles(g: &Graph) -> u64 {
    let mut t = 0;
    for &(u, v) in g.edges() {
        t += g.neighbors(u).iter().filter(|&&w| w > v && g.has_edge(v, w)).count() as u64;
    }
    t
}
