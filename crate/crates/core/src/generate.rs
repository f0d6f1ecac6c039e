//! Graph generators: small fixtures, the MFP tight instance and seeded
//! Erdős–Rényi graphs.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, NodeId, OpenWedge};

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum GenerateError {
    #[error("tight instance needs an even node count of at least 8, got {0}")]
    TightInstanceSize(usize),
    #[error("edge probability {0} is outside [0, 1]")]
    Probability(f64),
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// Star with center 0 and leaves `1..=leaves`.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
}

/// `count` disjoint copies of the 3-node path; copy `c` is `3c - 3c+1 - 3c+2`.
pub fn disjoint_paths3(count: usize) -> Graph {
    Graph::from_edges(3 * count, (0..count).flat_map(|c| [(3 * c, 3 * c + 1), (3 * c + 1, 3 * c + 2)]))
}

/// The MFP tight instance: a clique on `v_1..v_h` (`h = n/2`, ids `0..h`)
/// with a pendant `u_i` (id `h + i - 1`) on each `v_i`.
#[derive(Debug, Clone)]
pub struct TightInstance {
    pub graph: Graph,
    /// The wedges `(v_i, u_{i+1}, v_{i+1})`, indices taken cyclically.
    pub canonical_wedges: Vec<OpenWedge>,
    /// Optimal deletion cost `n/2` (cut every pendant).
    pub opt: u64,
}

impl TightInstance {
    pub fn v(&self, i: usize) -> NodeId {
        i - 1
    }

    pub fn u(&self, i: usize) -> NodeId {
        self.graph.n() / 2 + i - 1
    }

    /// Deletions MFP makes with the canonical wedges: `3n/2 - 4`.
    pub fn mfp_cost(&self) -> u64 {
        3 * self.graph.n() as u64 / 2 - 4
    }
}

pub fn theorem2_graph(n: usize) -> Result<TightInstance, GenerateError> {
    if n < 8 || !n.is_multiple_of(2) {
        return Err(GenerateError::TightInstanceSize(n));
    }
    let h = n / 2;
    let mut edges: Vec<(NodeId, NodeId)> = (0..h).flat_map(|a| (a + 1..h).map(move |b| (a, b))).collect();
    edges.extend((0..h).map(|i| (i, h + i)));
    let graph = Graph::from_edges(n, edges);
    let canonical_wedges = (0..h)
        .map(|i| {
            let next = (i + 1) % h;
            OpenWedge::new(i, h + next, next)
        })
        .collect();
    Ok(TightInstance {
        graph,
        canonical_wedges,
        opt: h as u64,
    })
}

/// Shorthand for tests; panics on invalid `n`.
pub fn theorem2(n: usize) -> TightInstance {
    theorem2_graph(n).expect("valid tight-instance size")
}

/// Seeded `G(n, p)`, sampled with geometric skips so the cost is
/// proportional to the number of edges.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph, GenerateError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenerateError::Probability(p));
    }
    if p == 0.0 || n < 2 {
        return Ok(Graph::from_edges(n, []));
    }
    if p == 1.0 {
        return Ok(complete(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let log_q = libm::log(1.0 - p);
    let mut edges = Vec::new();
    let (mut v, mut w): (usize, i64) = (1, -1);
    while v < n {
        let r: f64 = rng.random();
        let skip = libm::floor(libm::log(1.0 - r) / log_q);
        w += 1 + skip as i64;
        while v < n && w >= v as i64 {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((w as usize, v));
        }
    }
    Ok(Graph::from_edges(n, edges))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tight_instance_shape() {
        let t = theorem2(8);
        assert_eq!(t.graph.n(), 8);
        assert_eq!(t.graph.m(), 6 + 4);
        assert_eq!(t.opt, 4);
        assert_eq!(t.mfp_cost(), 8);
        assert!(t.graph.has_edge(t.v(1), t.u(1)));
        assert!(!t.graph.has_edge(t.v(1), t.u(2)));
        for w in &t.canonical_wedges {
            assert!(t.graph.is_open_wedge(w));
        }
        assert_eq!(theorem2(12).opt, 6);
    }

    #[test]
    fn tight_instance_rejects_bad_sizes() {
        assert_eq!(theorem2_graph(7).unwrap_err(), GenerateError::TightInstanceSize(7));
        assert_eq!(theorem2_graph(6).unwrap_err(), GenerateError::TightInstanceSize(6));
    }

    #[test]
    fn er_extremes_and_seeds() {
        assert_eq!(erdos_renyi(10, 0.0, 1).unwrap().m(), 0);
        assert_eq!(erdos_renyi(10, 1.0, 1).unwrap().m(), 45);
        assert!(erdos_renyi(10, 1.5, 1).is_err());
        let a = erdos_renyi(200, 0.05, 9).unwrap();
        assert_eq!(a, erdos_renyi(200, 0.05, 9).unwrap());
        assert_ne!(a, erdos_renyi(200, 0.05, 10).unwrap());
    }

    #[test]
    fn er_density_is_close_to_p() {
        let n = 2000;
        let g = erdos_renyi(n, 0.01, 4).unwrap();
        let expected = 0.01 * (n * (n - 1) / 2) as f64;
        let sd = libm::sqrt(expected * 0.99);
        assert!((g.m() as f64 - expected).abs() < 5.0 * sd, "m = {}", g.m());
    }
}
