//! Exponential-time reference solvers for small graphs.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::graph::{EdgeId, Graph};
use crate::pivot::Clustering;

pub const DEFAULT_CD_NODE_LIMIT: usize = 14;
pub const DEFAULT_STC_EDGE_LIMIT: usize = 24;
pub const STC_LP_EDGE_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{what} oracle limited to {limit}, input has {size}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
}

fn guard(what: &'static str, size: usize, limit: usize) -> Result<(), OracleError> {
    if size > limit {
        Err(OracleError::TooLarge { what, size, limit })
    } else {
        Ok(())
    }
}

/// Optimal cluster deletion cost and one optimal clustering, for `n <= 14`.
pub fn exact_cluster_deletion(g: &Graph) -> Result<(u64, Clustering), OracleError> {
    exact_cluster_deletion_with_limit(g, DEFAULT_CD_NODE_LIMIT)
}

/// As [`exact_cluster_deletion`] with a custom node limit (at most 32).
pub fn exact_cluster_deletion_with_limit(g: &Graph, limit: usize) -> Result<(u64, Clustering), OracleError> {
    guard("cluster deletion", g.n(), limit.min(32))?;
    let n = g.n();
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |acc, &u| acc | 1 << u))
        .collect();
    let mut solver = CdSolver {
        adj: &adj,
        memo: HashMap::new(),
    };
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let opt = solver.solve(full);

    let mut clusters = Vec::new();
    let mut rest = full;
    while rest != 0 {
        let block = solver.memo[&rest].1;
        clusters.push((0..n).filter(|&v| block >> v & 1 == 1).collect());
        rest &= !block;
    }
    Ok((opt, Clustering::from_clusters(n, clusters)))
}

struct CdSolver<'a> {
    adj: &'a [u32],
    /// Remaining set -> (cost, first block of an optimal partition).
    memo: HashMap<u32, (u64, u32)>,
}

impl CdSolver<'_> {
    fn solve(&mut self, rest: u32) -> u64 {
        if rest == 0 {
            return 0;
        }
        if let Some(&(cost, _)) = self.memo.get(&rest) {
            return cost;
        }
        let v = rest.trailing_zeros() as usize;
        let mut blocks = Vec::new();
        cliques_through(self.adj, 1 << v, self.adj[v] & rest, &mut blocks);
        let mut best = (u64::MAX, 0);
        for block in blocks {
            let remaining = rest & !block;
            let cut: u64 = ones(block).map(|u| (self.adj[u] & remaining).count_ones() as u64).sum();
            if cut >= best.0 {
                continue;
            }
            let cost = cut + self.solve(remaining);
            if cost < best.0 {
                best = (cost, block);
            }
        }
        self.memo.insert(rest, best);
        best.0
    }
}

fn ones(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&b| mask >> b & 1 == 1)
}

/// Every clique `clique ∪ S` with `S ⊆ cand`, where all of `cand` is
/// adjacent to all of `clique`.
fn cliques_through(adj: &[u32], clique: u32, cand: u32, out: &mut Vec<u32>) {
    out.push(clique);
    let mut rest = cand;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        cliques_through(adj, clique | 1 << u, rest & adj[u], out);
    }
}

fn wedge_edge_pairs(g: &Graph) -> Vec<(EdgeId, EdgeId)> {
    let mut pairs = Vec::new();
    g.for_each_open_wedge_with_edges(|_, a, b| pairs.push((a, b)));
    pairs
}

/// Minimum number of weak edges in an STC labeling, for `m <= 24`.
pub fn exact_min_stc(g: &Graph) -> Result<u64, OracleError> {
    exact_min_stc_with_limit(g, DEFAULT_STC_EDGE_LIMIT)
}

pub fn exact_min_stc_with_limit(g: &Graph, limit: usize) -> Result<u64, OracleError> {
    guard("MinSTC", g.m(), limit)?;
    let pairs = wedge_edge_pairs(g);
    let mut state = vec![Label::Free; g.m()];
    let mut best = g.m() as u64;
    stc_branch(&pairs, &mut state, 0, &mut best);
    Ok(best)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Label {
    Free,
    Weak,
    Strong,
}

fn stc_branch(pairs: &[(EdgeId, EdgeId)], state: &mut [Label], weak: u64, best: &mut u64) {
    if weak >= *best {
        return;
    }
    let open = pairs
        .iter()
        .find(|&&(a, b)| state[a] != Label::Weak && state[b] != Label::Weak);
    let Some(&(a, b)) = open else {
        *best = weak;
        return;
    };
    // Either `a` is weak, or `a` stays strong and `b` must be weak.
    for (first, second) in [(a, b), (b, a)] {
        if state[first] == Label::Free {
            state[first] = Label::Weak;
            stc_branch(pairs, state, weak + 1, best);
            state[first] = Label::Strong;
            if state[second] == Label::Free {
                state[second] = Label::Weak;
                stc_branch(pairs, state, weak + 1, best);
                state[second] = Label::Free;
            }
            state[first] = Label::Free;
            return;
        }
    }
    // Both endpoints already fixed strong: this branch is infeasible.
}

/// Optimum of the half-integral STC LP in half units, by enumerating
/// `{0, 1, 2}^m`; `m <= 12`.
pub fn exact_stc_lp(g: &Graph) -> Result<u64, OracleError> {
    guard("STC LP", g.m(), STC_LP_EDGE_LIMIT)?;
    let pairs = wedge_edge_pairs(g);
    // Constraints become checkable once their later edge is assigned.
    let mut due: Vec<Vec<(EdgeId, EdgeId)>> = vec![Vec::new(); g.m()];
    for &(a, b) in &pairs {
        due[a.max(b)].push((a, b));
    }
    let mut values = vec![0u8; g.m()];
    let mut best = 2 * g.m() as u64 + 1;
    lp_dfs(&due, &mut values, 0, 0, &mut best);
    Ok(best)
}

fn lp_dfs(due: &[Vec<(EdgeId, EdgeId)>], values: &mut [u8], e: usize, cost: u64, best: &mut u64) {
    if cost >= *best {
        return;
    }
    if e == values.len() {
        *best = cost;
        return;
    }
    for x in 0..=2u8 {
        values[e] = x;
        if due[e].iter().all(|&(a, b)| values[a] + values[b] >= 2) {
            lp_dfs(due, values, e + 1, cost + x as u64, best);
        }
    }
    values[e] = 0;
}

/// One node per edge of `g`, joined when the two edges form an open wedge.
pub fn gallai_graph(g: &Graph) -> Graph {
    Graph::from_edges(g.m(), wedge_edge_pairs(g))
}

/// Minimum vertex cover size by branching on a vertex of maximum degree
/// (take it, or take all its neighbors); at most 64 nodes.
pub fn min_vertex_cover(h: &Graph) -> Result<u64, OracleError> {
    guard("vertex cover", h.n(), 64)?;
    let adj: Vec<u64> = (0..h.n())
        .map(|v| h.neighbors(v).iter().fold(0u64, |acc, &u| acc | 1 << u))
        .collect();
    let all = if h.n() == 64 { u64::MAX } else { (1u64 << h.n()) - 1 };
    Ok(vc(&adj, all) as u64)
}

fn vc(adj: &[u64], live: u64) -> u32 {
    let mut pick = None;
    let mut best_deg = 0;
    let mut rest = live;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (adj[v] & live).count_ones();
        if d > best_deg {
            best_deg = d;
            pick = Some(v);
        }
    }
    let Some(v) = pick else {
        return 0;
    };
    let nbrs = adj[v] & live;
    let take_v = 1 + vc(adj, live & !(1 << v));
    let take_nbrs = nbrs.count_ones() + vc(adj, live & !nbrs & !(1 << v));
    take_v.min(take_nbrs)
}
