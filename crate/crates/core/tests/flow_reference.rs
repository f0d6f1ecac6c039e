use std::collections::VecDeque;

use cdel_core::flow::{Capacity, FlowNetwork};
use proptest::prelude::*;

/// Plain Edmonds–Karp on an adjacency matrix.
fn edmonds_karp(n: usize, s: usize, t: usize, arcs: &[(usize, usize, Capacity)]) -> Capacity {
    let mut cap = vec![vec![0 as Capacity; n]; n];
    for &(u, v, c) in arcs {
        cap[u][v] += c;
    }
    let mut total = 0;
    loop {
        let mut parent = vec![usize::MAX; n];
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if parent[v] == usize::MAX && cap[u][v] > 0 {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[t] == usize::MAX {
            return total;
        }
        let mut bottleneck = Capacity::MAX;
        let mut v = t;
        while v != s {
            bottleneck = bottleneck.min(cap[parent[v]][v]);
            v = parent[v];
        }
        let mut v = t;
        while v != s {
            let u = parent[v];
            cap[u][v] -= bottleneck;
            cap[v][u] += bottleneck;
            v = u;
        }
        total += bottleneck;
    }
}

fn arb_network() -> impl Strategy<Value = (usize, Vec<(usize, usize, Capacity)>)> {
    (2usize..10).prop_flat_map(|n| {
        let arc = (0..n, 0..n, 0 as Capacity..20);
        (Just(n), proptest::collection::vec(arc, 0..40))
    })
}

proptest! {
    #[test]
    fn matches_edmonds_karp((n, arcs) in arb_network()) {
        let mut net = FlowNetwork::new(n, 0, n - 1).unwrap();
        let ids: Vec<_> = arcs.iter().map(|&(u, v, c)| net.add_arc(u, v, c).unwrap()).collect();
        let cut = net.max_flow_min_cut();
        prop_assert_eq!(cut.flow_value, edmonds_karp(n, 0, n - 1, &arcs));

        // Strong duality: the reported side is a minimum cut.
        prop_assert!(cut.contains(0));
        prop_assert!(!cut.contains(n - 1));
        prop_assert_eq!(net.cut_capacity(&cut.source_side), cut.flow_value);

        // Capacity bounds and conservation.
        let mut balance = vec![0 as Capacity; n];
        for (&id, &(u, v, c)) in ids.iter().zip(&arcs) {
            let f = net.flow(id).unwrap();
            prop_assert!((0..=c).contains(&f));
            balance[u] -= f;
            balance[v] += f;
        }
        for (v, &b) in balance.iter().enumerate() {
            if v != 0 && v != n - 1 {
                prop_assert_eq!(b, 0, "node {}", v);
            }
        }
        prop_assert_eq!(balance[n - 1], cut.flow_value);
    }
}

#[test]
fn repeated_solve_is_cached() {
    let mut net = FlowNetwork::new(3, 0, 2).unwrap();
    net.add_arc(0, 1, 5).unwrap();
    net.add_arc(1, 2, 3).unwrap();
    let first = net.max_flow_min_cut();
    assert_eq!(first.flow_value, 3);
    assert_eq!(net.max_flow_min_cut(), first);
    assert!(net.add_arc(0, 2, 1).is_err());
}

#[test]
fn layered_network_with_long_paths() {
    // A long chain with side branches exercises relabeling and the gap rule.
    let len = 300;
    let mut arcs = Vec::new();
    for v in 0..len - 1 {
        arcs.push((v, v + 1, 10 + (v % 7) as Capacity));
        if v + 5 < len {
            arcs.push((v, v + 5, 3));
        }
    }
    let mut net = FlowNetwork::new(len, 0, len - 1).unwrap();
    for &(u, v, c) in &arcs {
        net.add_arc(u, v, c).unwrap();
    }
    let cut = net.max_flow_min_cut();
    assert_eq!(net.cut_capacity(&cut.source_side), cut.flow_value);
    assert_eq!(cut.flow_value, edmonds_karp(len, 0, len - 1, &arcs));
}
