mod common;

use cdel_core::generate;
use cdel_core::oracle::{exact_cluster_deletion, exact_min_stc, exact_stc_lp, gallai_graph};
use cdel_core::pipeline::{clusters_are_cliques, deletion_set};
use cdel_core::{Clustering, Graph};
use proptest::prelude::*;

/// Exhaustive search over all set partitions (restricted growth strings).
fn partition_brute_force(g: &Graph) -> u64 {
    fn rec(g: &Graph, labels: &mut Vec<usize>, next: usize, best: &mut u64) {
        let v = labels.len();
        if v == g.n() {
            let c = Clustering::from_assignment(labels);
            if clusters_are_cliques(g, &c) {
                *best = (*best).min(deletion_set(g, &c).len() as u64);
            }
            return;
        }
        for label in 0..=next {
            labels.push(label);
            rec(g, labels, next.max(label + 1), best);
            labels.pop();
        }
    }
    let mut best = u64::MAX;
    rec(g, &mut Vec::new(), 0, &mut best);
    best
}

proptest! {
    #[test]
    fn cluster_deletion_matches_partition_search(g in common::arb_graph(8)) {
        let (opt, clustering) = exact_cluster_deletion(&g).unwrap();
        prop_assert_eq!(opt, partition_brute_force(&g));
        prop_assert!(clusters_are_cliques(&g, &clustering));
        prop_assert_eq!(deletion_set(&g, &clustering).len() as u64, opt);
    }

    #[test]
    fn min_stc_matches_subset_search(g in common::arb_small_graph(8, 14)) {
        let m = g.m();
        let mut best = m as u64;
        for mask in 0u32..1 << m {
            let mut ok = true;
            g.for_each_open_wedge_with_edges(|_, a, b| ok &= mask >> a & 1 == 1 || mask >> b & 1 == 1);
            if ok {
                best = best.min(mask.count_ones() as u64);
            }
        }
        prop_assert_eq!(exact_min_stc(&g).unwrap(), best);
    }

    #[test]
    fn gallai_degree_counts_wedges(g in common::arb_graph(10)) {
        let h = gallai_graph(&g);
        prop_assert_eq!(h.n(), g.m());
        prop_assert_eq!(h.m() as u64, g.count_open_wedges());
    }
}

#[test]
fn documented_examples() {
    let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]);
    assert_eq!(exact_cluster_deletion(&p3).unwrap().0, 1);
    assert_eq!(exact_cluster_deletion(&generate::complete(4)).unwrap().0, 0);
    let t8 = generate::theorem2(8);
    assert_eq!(exact_cluster_deletion(&t8.graph).unwrap().0, t8.opt);
    let t12 = generate::theorem2(12);
    assert_eq!(exact_cluster_deletion(&t12.graph).unwrap().0, t12.opt);
    assert_eq!(exact_min_stc(&generate::star(3)).unwrap(), 2);
    assert_eq!(exact_stc_lp(&generate::star(3)).unwrap(), 3);
    assert_eq!(exact_stc_lp(&p3).unwrap(), 2);
}
