mod common;

use cdel_core::generate;
use cdel_core::pivot::{pivot, PivotStrategy};
use cdel_core::Graph;
use proptest::prelude::*;

fn nonedges_inside(g: &Graph, cluster: &[usize]) -> u64 {
    let c = cluster.len() as u64;
    let mut inside = 0;
    for (a, &u) in cluster.iter().enumerate() {
        for &v in &cluster[a + 1..] {
            inside += g.has_edge(u, v) as u64;
        }
    }
    c * (c - 1) / 2 - inside
}

fn strategies() -> impl Strategy<Value = PivotStrategy> {
    prop_oneof![
        Just(PivotStrategy::Degree),
        Just(PivotStrategy::Ratio),
        any::<u64>().prop_map(|seed| PivotStrategy::Random { seed }),
    ]
}

proptest! {
    #[test]
    fn audit_matches_final_clustering(g in common::arb_graph(14), strategy in strategies()) {
        let (clustering, audit) = pivot(&g, strategy);
        let between = g.edges().iter().filter(|&&(u, v)| !clustering.same_cluster(u, v)).count() as u64;
        let inside: u64 = clustering.clusters().iter().map(|c| nonedges_inside(&g, c)).sum();
        prop_assert_eq!(audit.boundary_edges, between);
        prop_assert_eq!(audit.internal_nonedges, inside);
        prop_assert_eq!(audit.steps.len(), clustering.len());
        prop_assert_eq!(audit.steps.iter().map(|s| s.cluster_size).sum::<usize>(), g.n());
        for (step, members) in audit.steps.iter().zip(clustering.clusters()) {
            prop_assert_eq!(members[0], step.pivot);
            prop_assert!(members.iter().skip(1).all(|&v| g.has_edge(step.pivot, v)));
        }
    }

    #[test]
    fn deterministic_strategies_keep_lemma_bound(g in common::arb_graph(14)) {
        for strategy in [PivotStrategy::Degree, PivotStrategy::Ratio] {
            let (_, audit) = pivot(&g, strategy);
            prop_assert!(audit.boundary_edges <= 2 * audit.internal_nonedges,
                "{:?}: B={} N={}", strategy, audit.boundary_edges, audit.internal_nonedges);
        }
        let (_, audit) = pivot(&g, PivotStrategy::Ratio);
        for step in &audit.steps {
            prop_assert!(step.boundary <= 2 * step.nonedges);
        }
    }

    #[test]
    fn random_strategy_is_reproducible(g in common::arb_graph(14), seed in any::<u64>()) {
        let a = pivot(&g, PivotStrategy::Random { seed });
        let b = pivot(&g, PivotStrategy::Random { seed });
        prop_assert_eq!(a, b);
    }
}

#[test]
fn degree_picks_hub_first() {
    let g = generate::star(5);
    let (clustering, audit) = pivot(&g, PivotStrategy::Degree);
    assert_eq!(clustering.len(), 1);
    assert_eq!(audit.steps[0].pivot, 0);
    assert_eq!(audit.internal_nonedges, 10);
    assert_eq!(audit.boundary_edges, 0);
}
