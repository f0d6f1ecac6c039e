mod common;

use cdel_core::generate;
use cdel_core::oracle::exact_cluster_deletion;
use cdel_core::pipeline::{
    clusters_are_cliques, deletion_set, match_flip_pivot, merge_clusters, pass_limit, stc_lp_round, LowerBound,
    Matcher, WedgeSource,
};
use cdel_core::{PivotStrategy, WedgeSet};
use proptest::prelude::*;

fn strategies(seed: u64) -> [PivotStrategy; 3] {
    [PivotStrategy::Degree, PivotStrategy::Ratio, PivotStrategy::Random { seed }]
}

proptest! {
    #[test]
    fn mfp_guarantees(g in common::arb_graph(10), seed in any::<u64>(), simple in any::<bool>()) {
        let matcher = if simple { Matcher::Simple } else { Matcher::Fast };
        let opt = exact_cluster_deletion(&g).unwrap().0;
        for strategy in strategies(seed) {
            let r = match_flip_pivot(&g, strategy, WedgeSource::Matcher(matcher)).unwrap();
            let w = r.wedges.unwrap();
            prop_assert!(clusters_are_cliques(&g, &r.clustering));
            prop_assert_eq!(r.deletions, deletion_set(&g, &r.clustering).len() as u64);
            prop_assert_eq!(r.deletions, r.m_w.unwrap() + r.m_s);
            prop_assert!(2 * r.m_w.unwrap() >= r.weak_edges());
            prop_assert!(w <= opt);
            prop_assert!(r.deletions >= opt);
            if strategy.is_deterministic() {
                prop_assert!(r.deletions <= 3 * w);
                prop_assert!(r.ratio().at_most(3, 1));
            }
        }
    }

    #[test]
    fn lp_rounding_guarantees(g in common::arb_graph(10), seed in any::<u64>()) {
        let opt = exact_cluster_deletion(&g).unwrap().0;
        for strategy in strategies(seed) {
            let r = stc_lp_round(&g, strategy, None).unwrap();
            let b = r.rounding.unwrap();
            let lp = r.lp_value_half_units.unwrap();
            prop_assert!(clusters_are_cliques(&g, &r.clustering));
            prop_assert_eq!(r.deletions, b.m_1 + b.b_half + r.m_s);
            prop_assert_eq!(b.b_half + b.n_half, b.eh);
            prop_assert_eq!(2 * b.e1 + b.eh, lp);
            prop_assert!(2 * b.n_half <= b.eh);
            prop_assert!(lp <= 2 * opt);
            if strategy.is_deterministic() {
                prop_assert!(2 * r.deletions <= 3 * lp);
                prop_assert!(r.deletions <= 3 * opt);
            }
        }
    }

    #[test]
    fn merge_is_safe(g in common::arb_graph(12), seed in any::<u64>()) {
        let bound = LowerBound::wedges(&g, WedgeSource::Matcher(Matcher::Fast), &()).unwrap();
        let mut r = bound.round(&g, PivotStrategy::Random { seed }, &());
        let before = r.deletions;
        let outcome = bound.merge(&g, &mut r, &mut pass_limit(usize::MAX), &());
        prop_assert!(outcome.fixpoint);
        prop_assert!(r.merged);
        prop_assert!(clusters_are_cliques(&g, &r.clustering));
        prop_assert!(r.deletions <= before);
        prop_assert_eq!(r.deletions, deletion_set(&g, &r.clustering).len() as u64);
        let again = merge_clusters(&g, &r.clustering, &mut pass_limit(usize::MAX));
        prop_assert_eq!(again.merges, 0);
        prop_assert_eq!(again.clustering, r.clustering);
    }
}

#[test]
fn tight_instance_ratio_approaches_three() {
    let mut last = 0.0;
    for n in [8, 12, 20, 40, 80] {
        let t = generate::theorem2(n);
        let ws = WedgeSet::from_wedges(&t.graph, t.canonical_wedges.clone()).unwrap();
        for strategy in strategies(n as u64) {
            let r = match_flip_pivot(&t.graph, strategy, WedgeSource::Injected(&ws)).unwrap();
            assert_eq!(r.deletions, t.mfp_cost(), "n={n} {strategy:?}");
        }
        let ratio = t.mfp_cost() as f64 / t.opt as f64;
        assert!((ratio - (3.0 - 8.0 / n as f64)).abs() < 1e-12);
        assert!(ratio > last);
        last = ratio;
    }
}

#[test]
fn merge_reaches_full_clique_on_tight_instance() {
    // Pivoting with canonical wedges splits the clique; merging restores it.
    let t = generate::theorem2(12);
    let ws = WedgeSet::from_wedges(&t.graph, t.canonical_wedges.clone()).unwrap();
    let bound = LowerBound::wedges(&t.graph, WedgeSource::Injected(&ws), &()).unwrap();
    let mut r = bound.round(&t.graph, PivotStrategy::Degree, &());
    bound.merge(&t.graph, &mut r, &mut pass_limit(100), &());
    assert!(r.deletions <= t.mfp_cost());
    assert!(clusters_are_cliques(&t.graph, &r.clustering));
}

#[test]
fn library_usage_example() {
    let g = generate::erdos_renyi(200, 0.05, 1).unwrap();
    let mfp = match_flip_pivot(&g, PivotStrategy::Degree, WedgeSource::Matcher(Matcher::Fast)).unwrap();
    let lp = stc_lp_round(&g, PivotStrategy::Ratio, None).unwrap();
    assert!(mfp.ratio().at_most(3, 1) && lp.ratio().at_most(3, 1));
}
