//! End-to-end cluster deletion: compute a lower bound, drop its weak edges,
//! pivot on what is left, and report the result against the bound.
//!
//! Lower bounds are kept in half units so both pipelines share one type:
//! `2|W|` for wedge matching and the LP optimum for the STC relaxation.

use alloc::vec::Vec;
use core::fmt;

use crate::graph::{EdgeSet, Graph};
use crate::pivot::{self, Clustering, PivotAudit, PivotStrategy};
use crate::stc_lp::{self, HalfIntegralSolution, LpError};
use crate::wedge::{self, WedgeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Wedge matching, then pivot on the strong edges.
    Mfp,
    /// STC LP via min cut, edges with value at least ½ are weak.
    StcLp,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Mfp => "mfp",
            Algorithm::StcLp => "stclp",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Matcher {
    Simple,
    #[default]
    Fast,
}

impl Matcher {
    pub fn name(&self) -> &'static str {
        match self {
            Matcher::Simple => "simple",
            Matcher::Fast => "fast",
        }
    }

    pub fn run(&self, g: &Graph) -> WedgeSet {
        match self {
            Matcher::Simple => wedge::maximal_wedge_set_simple(g),
            Matcher::Fast => wedge::maximal_wedge_set_fast(g),
        }
    }
}

/// Where the wedge set for wedge matching comes from.
#[derive(Debug, Clone, Copy)]
pub enum WedgeSource<'a> {
    Matcher(Matcher),
    /// A caller-supplied set; must pass [`wedge::verify_wedge_set`].
    Injected(&'a WedgeSet),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error("injected wedge set is not a maximal edge-disjoint set of open wedges")]
    InvalidWedgeSet,
    #[error(transparent)]
    Lp(#[from] LpError),
}

/// `2 * deletions / lower_bound_half_units`, kept exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    /// `None` when the lower bound is zero.
    pub fn as_f64(&self) -> Option<f64> {
        (self.den > 0).then(|| self.num as f64 / self.den as f64)
    }

    /// Whether the ratio is at most `p / q`. A zero lower bound only
    /// passes when there are no deletions.
    pub fn at_most(&self, p: u64, q: u64) -> bool {
        if self.den == 0 {
            return self.num == 0;
        }
        self.num as u128 * q as u128 <= p as u128 * self.den as u128
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Per-class counts for LP rounding.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RoundingBreakdown {
    /// Edges with LP value 1, ½ and 0.
    pub e1: u64,
    pub eh: u64,
    pub es: u64,
    /// Value-1 edges between clusters.
    pub m_1: u64,
    /// Half edges between clusters.
    pub b_half: u64,
    /// Half edges inside clusters.
    pub n_half: u64,
}

/// Wall-clock milliseconds per stage; `None` when the stage did not run or
/// no clock was supplied.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StageTimings {
    pub matcher: Option<f64>,
    pub lp: Option<f64>,
    pub pivot: Option<f64>,
    pub merge: Option<f64>,
}

/// A monotone millisecond clock. The core crate has no time source of its
/// own; `()` stands for "not timed".
pub trait Clock {
    fn now_ms(&self) -> Option<f64>;
}

impl Clock for () {
    fn now_ms(&self) -> Option<f64> {
        None
    }
}

fn timed<T>(clock: &dyn Clock, f: impl FnOnce() -> T) -> (T, Option<f64>) {
    let start = clock.now_ms();
    let out = f();
    let elapsed = match (start, clock.now_ms()) {
        (Some(a), Some(b)) => Some(b - a),
        _ => None,
    };
    (out, elapsed)
}

#[derive(Debug, Clone)]
pub struct CdResult {
    pub algorithm: Algorithm,
    pub strategy: PivotStrategy,
    pub clustering: Clustering,
    /// Edges of `G` between clusters.
    pub deletions: u64,
    pub lower_bound_half_units: u64,
    /// `|W|` for wedge matching.
    pub wedges: Option<u64>,
    pub weak: EdgeSet,
    pub lp_value_half_units: Option<u64>,
    /// Weak edges between clusters (wedge matching only).
    pub m_w: Option<u64>,
    /// Strong edges between clusters.
    pub m_s: u64,
    pub rounding: Option<RoundingBreakdown>,
    pub audit: PivotAudit,
    pub merged: bool,
    pub timings: StageTimings,
}

impl CdResult {
    pub fn ratio(&self) -> Ratio {
        Ratio {
            num: 2 * self.deletions,
            den: self.lower_bound_half_units,
        }
    }

    pub fn weak_edges(&self) -> u64 {
        self.weak.len() as u64
    }
}

/// The edges of `g` whose endpoints lie in different clusters.
pub fn deletion_set(g: &Graph, clustering: &Clustering) -> EdgeSet {
    EdgeSet::from_ids(
        g.m(),
        g.edges()
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| !clustering.same_cluster(u, v))
            .map(|(e, _)| e),
    )
}

/// Whether every cluster is a clique of `g`.
pub fn clusters_are_cliques(g: &Graph, clustering: &Clustering) -> bool {
    clustering.clusters().iter().all(|c| g.is_clique(c))
}

/// A solved lower bound, reusable across pivot runs.
#[derive(Debug, Clone)]
pub struct LowerBound {
    pub algorithm: Algorithm,
    pub wedge_set: Option<WedgeSet>,
    pub lp: Option<HalfIntegralSolution>,
    pub weak: EdgeSet,
    pub half_units: u64,
    /// `G` without the weak edges.
    pub g_hat: Graph,
    pub timings: StageTimings,
}

impl LowerBound {
    pub fn wedges(g: &Graph, source: WedgeSource<'_>, clock: &dyn Clock) -> Result<Self, PipelineError> {
        let (ws, elapsed) = match source {
            WedgeSource::Matcher(matcher) => timed(clock, || matcher.run(g)),
            WedgeSource::Injected(ws) => {
                if !wedge::verify_wedge_set(g, ws) {
                    return Err(PipelineError::InvalidWedgeSet);
                }
                (ws.clone(), None)
            }
        };
        Ok(LowerBound {
            algorithm: Algorithm::Mfp,
            half_units: 2 * ws.len() as u64,
            g_hat: g.without_edges(&ws.weak),
            weak: ws.weak.clone(),
            wedge_set: Some(ws),
            lp: None,
            timings: StageTimings {
                matcher: elapsed,
                ..StageTimings::default()
            },
        })
    }

    pub fn stc_lp(g: &Graph, arc_budget: Option<u64>, clock: &dyn Clock) -> Result<Self, PipelineError> {
        let (sol, elapsed) = timed(clock, || stc_lp::solve_stc_lp_budgeted(g, arc_budget));
        let sol = sol?;
        let weak = stc_lp::labeling_from_lp(&sol);
        Ok(LowerBound {
            algorithm: Algorithm::StcLp,
            half_units: sol.objective_half_units,
            g_hat: g.without_edges(&weak),
            weak,
            wedge_set: None,
            lp: Some(sol),
            timings: StageTimings {
                lp: elapsed,
                ..StageTimings::default()
            },
        })
    }

    /// Pivots on the strong graph and reports against this bound.
    pub fn round(&self, g: &Graph, strategy: PivotStrategy, clock: &dyn Clock) -> CdResult {
        let ((clustering, audit), elapsed) = timed(clock, || pivot::pivot(&self.g_hat, strategy));
        let mut result = CdResult {
            algorithm: self.algorithm,
            strategy,
            clustering,
            deletions: 0,
            lower_bound_half_units: self.half_units,
            wedges: self.wedge_set.as_ref().map(|ws| ws.len() as u64),
            weak: self.weak.clone(),
            lp_value_half_units: self.lp.as_ref().map(|s| s.objective_half_units),
            m_w: None,
            m_s: 0,
            rounding: None,
            audit,
            merged: false,
            timings: StageTimings {
                pivot: elapsed,
                ..self.timings
            },
        };
        self.fill_breakdown(g, &mut result);
        result
    }

    /// Recomputes deletions and the per-class counts for the current
    /// clustering of `result`.
    pub fn fill_breakdown(&self, g: &Graph, result: &mut CdResult) {
        let mut deletions = 0;
        let mut m_w = 0;
        let mut m_s = 0;
        let mut rounding = RoundingBreakdown::default();
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let between = !result.clustering.same_cluster(u, v);
            deletions += between as u64;
            if let Some(lp) = &self.lp {
                match lp.values[e] {
                    2 => {
                        rounding.e1 += 1;
                        rounding.m_1 += between as u64;
                    }
                    1 => {
                        rounding.eh += 1;
                        if between {
                            rounding.b_half += 1;
                        } else {
                            rounding.n_half += 1;
                        }
                    }
                    _ => {
                        rounding.es += 1;
                        m_s += between as u64;
                    }
                }
            } else if self.weak.contains(e) {
                m_w += between as u64;
            } else {
                m_s += between as u64;
            }
        }
        result.deletions = deletions;
        result.m_s = m_s;
        if self.lp.is_some() {
            result.rounding = Some(rounding);
            result.m_w = None;
        } else {
            result.m_w = Some(m_w);
            result.rounding = None;
        }
    }

    /// Runs `trials` random pivots with seeds `base_seed + i` and keeps the
    /// one with fewest deletions (the earliest on ties).
    pub fn best_of_random(&self, g: &Graph, trials: u32, base_seed: u64, clock: &dyn Clock) -> RandomTrials {
        assert!(trials >= 1, "at least one trial");
        let mut best: Option<CdResult> = None;
        let mut trial_deletions = Vec::with_capacity(trials as usize);
        let mut pivot_ms = Some(0.0);
        for i in 0..trials as u64 {
            let run = self.round(g, PivotStrategy::Random { seed: base_seed.wrapping_add(i) }, clock);
            trial_deletions.push(run.deletions);
            pivot_ms = match (pivot_ms, run.timings.pivot) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            };
            if best.as_ref().is_none_or(|b| run.deletions < b.deletions) {
                best = Some(run);
            }
        }
        let mut best = best.expect("at least one trial");
        best.timings.pivot = pivot_ms;
        let mean_deletions = trial_deletions.iter().sum::<u64>() as f64 / trials as f64;
        RandomTrials {
            best,
            mean_deletions,
            trial_deletions,
        }
    }

    /// Merges cliques of `result` and refreshes its counts. A no-op
    /// clustering change still marks the result as merged.
    pub fn merge(&self, g: &Graph, result: &mut CdResult, stop: &mut dyn FnMut(usize) -> bool, clock: &dyn Clock) -> MergeOutcome {
        let (outcome, elapsed) = timed(clock, || merge_clusters(g, &result.clustering, stop));
        result.clustering = outcome.clustering.clone();
        result.merged = true;
        result.timings.merge = elapsed;
        self.fill_breakdown(g, result);
        outcome
    }
}

#[derive(Debug, Clone)]
pub struct RandomTrials {
    pub best: CdResult,
    pub mean_deletions: f64,
    pub trial_deletions: Vec<u64>,
}

/// Wedge matching followed by pivot.
pub fn match_flip_pivot(g: &Graph, strategy: PivotStrategy, source: WedgeSource<'_>) -> Result<CdResult, PipelineError> {
    Ok(LowerBound::wedges(g, source, &())?.round(g, strategy, &()))
}

/// STC LP rounding followed by pivot.
pub fn stc_lp_round(g: &Graph, strategy: PivotStrategy, arc_budget: Option<u64>) -> Result<CdResult, PipelineError> {
    Ok(LowerBound::stc_lp(g, arc_budget, &())?.round(g, strategy, &()))
}

/// Best of `trials` random pivots over one shared lower bound.
pub fn best_of_random(
    g: &Graph,
    algorithm: Algorithm,
    trials: u32,
    base_seed: u64,
) -> Result<RandomTrials, PipelineError> {
    let bound = match algorithm {
        Algorithm::Mfp => LowerBound::wedges(g, WedgeSource::Matcher(Matcher::Fast), &())?,
        Algorithm::StcLp => LowerBound::stc_lp(g, Some(stc_lp::DEFAULT_ARC_BUDGET), &())?,
    };
    Ok(bound.best_of_random(g, trials, base_seed, &()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeOutcome {
    pub clustering: Clustering,
    pub passes: usize,
    pub merges: usize,
    /// False when `stop` ended the scan before a pass without merges.
    pub fixpoint: bool,
}

/// Repeatedly merges two clusters whose every cross pair is an edge of `g`.
///
/// Each pass orders clusters by descending size (ties by smallest member)
/// and scans pairs `(a, b)` with `a` before `b`; a merge grows `a` in place.
/// `stop(passes_done)` is consulted before every pass.
pub fn merge_clusters(g: &Graph, clustering: &Clustering, stop: &mut dyn FnMut(usize) -> bool) -> MergeOutcome {
    let mut clusters: Vec<Vec<usize>> = clustering.clusters().to_vec();
    let mut passes = 0;
    let mut merges = 0;
    let mut fixpoint = false;
    let mut owner = alloc::vec![0usize; g.n()];
    let mut seen = alloc::vec![usize::MAX; g.n()];
    while !stop(passes) {
        for c in &mut clusters {
            c.sort_unstable();
        }
        clusters.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        for (idx, c) in clusters.iter().enumerate() {
            for &v in c {
                owner[v] = idx;
            }
        }
        let mut alive = alloc::vec![true; clusters.len()];
        let mut merged_here = 0;
        let mut candidates = Vec::new();
        for a in 0..clusters.len() {
            if !alive[a] {
                continue;
            }
            // Any mergeable partner lies inside the neighborhood of every
            // member, so the lowest-degree member bounds the candidates.
            let anchor = *clusters[a].iter().min_by_key(|&&v| g.degree(v)).expect("non-empty cluster");
            candidates.clear();
            for &u in g.neighbors(anchor) {
                let b = owner[u];
                if b > a && alive[b] && seen[b] != a {
                    seen[b] = a;
                    candidates.push(b);
                }
            }
            candidates.sort_unstable();
            for &b in &candidates {
                let joinable = clusters[a].iter().all(|&x| clusters[b].iter().all(|&y| g.has_edge(x, y)));
                if joinable {
                    let moved = core::mem::take(&mut clusters[b]);
                    clusters[a].extend(moved);
                    alive[b] = false;
                    merged_here += 1;
                }
            }
        }
        // Reset the stamps so cluster indices can be reused next pass.
        seen.iter_mut().for_each(|s| *s = usize::MAX);
        clusters.retain(|c| !c.is_empty());
        passes += 1;
        merges += merged_here;
        if merged_here == 0 {
            fixpoint = true;
            break;
        }
    }
    for c in &mut clusters {
        c.sort_unstable();
    }
    clusters.sort_by_key(|c| c[0]);
    MergeOutcome {
        clustering: Clustering::from_clusters(g.n(), clusters),
        passes,
        merges,
        fixpoint,
    }
}

/// Stop closure that allows at most `max_passes` passes.
pub fn pass_limit(max_passes: usize) -> impl FnMut(usize) -> bool {
    move |done| done >= max_passes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    fn path3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)])
    }

    #[test]
    fn mfp_on_path() {
        let r = match_flip_pivot(&path3(), PivotStrategy::Degree, WedgeSource::Matcher(Matcher::Fast)).unwrap();
        assert_eq!(r.clustering.len(), 3);
        assert_eq!(r.deletions, 2);
        assert_eq!(r.lower_bound_half_units, 2);
        assert_eq!(r.ratio(), Ratio { num: 4, den: 2 });
        assert_eq!(r.ratio().as_f64(), Some(2.0));
        assert_eq!(r.m_w, Some(2));
        assert_eq!(r.m_s, 0);
    }

    #[test]
    fn triangle_is_one_cluster() {
        let g = generate::complete(3);
        let a = match_flip_pivot(&g, PivotStrategy::Ratio, WedgeSource::Matcher(Matcher::Simple)).unwrap();
        let b = stc_lp_round(&g, PivotStrategy::Degree, None).unwrap();
        for r in [a, b] {
            assert_eq!(r.clustering.len(), 1);
            assert_eq!(r.deletions, 0);
            assert_eq!(r.lower_bound_half_units, 0);
            assert_eq!(r.ratio().as_f64(), None);
            assert!(r.ratio().at_most(3, 1));
        }
    }

    #[test]
    fn lp_on_star() {
        let r = stc_lp_round(&generate::star(3), PivotStrategy::Degree, None).unwrap();
        assert_eq!(r.weak.len(), 3);
        assert_eq!(r.clustering.len(), 4);
        assert_eq!(r.deletions, 3);
        assert_eq!(r.lp_value_half_units, Some(3));
        assert_eq!(r.ratio().as_f64(), Some(2.0));
        let b = r.rounding.unwrap();
        assert_eq!((b.e1, b.eh, b.es), (0, 3, 0));
        assert_eq!((b.m_1, b.b_half, b.n_half), (0, 3, 0));
    }

    #[test]
    fn tight_instance_with_injected_wedges() {
        let t = generate::theorem2(12);
        let ws = WedgeSet::from_wedges(&t.graph, t.canonical_wedges.clone()).unwrap();
        for strategy in [PivotStrategy::Degree, PivotStrategy::Ratio, PivotStrategy::Random { seed: 3 }] {
            let r = match_flip_pivot(&t.graph, strategy, WedgeSource::Injected(&ws)).unwrap();
            assert_eq!(r.deletions, 14);
            assert_eq!(r.lower_bound_half_units, 12);
        }
    }

    #[test]
    fn injection_is_validated() {
        let g = generate::star(3);
        let bad = WedgeSet::empty(&g);
        assert_eq!(
            match_flip_pivot(&g, PivotStrategy::Degree, WedgeSource::Injected(&bad)).unwrap_err(),
            PipelineError::InvalidWedgeSet
        );
    }

    #[test]
    fn lp_budget_propagates() {
        let err = stc_lp_round(&generate::star(3), PivotStrategy::Degree, Some(5)).unwrap_err();
        assert!(matches!(err, PipelineError::Lp(LpError::OverBudget { .. })));
    }

    #[test]
    fn deletion_sets() {
        let k3 = generate::complete(3);
        assert!(deletion_set(&k3, &Clustering::from_clusters(3, alloc::vec![alloc::vec![0, 1, 2]])).is_empty());
        assert_eq!(deletion_set(&k3, &Clustering::singletons(3)).len(), 3);
        let p3 = path3();
        let c = Clustering::from_clusters(3, alloc::vec![alloc::vec![0, 1], alloc::vec![2]]);
        let d = deletion_set(&p3, &c);
        assert_eq!(d.iter().map(|e| p3.edge(e)).collect::<Vec<_>>(), [(1, 2)]);
    }

    #[test]
    fn merge_examples() {
        let edge = Graph::from_edges(2, [(0, 1)]);
        let out = merge_clusters(&edge, &Clustering::singletons(2), &mut pass_limit(10));
        assert_eq!(out.clustering.len(), 1);

        let g = Graph::from_edges(3, [(0, 1), (0, 2)]);
        let c = Clustering::from_clusters(3, alloc::vec![alloc::vec![0, 1], alloc::vec![2]]);
        let out = merge_clusters(&g, &c, &mut pass_limit(10));
        assert_eq!(out.clustering, c);
        assert!(out.fixpoint);

        let k4 = generate::complete(4);
        let out = merge_clusters(&k4, &Clustering::singletons(4), &mut pass_limit(10));
        assert_eq!(out.clustering.len(), 1);
        assert!(out.fixpoint);
        let again = merge_clusters(&k4, &out.clustering, &mut pass_limit(10));
        assert_eq!(again.clustering, out.clustering);
        assert_eq!(again.merges, 0);
    }

    #[test]
    fn merge_respects_pass_limit() {
        let k4 = generate::complete(4);
        let out = merge_clusters(&k4, &Clustering::singletons(4), &mut pass_limit(0));
        assert_eq!(out.clustering.len(), 4);
        assert_eq!(out.passes, 0);
        assert!(!out.fixpoint);
    }

    #[test]
    fn best_of_random_keeps_minimum() {
        let g = generate::erdos_renyi(20, 0.3, 5).unwrap();
        let trials = best_of_random(&g, Algorithm::Mfp, 25, 100).unwrap();
        assert_eq!(trials.trial_deletions.len(), 25);
        assert_eq!(trials.best.deletions, *trials.trial_deletions.iter().min().unwrap());
        let first = trials.trial_deletions.iter().position(|&d| d == trials.best.deletions).unwrap();
        assert_eq!(trials.best.strategy, PivotStrategy::Random { seed: 100 + first as u64 });

        let single = best_of_random(&g, Algorithm::Mfp, 1, 100).unwrap();
        let direct = match_flip_pivot(&g, PivotStrategy::Random { seed: 100 }, WedgeSource::Matcher(Matcher::Fast)).unwrap();
        assert_eq!(single.best.clustering, direct.clustering);
    }
}
