//! The JSON stats record for one run.

use cdel_core::pipeline::CdResult;
use cdel_core::Graph;
use serde::Serialize;

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct RuntimeMs {
    pub matcher: Option<f64>,
    pub lp: Option<f64>,
    pub pivot: Option<f64>,
    pub merge: Option<f64>,
    pub total: Option<f64>,
}

/// Field set is fixed; stages that did not run serialize as `null`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunStats {
    pub algorithm: &'static str,
    pub strategy: &'static str,
    pub seed: Option<u64>,
    pub n: usize,
    pub m: usize,
    pub wedges: Option<u64>,
    pub weak_edges: u64,
    pub lp_value_half_units: Option<u64>,
    pub deletions: u64,
    pub lower_bound_half_units: u64,
    pub ratio: Option<f64>,
    #[serde(rename = "m_W")]
    pub m_w: Option<u64>,
    #[serde(rename = "m_S")]
    pub m_s: u64,
    pub m_1: Option<u64>,
    pub b_half: Option<u64>,
    pub n_half: Option<u64>,
    pub boundary_edges: u64,
    pub internal_nonedges: u64,
    pub clusters: usize,
    pub merged: bool,
    pub runtime_ms: RuntimeMs,
}

impl RunStats {
    /// `seed` is the seed given on the command line (the first trial's).
    pub fn new(g: &Graph, r: &CdResult, seed: Option<u64>, total_ms: Option<f64>) -> Self {
        RunStats {
            algorithm: r.algorithm.name(),
            strategy: r.strategy.name(),
            seed,
            n: g.n(),
            m: g.m(),
            wedges: r.wedges,
            weak_edges: r.weak_edges(),
            lp_value_half_units: r.lp_value_half_units,
            deletions: r.deletions,
            lower_bound_half_units: r.lower_bound_half_units,
            ratio: r.ratio().as_f64(),
            m_w: r.m_w,
            m_s: r.m_s,
            m_1: r.rounding.map(|b| b.m_1),
            b_half: r.rounding.map(|b| b.b_half),
            n_half: r.rounding.map(|b| b.n_half),
            boundary_edges: r.audit.boundary_edges,
            internal_nonedges: r.audit.internal_nonedges,
            clusters: r.clustering.len(),
            merged: r.merged,
            runtime_ms: RuntimeMs {
                matcher: r.timings.matcher,
                lp: r.timings.lp,
                pivot: r.timings.pivot,
                merge: r.timings.merge,
                total: total_ms,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("stats serialize")
    }
}
