//! The strong triadic closure LP, solved exactly through a minimum s-t cut.
//!
//! Each edge `e` gets two binary variables `y_e`, `z_e` and the value
//! `x_e = (y_e - z_e + 1) / 2`. Every open wedge `(i, j, k)` contributes the
//! implications `z_ik <= y_jk` and `z_jk <= y_ik`. In the cut network, node
//! `Z_e` hangs off the source and `Y_e` feeds the sink, each with weight one
//! half (capacity 1 after doubling), and each implication becomes an arc of
//! capacity `m + 1`, which no minimum cut can afford to cut. The minimum cut
//! value is therefore the LP optimum in half units.
//!
//! All values are kept in integer half units: 0, 1, 2 stand for 0, ½, 1.

use alloc::vec::Vec;

use crate::flow::{Capacity, FlowNetwork};
use crate::graph::{EdgeId, EdgeSet, Graph};

/// Default limit on the number of arcs in the cut network.
pub const DEFAULT_ARC_BUDGET: u64 = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum LpError {
    #[error("cut network needs {arcs} arcs, over the budget of {budget}")]
    OverBudget { arcs: u64, budget: u64 },
}

/// Per-edge LP values in half units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfIntegralSolution {
    pub values: Vec<u8>,
    pub objective_half_units: u64,
}

impl HalfIntegralSolution {
    pub fn from_values(values: Vec<u8>) -> Self {
        assert!(values.iter().all(|&v| v <= 2), "half-unit values must be 0, 1 or 2");
        let objective_half_units = values.iter().map(|&v| v as u64).sum();
        HalfIntegralSolution {
            values,
            objective_half_units,
        }
    }

    /// Number of edges at 1, ½ and 0.
    pub fn class_sizes(&self) -> (usize, usize, usize) {
        let count = |x| self.values.iter().filter(|&&v| v == x).count();
        (count(2), count(1), count(0))
    }
}

/// The binary `(y, z)` labels of the cut formulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StcCutLabels {
    pub y: Vec<bool>,
    pub z: Vec<bool>,
}

impl StcCutLabels {
    /// Objective of the cut formulation in half units: `Σ y + (1 - z)`.
    pub fn objective_half_units(&self) -> u64 {
        self.y
            .iter()
            .zip(&self.z)
            .map(|(&y, &z)| y as u64 + !z as u64)
            .sum()
    }

    /// `x = (y - z + 1) / 2`, in half units.
    pub fn to_solution(&self) -> HalfIntegralSolution {
        let values = self
            .y
            .iter()
            .zip(&self.z)
            .map(|(&y, &z)| (y as u8 + 1) - z as u8)
            .collect();
        HalfIntegralSolution::from_values(values)
    }

    /// Inverse map: 0 → (0, 1), ½ → (1, 1), 1 → (1, 0).
    pub fn from_solution(sol: &HalfIntegralSolution) -> Self {
        let y = sol.values.iter().map(|&v| v >= 1).collect();
        let z = sol.values.iter().map(|&v| v <= 1).collect();
        StcCutLabels { y, z }
    }
}

/// Checks `z_ik <= y_jk` and `z_jk <= y_ik` on every open wedge.
pub fn verify_cut_labels(g: &Graph, labels: &StcCutLabels) -> bool {
    let mut ok = true;
    g.for_each_open_wedge_with_edges(|_, ik, jk| {
        ok &= (!labels.z[ik] || labels.y[jk]) && (!labels.z[jk] || labels.y[ik]);
    });
    ok
}

/// Node ids of the cut network. Source 0, sink 1, then `Z_e`, `Y_e` pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GstMapping {
    pub edges: usize,
}

impl GstMapping {
    pub const SOURCE: usize = 0;
    pub const SINK: usize = 1;

    pub fn z(&self, e: EdgeId) -> usize {
        2 + 2 * e
    }

    pub fn y(&self, e: EdgeId) -> usize {
        3 + 2 * e
    }

    pub fn node_count(&self) -> usize {
        2 * self.edges + 2
    }
}

/// Arc count of the cut network for `g`: `2m + 2|W|`.
pub fn gst_arc_count(g: &Graph) -> u64 {
    2 * g.m() as u64 + 2 * g.count_open_wedges()
}

/// Builds the cut network after checking its size against `arc_budget`.
pub fn build_gst(g: &Graph, arc_budget: Option<u64>) -> Result<(FlowNetwork, GstMapping), LpError> {
    let arcs = gst_arc_count(g);
    if let Some(budget) = arc_budget {
        if arcs > budget {
            return Err(LpError::OverBudget { arcs, budget });
        }
    }
    let map = GstMapping { edges: g.m() };
    let mut net = FlowNetwork::new(map.node_count(), GstMapping::SOURCE, GstMapping::SINK)
        .expect("terminals are distinct")
        .with_arc_capacity(arcs as usize);
    for e in 0..g.m() {
        net.add_arc(GstMapping::SOURCE, map.z(e), 1).expect("valid arc");
        net.add_arc(map.y(e), GstMapping::SINK, 1).expect("valid arc");
    }
    let infinite = g.m() as Capacity + 1;
    g.for_each_open_wedge_with_edges(|_, ik, jk| {
        net.add_arc(map.z(ik), map.y(jk), infinite).expect("valid arc");
        net.add_arc(map.z(jk), map.y(ik), infinite).expect("valid arc");
    });
    Ok((net, map))
}

/// Solves the LP with no size limit.
pub fn solve_stc_lp(g: &Graph) -> HalfIntegralSolution {
    solve_stc_lp_budgeted(g, None).expect("no budget")
}

pub fn solve_stc_lp_budgeted(g: &Graph, arc_budget: Option<u64>) -> Result<HalfIntegralSolution, LpError> {
    Ok(solve_cut_labels(g, arc_budget)?.0.to_solution())
}

/// Solves the cut problem and returns the `(y, z)` labels with the flow
/// value (equal to the LP optimum in half units).
pub fn solve_cut_labels(g: &Graph, arc_budget: Option<u64>) -> Result<(StcCutLabels, u64), LpError> {
    let (mut net, map) = build_gst(g, arc_budget)?;
    let cut = net.max_flow_min_cut();
    let y = (0..g.m()).map(|e| cut.contains(map.y(e))).collect();
    let z = (0..g.m()).map(|e| cut.contains(map.z(e))).collect();
    let labels = StcCutLabels { y, z };
    debug_assert_eq!(labels.objective_half_units(), cut.flow_value as u64);
    Ok((labels, cut.flow_value as u64))
}

/// Edges with value ½ or 1.
pub fn labeling_from_lp(sol: &HalfIntegralSolution) -> EdgeSet {
    EdgeSet::from_ids(
        sol.values.len(),
        sol.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v >= 1)
            .map(|(e, _)| e),
    )
}

/// Whether half-unit `values` satisfy `x_ik + x_jk >= 1` on every open wedge.
pub fn verify_stc_feasible(g: &Graph, values: &[u8]) -> bool {
    assert_eq!(values.len(), g.m());
    let mut ok = true;
    g.for_each_open_wedge_with_edges(|_, ik, jk| {
        ok &= values[ik] + values[jk] >= 2;
    });
    ok
}
