//! Combinatorial approximation algorithms for cluster deletion.
//!
//! The crate turns a simple undirected graph into a partition of its nodes
//! into cliques while deleting few edges. Two lower bounds drive the
//! algorithms: a maximal edge-disjoint set of open wedges ([`wedge`]), and the
//! half-integral strong triadic closure LP solved exactly through a minimum
//! s-t cut ([`stc_lp`], [`flow`]). Either bound labels a set of edges weak;
//! [`pivot`] then clusters the remaining strong graph, and [`pipeline`] turns
//! the result into a cluster deletion solution with an a posteriori ratio.
//!
//! [`oracle`] holds exponential-time reference solvers for small inputs.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod flow;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod pipeline;
pub mod pivot;
pub mod stc_lp;
pub mod wedge;

pub use graph::{EdgeId, EdgeSet, Graph, NodeId, OpenWedge, ParseError};
pub use pipeline::{Algorithm, CdResult, Ratio};
pub use pivot::{Clustering, PivotAudit, PivotStrategy};
pub use stc_lp::HalfIntegralSolution;
pub use wedge::WedgeSet;
