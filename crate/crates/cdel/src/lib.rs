//! File formats and the command-line front end for `cdel-core`.
//!
//! Input is a whitespace-separated edge list (`#` comments, optionally
//! gzip-compressed). Outputs are a clustering file of `label cluster_id`
//! lines and a JSON stats record per run.

pub mod cli;
pub mod io;
pub mod stats;

pub use cli::main_with_args;
pub use io::read_graph;
pub use stats::RunStats;
