//! Allocation solvers: choose splitters and an assignment together.
//!
//! An allocation instance gives each machine a sorted dataset of integer
//! values and a cost matrix. Choosing `n - 1` splitters from the merged
//! sorted sequence partitions the value domain into `n` half-open
//! intervals, which induces a transmission matrix; a permutation then
//! assigns intervals to machines as in the redistribution problem.
//!
//! All solvers work over a layered splitter graph with one level per
//! interval and one column per candidate splitter. Edges step to a
//! strictly larger column, so source-to-sink paths correspond exactly to
//! splitter selections. Edge weights come in two flavours: scalar
//! weights (receive cost of the spanned interval on a given machine)
//! drive the `total` and `btnk` dynamic programs, and vector weights
//! (per-machine data counts of the spanned interval) drive the
//! enumeration solver for `msr` and `ssr`.

mod dp;
mod graph;
mod hard;

pub use dp::{
    decide_dap_btnk, decide_dap_btnk_with, decide_dap_total, decide_dap_total_enumerative,
    decide_dap_total_with, solve_dap_btnk, solve_dap_btnk_with, solve_dap_total,
    solve_dap_total_with, Decision, DpConfig,
};
pub use graph::{
    build_acc, build_splitter_graph, induced_transmission_for_indices, quantile_splitters,
    terasort_baseline, AccMatrix, DapInstance, DapSolution, SplitterGraph, SplitterSelection,
};
pub use hard::{solve_dap_hard, solve_dap_hard_graph, HardBudget};
