//! Exhaustive solver for the `msr` and `ssr` allocation objectives.
//!
//! These objectives mix send and receive loads, so a splitter choice
//! cannot be priced by a single per-edge scalar. The solver instead
//! walks every source-to-sink path of the splitter graph, derives the
//! transmission matrix each path induces, and runs the branch-and-bound
//! assignment search on it. The path count is binomial in the value
//! count, so tight size budgets are enforced.

use crate::branch_bound::{solve_drp_exact, SearchConfig, DEFAULT_NODE_CAP};
use crate::error::{Error, Result};
use crate::model::{DrpInstance, Objective};

use super::graph::{build_splitter_graph, DapInstance, DapSolution, SplitterGraph};

/// Size limits for the exhaustive path walk.
#[derive(Debug, Clone)]
pub struct HardBudget {
    /// Largest admitted global value count; paths grow binomially in it.
    pub max_values: usize,
    /// Largest admitted machine count.
    pub max_machines: usize,
    /// Node budget handed to each inner assignment search.
    pub node_cap: u64,
}

impl Default for HardBudget {
    fn default() -> Self {
        HardBudget {
            max_values: 12,
            max_machines: 5,
            node_cap: DEFAULT_NODE_CAP,
        }
    }
}

/// Minimizes `msr` or `ssr` over all splitter selections and assignments
/// of an instance.
pub fn solve_dap_hard(
    inst: &DapInstance,
    obj: Objective,
    budget: &HardBudget,
) -> Result<DapSolution> {
    let g = build_splitter_graph(inst, obj)?;
    solve_dap_hard_graph(&g, obj, budget)
}

/// Minimizes `msr` or `ssr` over a pre-built splitter graph, including
/// graphs with explicit edge vectors.
pub fn solve_dap_hard_graph(
    g: &SplitterGraph,
    obj: Objective,
    budget: &HardBudget,
) -> Result<DapSolution> {
    if !matches!(obj, Objective::Msr | Objective::Ssr) {
        return Err(Error::InvalidArgument(format!(
            "the path walk handles msr and ssr, not {obj}"
        )));
    }
    if g.num_cols() > budget.max_values {
        return Err(Error::SizeCap(format!(
            "{} candidate columns exceed the path-walk cap {}",
            g.num_cols(),
            budget.max_values
        )));
    }
    if g.n() > budget.max_machines {
        return Err(Error::SizeCap(format!(
            "{} machines exceed the path-walk cap {}",
            g.n(),
            budget.max_machines
        )));
    }
    let search_cfg = SearchConfig {
        node_cap: budget.node_cap,
        ..SearchConfig::default()
    };
    let mut best: Option<DapSolution> = None;
    let mut all_proven = true;
    g.for_each_path(|cols| {
        let t = g.induced_transmission(cols)?;
        let drp = DrpInstance::new(t.clone(), g.costs().to_vec())?;
        let inner = solve_drp_exact(&drp, obj, &search_cfg)?;
        if !inner.proven_optimal {
            all_proven = false;
        }
        if best.as_ref().is_none_or(|b| inner.value < b.value) {
            best = Some(DapSolution {
                splitters: g.selection(cols),
                perm: inner.perm,
                value: inner.value,
                induced_t: t,
                proven_optimal: true,
            });
        }
        Ok(())
    })?;
    let mut best = best.ok_or_else(|| {
        Error::InvalidArgument(format!(
            "no feasible splitter selection: {} columns for {} machines",
            g.num_cols(),
            g.n()
        ))
    })?;
    best.proven_optimal = all_proven;
    Ok(best)
}
