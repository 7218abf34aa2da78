//! Exact branch-and-bound search for the `msr` and `ssr` objectives.
//!
//! Both objectives are maxima of monotone per-machine loads, so the
//! aggregate of a partial assignment never decreases as it is extended.
//! The search assigns intervals depth-first in order of decreasing data
//! volume, tries candidate machines in order of increasing marginal
//! aggregate, and prunes a branch as soon as its partial aggregate
//! reaches the incumbent. Two structural reductions are always active:
//! once only zero-volume intervals remain they are completed in a single
//! step (their placement cannot affect any load), and machines that are
//! provably interchangeable (swapping them is an automorphism of `T` and
//! `C`) are branched on only once.

use crate::error::{Error, Result};
use crate::model::{DrpInstance, Objective, Permutation};
use itertools::Itertools;

/// Default node budget for [`solve_drp_exact`].
pub const DEFAULT_NODE_CAP: u64 = 10_000_000;

/// Tuning knobs for the exact search.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Maximum number of assignment steps to explore before giving up on
    /// proving optimality.
    pub node_cap: u64,
    /// Known upper bound on the optimum; branches strictly above it are
    /// cut immediately.
    pub initial_incumbent: Option<u64>,
    /// Incumbent-bound pruning. Disabling it forces a complete
    /// enumeration and must not change the result.
    pub pruning: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_cap: DEFAULT_NODE_CAP,
            initial_incumbent: None,
            pruning: true,
        }
    }
}

/// Result of the exact search.
#[derive(Debug, Clone)]
pub struct ExactSolution {
    pub perm: Permutation,
    pub value: u64,
    /// True when the search space was exhausted within the node budget,
    /// so `value` is the global optimum.
    pub proven_optimal: bool,
}

/// Search statistics exposed for tests and diagnostics.
#[derive(Debug, Clone, Default)]
pub struct SearchTrace {
    pub nodes: u64,
    /// Every incumbent value in the order it was found.
    pub incumbents: Vec<u64>,
}

/// Minimizes `msr` or `ssr` exactly by branch and bound.
pub fn solve_drp_exact(
    inst: &DrpInstance,
    obj: Objective,
    cfg: &SearchConfig,
) -> Result<ExactSolution> {
    solve_drp_exact_traced(inst, obj, cfg).map(|(sol, _)| sol)
}

/// [`solve_drp_exact`] variant that also reports search statistics.
pub fn solve_drp_exact_traced(
    inst: &DrpInstance,
    obj: Objective,
    cfg: &SearchConfig,
) -> Result<(ExactSolution, SearchTrace)> {
    if !matches!(obj, Objective::Msr | Objective::Ssr) {
        return Err(Error::InvalidArgument(format!(
            "branch and bound handles msr and ssr, not {obj}"
        )));
    }
    check_load_bounds(inst)?;
    let mut search = Search::new(inst, obj, cfg);
    search.run();
    let trace = SearchTrace {
        nodes: search.nodes,
        incumbents: search.incumbents.clone(),
    };
    match search.best {
        Some((mapping, value)) => {
            let perm = Permutation::from_mapping(mapping)
                .map_err(|_| Error::Internal("search produced a non-bijective assignment".into()))?;
            Ok((
                ExactSolution {
                    perm,
                    value,
                    proven_optimal: !search.aborted,
                },
                trace,
            ))
        }
        None => Err(Error::SizeCap(format!(
            "node cap {} exhausted before any complete assignment",
            cfg.node_cap
        ))),
    }
}

/// Verifies that every reachable load fits in u64, so the search loop can
/// use plain arithmetic: each send or receive total is bounded by the
/// whole data mass times the largest link cost.
fn check_load_bounds(inst: &DrpInstance) -> Result<()> {
    let n = inst.n();
    let mut mass: u128 = 0;
    let mut max_c: u128 = 0;
    for i in 0..n {
        for j in 0..n {
            mass += inst.t(i, j) as u128;
            max_c = max_c.max(inst.c(i, j) as u128);
        }
    }
    let bound = mass.checked_mul(max_c).ok_or(Error::Overflow)?;
    if bound.checked_mul(2).is_none_or(|b| b > u64::MAX as u128) {
        return Err(Error::Overflow);
    }
    Ok(())
}

struct Search<'a> {
    inst: &'a DrpInstance,
    obj: Objective,
    n: usize,
    /// Interval indices ordered by decreasing volume; `zero_from` marks
    /// the first all-zero interval in that order.
    order: Vec<usize>,
    zero_from: usize,
    equivalent: Vec<Vec<bool>>,
    node_cap: u64,
    pruning: bool,
    send: Vec<u64>,
    rcv: Vec<u64>,
    used: Vec<bool>,
    assignment: Vec<usize>,
    /// Exclusive upper bound: only strictly smaller aggregates are kept.
    bound: u64,
    best: Option<(Vec<usize>, u64)>,
    nodes: u64,
    incumbents: Vec<u64>,
    aborted: bool,
}

impl<'a> Search<'a> {
    fn new(inst: &'a DrpInstance, obj: Objective, cfg: &SearchConfig) -> Self {
        let n = inst.n();
        let volume: Vec<u64> = (0..n).map(|j| (0..n).map(|i| inst.t(i, j)).sum()).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&j| (std::cmp::Reverse(volume[j]), j));
        let zero_from = order
            .iter()
            .position(|&j| volume[j] == 0)
            .unwrap_or(n);
        Search {
            inst,
            obj,
            n,
            order,
            zero_from,
            equivalent: interchangeable_machines(inst),
            node_cap: cfg.node_cap,
            pruning: cfg.pruning,
            send: vec![0; n],
            rcv: vec![0; n],
            used: vec![false; n],
            assignment: vec![usize::MAX; n],
            bound: cfg
                .initial_incumbent
                .map_or(u64::MAX, |v| v.saturating_add(1)),
            best: None,
            nodes: 0,
            incumbents: Vec::new(),
            aborted: false,
        }
    }

    fn run(&mut self) {
        self.descend(0, 0);
    }

    fn descend(&mut self, depth: usize, aggregate: u64) {
        if self.aborted {
            return;
        }
        if depth == self.n || depth >= self.zero_from {
            self.complete_zero_tail(depth, aggregate);
            return;
        }
        let interval = self.order[depth];
        let mut candidates: Vec<(u64, usize)> = Vec::with_capacity(self.n);
        for m in 0..self.n {
            if self.used[m] {
                continue;
            }
            if (0..m).any(|m2| !self.used[m2] && self.equivalent[m2][m]) {
                continue;
            }
            candidates.push((self.marginal_aggregate(interval, m, aggregate), m));
        }
        candidates.sort_unstable();
        for (next_aggregate, m) in candidates {
            if self.aborted {
                return;
            }
            if self.pruning && next_aggregate >= self.bound {
                continue;
            }
            if self.nodes >= self.node_cap {
                self.aborted = true;
                return;
            }
            self.nodes += 1;
            self.assign(interval, m);
            self.descend(depth + 1, next_aggregate);
            self.unassign(interval, m);
        }
    }

    /// All remaining intervals carry no data; any bijective completion
    /// yields the same aggregate, so take the first one.
    fn complete_zero_tail(&mut self, depth: usize, aggregate: u64) {
        if aggregate >= self.bound {
            return;
        }
        let mut filled = Vec::new();
        let mut free = (0..self.n).filter(|&m| !self.used[m]);
        for d in depth..self.n {
            let interval = self.order[d];
            let m = free.next().expect("free machine for every interval");
            self.assignment[interval] = m;
            filled.push(interval);
        }
        self.bound = aggregate;
        self.best = Some((self.assignment.clone(), aggregate));
        self.incumbents.push(aggregate);
        for interval in filled {
            self.assignment[interval] = usize::MAX;
        }
    }

    /// Aggregate after placing `interval` on machine `m`, without
    /// mutating the search state.
    fn marginal_aggregate(&self, interval: usize, m: usize, aggregate: u64) -> u64 {
        let mut agg = aggregate;
        let mut rcv_m = 0u64;
        for i in 0..self.n {
            let delta = self.inst.t(i, interval) * self.inst.c(i, m);
            rcv_m += delta;
            let send = self.send[i] + delta;
            let with = match self.obj {
                Objective::Msr => send.max(self.rcv[i]),
                _ => send + self.rcv[i],
            };
            agg = agg.max(with);
        }
        let m_load = match self.obj {
            Objective::Msr => {
                let send_m = self.send[m] + self.inst.t(m, interval) * self.inst.c(m, m);
                send_m.max(rcv_m)
            }
            _ => self.send[m] + self.inst.t(m, interval) * self.inst.c(m, m) + rcv_m,
        };
        agg.max(m_load)
    }

    fn assign(&mut self, interval: usize, m: usize) {
        let mut rcv_m = 0u64;
        for i in 0..self.n {
            let delta = self.inst.t(i, interval) * self.inst.c(i, m);
            self.send[i] += delta;
            rcv_m += delta;
        }
        self.rcv[m] = rcv_m;
        self.used[m] = true;
        self.assignment[interval] = m;
    }

    fn unassign(&mut self, interval: usize, m: usize) {
        for i in 0..self.n {
            self.send[i] -= self.inst.t(i, interval) * self.inst.c(i, m);
        }
        self.rcv[m] = 0;
        self.used[m] = false;
        self.assignment[interval] = usize::MAX;
    }
}

/// `equivalent[a][b]` holds when swapping machines `a` and `b` leaves
/// both `T` and `C` unchanged, i.e. the two machines play identical
/// roles in every assignment.
fn interchangeable_machines(inst: &DrpInstance) -> Vec<Vec<bool>> {
    let n = inst.n();
    let mut equivalent = vec![vec![false; n]; n];
    for (a, b) in (0..n).tuple_combinations() {
        let swap = |x: usize| {
            if x == a {
                b
            } else if x == b {
                a
            } else {
                x
            }
        };
        let automorphism = (0..n).all(|i| {
            (0..n).all(|j| {
                inst.t(swap(i), j) == inst.t(i, j) && inst.c(swap(i), swap(j)) == inst.c(i, j)
            })
        });
        if automorphism {
            equivalent[a][b] = true;
            equivalent[b][a] = true;
        }
    }
    equivalent
}
