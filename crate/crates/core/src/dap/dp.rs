//! Dynamic programs over the splitter graph for `total` and `btnk`.
//!
//! States are pairs of a graph vertex and the set of machines already
//! used by the partial assignment. Two prefixes reaching the same vertex
//! with the same machine set are interchangeable for any extension, so
//! only the cheaper one is kept; this bounds the state space by
//! `2^n * n * N` instead of the factorial blowup of storing every
//! partial assignment. The factorial reference engine is retained as
//! [`decide_dap_total_enumerative`] for auditing.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{Objective, Permutation};

use super::graph::{build_splitter_graph, DapInstance, DapSolution, SplitterGraph};

/// Size limits for the dynamic programs.
#[derive(Debug, Clone)]
pub struct DpConfig {
    /// Largest machine count admitted; the state space grows as `2^n`.
    pub max_machines: usize,
}

impl Default for DpConfig {
    fn default() -> Self {
        DpConfig { max_machines: 16 }
    }
}

/// Outcome of a threshold test.
#[derive(Debug, Clone)]
pub struct Decision {
    pub feasible: bool,
    /// A selection and assignment meeting the threshold, when feasible.
    pub witness: Option<(super::SplitterSelection, Permutation)>,
}

#[derive(Clone, Copy)]
struct NodeInfo {
    cost: u64,
    parent_col: usize,
    parent_mask: u32,
    label: u8,
}

#[derive(Clone, Copy)]
enum Accumulate {
    /// Sum of edge weights (`total`).
    Sum,
    /// Maximum edge weight (`btnk`).
    Max,
}

struct DpRun {
    /// Reachable states per level, keyed by (column, used-machine mask).
    layers: Vec<BTreeMap<(usize, u32), NodeInfo>>,
}

fn check_size(g: &SplitterGraph, cfg: &DpConfig) -> Result<()> {
    if !g.has_scalar_weights() {
        return Err(Error::InvalidArgument(
            "splitter graph was not built with scalar weights".into(),
        ));
    }
    if g.n() > cfg.max_machines {
        return Err(Error::SizeCap(format!(
            "{} machines exceed the dynamic-program cap {}",
            g.n(),
            cfg.max_machines
        )));
    }
    if g.n() > 31 {
        return Err(Error::SizeCap(
            "machine masks are limited to 31 machines".into(),
        ));
    }
    Ok(())
}

/// Runs the deduplicating scalar DP. `threshold` prunes states whose
/// accumulated cost exceeds it.
fn run_dp(g: &SplitterGraph, acc: Accumulate, threshold: Option<u64>) -> Result<DpRun> {
    let n = g.n();
    let sink = g.sink_col();
    let mut layers: Vec<BTreeMap<(usize, u32), NodeInfo>> = Vec::with_capacity(n + 1);
    let mut start = BTreeMap::new();
    start.insert(
        (0usize, 0u32),
        NodeInfo {
            cost: 0,
            parent_col: 0,
            parent_mask: 0,
            label: 0,
        },
    );
    layers.push(start);
    for level in 1..=n {
        let mut next: BTreeMap<(usize, u32), NodeInfo> = BTreeMap::new();
        for (&(col, mask), info) in &layers[level - 1] {
            let targets = if level < n {
                col + 1..=g.max_col(level)
            } else {
                sink..=sink
            };
            for to_col in targets {
                for label in 0..n {
                    if mask & (1 << label) != 0 {
                        continue;
                    }
                    let w = g.scalar_weight(col, to_col, label);
                    let cost = match acc {
                        Accumulate::Sum => info.cost.checked_add(w).ok_or(Error::Overflow)?,
                        Accumulate::Max => info.cost.max(w),
                    };
                    if threshold.is_some_and(|t| cost > t) {
                        continue;
                    }
                    let key = (to_col, mask | (1 << label));
                    let candidate = NodeInfo {
                        cost,
                        parent_col: col,
                        parent_mask: mask,
                        label: label as u8,
                    };
                    match next.get_mut(&key) {
                        Some(existing) if existing.cost <= cost => {}
                        Some(existing) => *existing = candidate,
                        None => {
                            next.insert(key, candidate);
                        }
                    }
                }
            }
        }
        layers.push(next);
    }
    Ok(DpRun { layers })
}

impl DpRun {
    fn final_state(&self, g: &SplitterGraph) -> Option<(&NodeInfo, (usize, u32))> {
        let key = (g.sink_col(), (1u32 << g.n()) - 1);
        self.layers[g.n()].get(&key).map(|info| (info, key))
    }

    /// Walks parents from the sink back to the source, yielding the
    /// interior columns and the assignment.
    fn reconstruct(&self, g: &SplitterGraph) -> Option<(Vec<usize>, Permutation)> {
        let (_, mut key) = self.final_state(g)?;
        let n = g.n();
        let mut labels = vec![0usize; n];
        let mut cols = Vec::with_capacity(n - 1);
        for level in (1..=n).rev() {
            let info = self.layers[level].get(&key)?;
            labels[level - 1] = info.label as usize;
            if level < n {
                cols.push(key.0);
            }
            key = (info.parent_col, info.parent_mask);
        }
        cols.reverse();
        let perm = Permutation::from_mapping(labels).ok()?;
        Some((cols, perm))
    }
}

fn decision_from_run(g: &SplitterGraph, run: &DpRun) -> Decision {
    match run.reconstruct(g) {
        Some((cols, perm)) => Decision {
            feasible: true,
            witness: Some((g.selection(&cols), perm)),
        },
        None => Decision {
            feasible: false,
            witness: None,
        },
    }
}

/// Tests whether some splitter selection and assignment reach summed
/// cost at most `alpha`.
pub fn decide_dap_total(g: &SplitterGraph, alpha: i64) -> Result<Decision> {
    decide_dap_total_with(g, alpha, &DpConfig::default())
}

/// [`decide_dap_total`] with explicit size limits.
pub fn decide_dap_total_with(g: &SplitterGraph, alpha: i64, cfg: &DpConfig) -> Result<Decision> {
    check_size(g, cfg)?;
    if alpha < 0 {
        return Ok(Decision {
            feasible: false,
            witness: None,
        });
    }
    let run = run_dp(g, Accumulate::Sum, Some(alpha as u64))?;
    Ok(decision_from_run(g, &run))
}

/// Tests whether some splitter selection and assignment keep every
/// per-interval receive cost at most `alpha`.
pub fn decide_dap_btnk(g: &SplitterGraph, alpha: i64) -> Result<Decision> {
    decide_dap_btnk_with(g, alpha, &DpConfig::default())
}

/// [`decide_dap_btnk`] with explicit size limits.
pub fn decide_dap_btnk_with(g: &SplitterGraph, alpha: i64, cfg: &DpConfig) -> Result<Decision> {
    check_size(g, cfg)?;
    if alpha < 0 {
        return Ok(Decision {
            feasible: false,
            witness: None,
        });
    }
    let run = run_dp(g, Accumulate::Max, Some(alpha as u64))?;
    Ok(decision_from_run(g, &run))
}

fn solution_from_run(
    g: &SplitterGraph,
    run: &DpRun,
) -> Result<DapSolution> {
    let (info, _) = run.final_state(g).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "no feasible splitter selection: {} values for {} machines",
            g.num_cols(),
            g.n()
        ))
    })?;
    let value = info.cost;
    let (cols, perm) = run
        .reconstruct(g)
        .ok_or_else(|| Error::Internal("failed to reconstruct an optimal path".into()))?;
    Ok(DapSolution {
        splitters: g.selection(&cols),
        perm,
        value,
        induced_t: g.induced_transmission(&cols)?,
        proven_optimal: true,
    })
}

/// Minimizes the `total` objective over all splitter selections and
/// assignments.
pub fn solve_dap_total(inst: &DapInstance) -> Result<DapSolution> {
    solve_dap_total_with(inst, &DpConfig::default())
}

/// [`solve_dap_total`] with explicit size limits.
pub fn solve_dap_total_with(inst: &DapInstance, cfg: &DpConfig) -> Result<DapSolution> {
    let g = build_splitter_graph(inst, Objective::Total)?;
    check_size(&g, cfg)?;
    let run = run_dp(&g, Accumulate::Sum, None)?;
    solution_from_run(&g, &run)
}

/// Minimizes the `btnk` objective over all splitter selections and
/// assignments.
///
/// The optimum is always one of the edge weights, so this binary-searches
/// the sorted distinct weights for the smallest threshold accepted by
/// [`decide_dap_btnk`].
pub fn solve_dap_btnk(inst: &DapInstance) -> Result<DapSolution> {
    solve_dap_btnk_with(inst, &DpConfig::default())
}

/// [`solve_dap_btnk`] with explicit size limits.
pub fn solve_dap_btnk_with(inst: &DapInstance, cfg: &DpConfig) -> Result<DapSolution> {
    let g = build_splitter_graph(inst, Objective::Btnk)?;
    check_size(&g, cfg)?;
    if g.num_cols() < g.n() - 1 {
        return Err(Error::InvalidArgument(format!(
            "no feasible splitter selection: {} values for {} machines",
            g.num_cols(),
            g.n()
        )));
    }
    let mut candidates: Vec<u64> = Vec::new();
    for from in 0..=g.num_cols() {
        for to in from + 1..=g.sink_col() {
            for machine in 0..g.n() {
                candidates.push(g.scalar_weight(from, to, machine));
            }
        }
    }
    candidates.sort_unstable();
    candidates.dedup();
    let first_feasible = candidates.partition_point(|&alpha| {
        match decide_dap_btnk_with(&g, alpha as i64, cfg) {
            Ok(d) => !d.feasible,
            Err(_) => false,
        }
    });
    let alpha = *candidates
        .get(first_feasible)
        .ok_or_else(|| Error::Internal("no feasible bottleneck threshold".into()))?;
    let run = run_dp(&g, Accumulate::Max, Some(alpha))?;
    let solution = solution_from_run(&g, &run)?;
    debug_assert_eq!(solution.value, alpha);
    Ok(solution)
}

/// Reference threshold test that stores every reachable (path prefix,
/// assignment prefix) pair instead of deduplicating by machine set. Its
/// state count grows factorially; it exists to audit the optimized
/// engine on tiny instances.
pub fn decide_dap_total_enumerative(g: &SplitterGraph, alpha: i64) -> Result<Decision> {
    check_size(g, &DpConfig { max_machines: 8 })?;
    if alpha < 0 {
        return Ok(Decision {
            feasible: false,
            witness: None,
        });
    }
    let layers = enumerative_states(g, alpha as u64)?;
    let final_level = &layers[g.n()];
    match final_level.iter().next() {
        Some(((_, labels), (_, cols))) => {
            let perm = Permutation::from_mapping(labels.iter().map(|&l| l as usize).collect())
                .map_err(|_| Error::Internal("stored prefix is not injective".into()))?;
            Ok(Decision {
                feasible: true,
                witness: Some((g.selection(cols), perm)),
            })
        }
        None => Ok(Decision {
            feasible: false,
            witness: None,
        }),
    }
}

/// Per-level tables of the reference engine: each level maps
/// (column, assignment prefix) to the cheapest cost within `alpha` and
/// the interior columns of one path attaining it.
#[allow(clippy::type_complexity)]
pub(crate) fn enumerative_states(
    g: &SplitterGraph,
    alpha: u64,
) -> Result<Vec<BTreeMap<(usize, Vec<u8>), (u64, Vec<usize>)>>> {
    let n = g.n();
    let sink = g.sink_col();
    let mut layers: Vec<BTreeMap<(usize, Vec<u8>), (u64, Vec<usize>)>> = Vec::with_capacity(n + 1);
    let mut start = BTreeMap::new();
    start.insert((0usize, Vec::new()), (0u64, Vec::new()));
    layers.push(start);
    for level in 1..=n {
        let mut next: BTreeMap<(usize, Vec<u8>), (u64, Vec<usize>)> = BTreeMap::new();
        for ((col, labels), (cost, cols)) in &layers[level - 1] {
            let targets = if level < n {
                *col + 1..=g.max_col(level)
            } else {
                sink..=sink
            };
            for to_col in targets {
                for label in 0..n as u8 {
                    if labels.contains(&label) {
                        continue;
                    }
                    let w = g.scalar_weight(*col, to_col, label as usize);
                    let new_cost = cost.checked_add(w).ok_or(Error::Overflow)?;
                    if new_cost > alpha {
                        continue;
                    }
                    let mut new_labels = labels.clone();
                    new_labels.push(label);
                    let mut new_cols = cols.clone();
                    if level < n {
                        new_cols.push(to_col);
                    }
                    let key = (to_col, new_labels);
                    match next.get_mut(&key) {
                        Some(existing) if existing.0 <= new_cost => {}
                        Some(existing) => *existing = (new_cost, new_cols),
                        None => {
                            next.insert(key, (new_cost, new_cols));
                        }
                    }
                }
            }
        }
        layers.push(next);
    }
    Ok(layers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::eval_costs;
    use crate::model::DrpInstance;

    fn two_machine(datasets: Vec<Vec<i64>>) -> DapInstance {
        DapInstance::new(datasets, vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn separated_datasets_cost_nothing() {
        let inst = two_machine(vec![vec![1, 2], vec![3, 4]]);
        for solve in [solve_dap_total, solve_dap_btnk] {
            let sol = solve(&inst).unwrap();
            assert_eq!(sol.value, 0);
            assert_eq!(sol.splitters.values, vec![2]);
            assert_eq!(sol.perm, Permutation::identity(2));
        }
    }

    #[test]
    fn swapped_datasets_cost_nothing_via_swap() {
        let inst = two_machine(vec![vec![3, 4], vec![1, 2]]);
        let sol = solve_dap_total(&inst).unwrap();
        assert_eq!(sol.value, 0);
        assert_eq!(sol.perm.one_based(), vec![2, 1]);
        assert_eq!(sol.induced_t, vec![vec![0, 2], vec![2, 0]]);
    }

    #[test]
    fn single_distinct_value_collapses_to_one_interval() {
        // Everything falls into the first interval; the cheapest owner
        // receives the stragglers. Expected values pinned by the
        // exhaustive check below.
        let inst = two_machine(vec![vec![7, 7], vec![7]]);
        let total = solve_dap_total(&inst).unwrap();
        assert_eq!(total.value, 1);
        let btnk = solve_dap_btnk(&inst).unwrap();
        assert_eq!(btnk.value, 1);
    }

    #[test]
    fn solution_value_matches_model_evaluation() {
        let inst = DapInstance::new(
            vec![vec![2, 9, 9], vec![1, 4], vec![5]],
            vec![
                vec![0, 2, 4],
                vec![1, 0, 3],
                vec![2, 2, 0],
            ],
        )
        .unwrap();
        for (solve, obj) in [
            (solve_dap_total as fn(&DapInstance) -> Result<DapSolution>, Objective::Total),
            (solve_dap_btnk, Objective::Btnk),
        ] {
            let sol = solve(&inst).unwrap();
            let drp = DrpInstance::new(sol.induced_t.clone(), inst.costs().to_vec()).unwrap();
            let report = eval_costs(&drp, &sol.perm).unwrap();
            assert_eq!(report.value(obj), sol.value);
        }
    }

    #[test]
    fn exhaustive_check_on_small_instances() {
        // Brute force over every splitter pair and assignment.
        let inst = DapInstance::new(
            vec![vec![2, 9, 9], vec![1, 4], vec![5]],
            vec![
                vec![0, 2, 4],
                vec![1, 0, 3],
                vec![2, 2, 0],
            ],
        )
        .unwrap();
        let (best_total, best_btnk) = brute_force_dap(&inst);
        assert_eq!(solve_dap_total(&inst).unwrap().value, best_total);
        assert_eq!(solve_dap_btnk(&inst).unwrap().value, best_btnk);
    }

    fn brute_force_dap(inst: &DapInstance) -> (u64, u64) {
        use itertools::Itertools;
        let n = inst.n();
        let big_n = inst.num_values();
        let mut best_total = u64::MAX;
        let mut best_btnk = u64::MAX;
        for cols in (1..=big_n).combinations(n - 1) {
            let t = super::super::graph::induced_transmission_for_indices(inst, &cols).unwrap();
            let drp = DrpInstance::new(t, inst.costs().to_vec()).unwrap();
            for mapping in (0..n).permutations(n) {
                let perm = Permutation::from_mapping(mapping).unwrap();
                let report = eval_costs(&drp, &perm).unwrap();
                best_total = best_total.min(report.total);
                best_btnk = best_btnk.min(report.btnk);
            }
        }
        (best_total, best_btnk)
    }

    #[test]
    fn decide_brackets_the_optimum() {
        let inst = two_machine(vec![vec![7, 7], vec![7]]);
        let g_total = build_splitter_graph(&inst, Objective::Total).unwrap();
        let optimum = solve_dap_total(&inst).unwrap().value as i64;
        assert!(!decide_dap_total(&g_total, optimum - 1).unwrap().feasible);
        let yes = decide_dap_total(&g_total, optimum).unwrap();
        assert!(yes.feasible);
        let (splitters, perm) = yes.witness.unwrap();
        let t = g_total.induced_transmission(&splitters.indices).unwrap();
        let drp = DrpInstance::new(t, inst.costs().to_vec()).unwrap();
        assert!(eval_costs(&drp, &perm).unwrap().total as i64 <= optimum);
        assert!(!decide_dap_total(&g_total, -1).unwrap().feasible);
    }

    #[test]
    fn decide_btnk_brackets_the_optimum() {
        let inst = DapInstance::new(
            vec![vec![2, 9], vec![1, 4], vec![5, 6]],
            vec![
                vec![0, 2, 4],
                vec![1, 0, 3],
                vec![2, 2, 0],
            ],
        )
        .unwrap();
        let g = build_splitter_graph(&inst, Objective::Btnk).unwrap();
        let optimum = solve_dap_btnk(&inst).unwrap().value as i64;
        assert!(!decide_dap_btnk(&g, optimum - 1).unwrap().feasible);
        assert!(decide_dap_btnk(&g, optimum).unwrap().feasible);
        assert!(!decide_dap_btnk(&g, -1).unwrap().feasible);
    }

    #[test]
    fn enumerative_engine_agrees_with_dedup() {
        let inst = DapInstance::new(
            vec![vec![2, 9], vec![1, 4], vec![5]],
            vec![
                vec![0, 2, 4],
                vec![1, 0, 3],
                vec![2, 2, 0],
            ],
        )
        .unwrap();
        let g = build_splitter_graph(&inst, Objective::Total).unwrap();
        for alpha in -1..40 {
            let fast = decide_dap_total(&g, alpha).unwrap();
            let slow = decide_dap_total_enumerative(&g, alpha).unwrap();
            assert_eq!(fast.feasible, slow.feasible, "alpha = {alpha}");
        }
    }

    #[test]
    fn reference_states_match_explicit_prefix_enumeration() {
        // Every stored (vertex, assignment prefix) of the reference
        // engine must be exactly the set of feasible prefixes, with the
        // cheapest reaching cost.
        let inst = DapInstance::new(
            vec![vec![2, 9], vec![1, 4]],
            vec![vec![0, 3], vec![2, 0]],
        )
        .unwrap();
        let g = build_splitter_graph(&inst, Objective::Total).unwrap();
        let alpha = 30u64;
        let layers = enumerative_states(&g, alpha).unwrap();
        let expected = explicit_prefixes(&g, alpha);
        for level in 0..=g.n() {
            let got: BTreeMap<(usize, Vec<u8>), u64> = layers[level]
                .iter()
                .map(|(k, v)| (k.clone(), v.0))
                .collect();
            assert_eq!(got, expected[level], "level {level}");
        }
    }

    /// Independent prefix enumeration: all strictly increasing column
    /// prefixes crossed with all injective assignment prefixes, keeping
    /// the cheapest cost within `alpha`.
    fn explicit_prefixes(
        g: &SplitterGraph,
        alpha: u64,
    ) -> Vec<BTreeMap<(usize, Vec<u8>), u64>> {
        let n = g.n();
        let mut result: Vec<BTreeMap<(usize, Vec<u8>), u64>> = vec![BTreeMap::new(); n + 1];
        result[0].insert((0, Vec::new()), 0);

        fn extend(
            g: &SplitterGraph,
            alpha: u64,
            level: usize,
            col: usize,
            labels: &mut Vec<u8>,
            cost: u64,
            result: &mut [BTreeMap<(usize, Vec<u8>), u64>],
        ) {
            let n = g.n();
            if level == n {
                return;
            }
            let targets: Vec<usize> = if level + 1 < n {
                (col + 1..=g.max_col(level + 1)).collect()
            } else {
                vec![g.sink_col()]
            };
            for to_col in targets {
                for label in 0..n as u8 {
                    if labels.contains(&label) {
                        continue;
                    }
                    let new_cost = cost + g.scalar_weight(col, to_col, label as usize);
                    if new_cost > alpha {
                        continue;
                    }
                    labels.push(label);
                    let key = (to_col, labels.clone());
                    let entry = result[level + 1].entry(key).or_insert(u64::MAX);
                    *entry = (*entry).min(new_cost);
                    extend(g, alpha, level + 1, to_col, labels, new_cost, result);
                    labels.pop();
                }
            }
        }

        let mut labels = Vec::new();
        extend(g, alpha, 0, 0, &mut labels, 0, &mut result);
        result
    }

    #[test]
    fn too_few_values_is_infeasible() {
        let inst = DapInstance::new(
            vec![vec![5], vec![], vec![]],
            vec![
                vec![0, 1, 1],
                vec![1, 0, 1],
                vec![1, 1, 0],
            ],
        )
        .unwrap();
        assert!(matches!(
            solve_dap_total(&inst),
            Err(Error::InvalidArgument(_))
        ));
        let g = build_splitter_graph(&inst, Objective::Total).unwrap();
        assert!(!decide_dap_total(&g, 1000).unwrap().feasible);
    }

    #[test]
    fn machine_cap_is_enforced() {
        let inst = DapInstance::new(
            vec![vec![1], vec![2], vec![3]],
            vec![
                vec![0, 1, 1],
                vec![1, 0, 1],
                vec![1, 1, 0],
            ],
        )
        .unwrap();
        let cfg = DpConfig { max_machines: 2 };
        assert!(matches!(
            solve_dap_total_with(&inst, &cfg),
            Err(Error::SizeCap(_))
        ));
    }

    #[test]
    fn vector_graph_is_rejected_by_scalar_dp() {
        let inst = two_machine(vec![vec![1], vec![2]]);
        let g = build_splitter_graph(&inst, Objective::Msr).unwrap();
        assert!(matches!(
            decide_dap_total(&g, 10),
            Err(Error::InvalidArgument(_))
        ));
    }
}
