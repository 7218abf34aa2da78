//! Hard-instance constructions that embed classic combinatorial
//! questions into redistribution and allocation instances.
//!
//! Each construction is also a test oracle: the embedded question can be
//! answered independently by enumeration, and the solver's optimum on
//! the constructed instance answers the same question through a known
//! threshold. The constructions double as generators of adversarial
//! benchmark inputs whose optima are known by design.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigUint;

use crate::dap::SplitterGraph;
use crate::error::{Error, Result};
use crate::model::DrpInstance;

/// A multiset of positive integers to be split into two equal-sum
/// halves.
#[derive(Debug, Clone)]
pub struct PartitionInstance {
    items: Vec<u64>,
    total: u64,
}

impl PartitionInstance {
    pub fn new(items: Vec<u64>) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::InvalidArgument(
                "a partition instance needs at least one item".into(),
            ));
        }
        if items.contains(&0) {
            return Err(Error::InvalidArgument(
                "partition items must be positive".into(),
            ));
        }
        let total = items
            .iter()
            .try_fold(0u64, |acc, &s| acc.checked_add(s))
            .ok_or(Error::Overflow)?;
        Ok(PartitionInstance { items, total })
    }

    pub fn items(&self) -> &[u64] {
        &self.items
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

/// Embeds an equal-split question into a `2n + 2`-machine
/// redistribution instance.
///
/// Machines 1 and 2 (1-based) both hold every item. Each item column
/// must be parked on one of the per-item slots behind machine 1 or
/// machine 2 — a hub-to-hub unit cost equal to the full item sum makes
/// parking an item on a hub more expensive than any sane assignment —
/// and then the hubs' send loads are exactly the two subset sums of the
/// induced split. The `msr` optimum is `total / 2` precisely when the
/// items split evenly; no machine both sends and receives, so `ssr`
/// behaves identically.
pub fn partition_to_drp_msr(p: &PartitionInstance) -> DrpInstance {
    let n = p.items.len();
    let size = 2 * n + 2;
    let mut t = vec![vec![0u64; size]; size];
    for (j, &s) in p.items.iter().enumerate() {
        t[0][j] = s;
        t[1][j] = s;
    }
    let mut c = vec![vec![0u64; size]; size];
    c[0][1] = p.total;
    c[1][0] = p.total;
    c[0][2..n + 2].fill(1);
    c[1][n + 2..2 * n + 2].fill(1);
    DrpInstance::new(t, c).expect("the construction is square with a zero diagonal")
}

/// `3k` positive integers to be grouped into `k` triples of equal sum.
#[derive(Debug, Clone)]
pub struct ThreePartitionInstance {
    items: Vec<u64>,
    k: usize,
    group_sum: u64,
}

impl ThreePartitionInstance {
    pub fn new(items: Vec<u64>) -> Result<Self> {
        if items.is_empty() || !items.len().is_multiple_of(3) {
            return Err(Error::InvalidArgument(format!(
                "need a positive multiple of 3 items, got {}",
                items.len()
            )));
        }
        if items.contains(&0) {
            return Err(Error::InvalidArgument(
                "grouping items must be positive".into(),
            ));
        }
        let k = items.len() / 3;
        let total = items
            .iter()
            .try_fold(0u64, |acc, &s| acc.checked_add(s))
            .ok_or(Error::Overflow)?;
        if total % k as u64 != 0 {
            return Err(Error::InvalidArgument(format!(
                "item sum {total} is not divisible by the group count {k}"
            )));
        }
        Ok(ThreePartitionInstance {
            items,
            k,
            group_sum: total / k as u64,
        })
    }

    pub fn items(&self) -> &[u64] {
        &self.items
    }

    /// Number of triples to form.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Required sum of each triple.
    pub fn group_sum(&self) -> u64 {
        self.group_sum
    }
}

/// Embeds a triple-grouping question into a `3k`-machine redistribution
/// instance.
///
/// The machines form `k` triangles: machines `i`, `k + i` and `2k + i`
/// exchange at unit cost and ignore everyone else. The first `2k`
/// machines hold every item, the last `k` hold nothing. Any assignment
/// places three item columns on each triangle; orienting each triple
/// with its smallest member on the data-free machine yields a per-
/// triangle `send + rcv` peak equal to the triple's sum, so the `ssr`
/// optimum equals the target group sum exactly when a perfect grouping
/// exists and exceeds it otherwise.
pub fn three_partition_to_drp_ssr(t3: &ThreePartitionInstance) -> DrpInstance {
    let k = t3.k;
    let n = 3 * k;
    let mut t = vec![vec![0u64; n]; n];
    for row in t.iter_mut().take(2 * k) {
        row.copy_from_slice(&t3.items);
    }
    let mut c = vec![vec![0u64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            if i % k == j % k && i != j {
                *cell = 1;
            }
        }
    }
    DrpInstance::new(t, c).expect("the construction is square with a zero diagonal")
}

/// A simple undirected graph with 1-based vertex labels.
#[derive(Debug, Clone)]
pub struct Graph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Normalizes, deduplicates and sorts the edge list. Endpoints use
    /// labels in `1..=vertices`; self-loops are rejected.
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {u}")));
            }
            if u < 1 || v < 1 || u > vertices || v > vertices {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u}, {v}) leaves the vertex range 1..={vertices}"
                )));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph {
            vertices,
            edges: set.into_iter().collect(),
        })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

fn is_prime(c: usize) -> bool {
    c >= 2 && (2..).take_while(|d| d * d <= c).all(|d| !c.is_multiple_of(d))
}

fn smallest_prime_above(k: usize) -> usize {
    (k + 1..).find(|&c| is_prime(c)).expect("primes are unbounded")
}

/// Encodes clique existence as an equal-split selection question.
///
/// With a prime `q` larger than the clique size `k`, vertex `i` becomes
/// the integer `(k - 1) * q^i` and edge `(i, j)` becomes `q^i + q^j`.
/// Summing a clique's edge integers counts each endpoint `k - 1` times,
/// balancing its vertex integers exactly, so a `k`-clique always yields
/// an accepted instance. The selection size of the produced instance is
/// `k + k(k - 1) / 2` — one pick per clique vertex and edge.
///
/// The converse holds for `k = 2` (every base-`q` digit stays below `q`,
/// and the only balanced pair-selection sets an edge against its two
/// endpoints), but not in general: from `k = 3` on, other edge patterns
/// balance digit-for-digit too. A chordless 4-cycle splits as
/// `{e12, e14, e23}` against `{v1, v2, e34}` with no triangle present.
///
/// The integers grow as `q^i`, so they use arbitrary precision.
pub fn kclique_to_selecting_partition(g: &Graph, k: usize) -> Result<SelectingPartitionInstance> {
    if k < 2 {
        return Err(Error::InvalidArgument(
            "clique size must be at least 2".into(),
        ));
    }
    let q = BigUint::from(smallest_prime_above(k));
    let mut items = Vec::with_capacity(g.vertices() + g.edges().len());
    for i in 1..=g.vertices() {
        items.push(q.pow(i as u32) * (k as u32 - 1));
    }
    for &(u, v) in g.edges() {
        items.push(q.pow(u as u32) + q.pow(v as u32));
    }
    SelectingPartitionInstance::new(items, k + k * (k - 1) / 2)
}

/// Choose exactly `k` of the items so that the chosen multiset splits
/// into two equal-sum halves.
///
/// Fewer than `k` items is allowed and simply unsatisfiable, which keeps
/// graph-derived instances total for graphs too small to hold a clique.
#[derive(Debug, Clone)]
pub struct SelectingPartitionInstance {
    items: Vec<BigUint>,
    k: usize,
}

impl SelectingPartitionInstance {
    pub fn new(items: Vec<BigUint>, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidArgument(
                "selection size must be at least 2".into(),
            ));
        }
        Ok(SelectingPartitionInstance { items, k })
    }

    pub fn from_u64(items: &[u64], k: usize) -> Result<Self> {
        Self::new(items.iter().map(|&s| BigUint::from(s)).collect(), k)
    }

    pub fn items(&self) -> &[BigUint] {
        &self.items
    }

    pub fn n(&self) -> usize {
        self.items.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// Indices (0-based into the item list) certifying a positive
/// selection: `half` is the sub-multiset of `subset` carrying half of
/// the subset's sum.
#[derive(Debug, Clone)]
pub struct SelectingWitness {
    pub subset: Vec<usize>,
    pub half: Vec<usize>,
}

/// Decides a selection instance by enumerating all `C(n, k)` subsets and
/// all `2^k` splits of each. See
/// [`selecting_partition_witness_with_budget`] for the certificate.
pub fn check_selecting_partition(sp: &SelectingPartitionInstance) -> Result<bool> {
    check_selecting_partition_with_budget(sp, 20, 10)
}

/// [`check_selecting_partition`] with explicit enumeration limits.
pub fn check_selecting_partition_with_budget(
    sp: &SelectingPartitionInstance,
    max_items: usize,
    max_k: usize,
) -> Result<bool> {
    selecting_partition_witness_with_budget(sp, max_items, max_k).map(|w| w.is_some())
}

/// As [`check_selecting_partition`], but returns the first certificate
/// in lexicographic order when the answer is yes.
pub fn selecting_partition_witness(
    sp: &SelectingPartitionInstance,
) -> Result<Option<SelectingWitness>> {
    selecting_partition_witness_with_budget(sp, 20, 10)
}

/// Exhaustive certificate search with explicit enumeration limits.
pub fn selecting_partition_witness_with_budget(
    sp: &SelectingPartitionInstance,
    max_items: usize,
    max_k: usize,
) -> Result<Option<SelectingWitness>> {
    if sp.n() > max_items || sp.k > max_k || sp.k > 30 {
        return Err(Error::SizeCap(format!(
            "{} items with selection size {} exceed the enumeration budget {max_items}/{max_k}",
            sp.n(),
            sp.k
        )));
    }
    if sp.n() < sp.k {
        return Ok(None);
    }
    for subset in (0..sp.n()).combinations(sp.k) {
        let total: BigUint = subset.iter().map(|&i| &sp.items[i]).sum();
        if total.bit(0) {
            continue;
        }
        for mask in 0u32..1 << sp.k {
            let sum: BigUint = subset
                .iter()
                .enumerate()
                .filter(|(pos, _)| mask >> pos & 1 == 1)
                .map(|(_, &i)| &sp.items[i])
                .sum();
            if sum * 2u32 == total {
                let half = subset
                    .iter()
                    .enumerate()
                    .filter(|(pos, _)| mask >> pos & 1 == 1)
                    .map(|(_, &i)| i)
                    .collect();
                return Ok(Some(SelectingWitness { subset, half }));
            }
        }
    }
    Ok(None)
}

/// Builds the layered-graph allocation form whose first `k` levels
/// select items.
///
/// A path's first `k` columns pick `k` of the sorted items; each picked
/// item lands on the two hub machines of a `2k + 2`-machine cost gadget
/// identical in shape to [`partition_to_drp_msr`], with the hub-to-hub
/// cost set to the sum of all items so it dominates every selectable
/// subset sum. All later levels carry zero weight; `k + 1` trailing
/// padding columns, reachable only by those later levels, guarantee
/// that a full path exists whenever at least `k` items are available.
/// The `msr` optimum over a fixed path therefore equals the best
/// achievable half-split peak of the picked items.
pub fn selecting_partition_to_dap_msr(sp: &SelectingPartitionInstance) -> Result<SplitterGraph> {
    let k = sp.k;
    let n_machines = 2 * k + 2;
    let mut real = Vec::with_capacity(sp.n());
    for item in &sp.items {
        let v = u64::try_from(item).map_err(|_| Error::Overflow)?;
        if v > i64::MAX as u64 {
            return Err(Error::Overflow);
        }
        real.push(v);
    }
    real.sort_unstable();
    let delta = real
        .iter()
        .try_fold(0u64, |acc, &s| acc.checked_add(s))
        .ok_or(Error::Overflow)?;
    let num_cols = real.len() + k + 1;

    let mut values: Vec<i64> = real.iter().map(|&v| v as i64).collect();
    let pad_base = values.last().copied().unwrap_or(0);
    for offset in 1..=k as i64 + 1 {
        values.push(pad_base.checked_add(offset).ok_or(Error::Overflow)?);
    }

    let mut vectors = vec![vec![vec![0u64; n_machines]; num_cols + 1]; n_machines];
    for level_vectors in vectors.iter_mut().take(k) {
        for (t, vector) in level_vectors.iter_mut().enumerate().take(real.len()) {
            vector[0] = real[t];
            vector[1] = real[t];
        }
    }
    let level_max_col = (0..n_machines - 1)
        .map(|i| if i < k { real.len() } else { num_cols })
        .collect();

    let mut c = vec![vec![0u64; n_machines]; n_machines];
    c[0][1] = delta;
    c[1][0] = delta;
    c[0][2..k + 2].fill(1);
    c[1][k + 2..2 * k + 2].fill(1);

    SplitterGraph::from_vectors(values, c, vectors, level_max_col)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch_bound::{solve_drp_exact, SearchConfig};
    use crate::dap::{solve_dap_hard_graph, HardBudget};
    use crate::model::{brute_force_drp, Objective};

    fn msr_optimum(inst: &DrpInstance) -> u64 {
        let sol = solve_drp_exact(inst, Objective::Msr, &SearchConfig::default()).unwrap();
        assert!(sol.proven_optimal);
        sol.value
    }

    fn ssr_optimum(inst: &DrpInstance) -> u64 {
        let sol = solve_drp_exact(inst, Objective::Ssr, &SearchConfig::default()).unwrap();
        assert!(sol.proven_optimal);
        sol.value
    }

    #[test]
    fn partition_gadget_shape() {
        let p = PartitionInstance::new(vec![1, 2, 3, 4]).unwrap();
        let inst = partition_to_drp_msr(&p);
        assert_eq!(inst.n(), 10);
        for j in 0..4 {
            assert_eq!(inst.transmission()[0][j], p.items()[j]);
            assert_eq!(inst.transmission()[1][j], p.items()[j]);
        }
        assert!(inst.transmission()[2..].iter().flatten().all(|&x| x == 0));
        let c = inst.costs();
        assert_eq!(c[0][1], 10);
        assert_eq!(c[1][0], 10);
        assert!((2..6).all(|j| c[0][j] == 1 && c[1][j] == 0));
        assert!((6..10).all(|j| c[1][j] == 1 && c[0][j] == 0));
    }

    #[test]
    fn partition_even_split_reaches_half_total() {
        // {1, 4} and {2, 3} split the sum 10 evenly.
        let p = PartitionInstance::new(vec![1, 2, 3, 4]).unwrap();
        let inst = partition_to_drp_msr(&p);
        assert_eq!(msr_optimum(&inst), 5);
        assert_eq!(ssr_optimum(&inst), 5);
    }

    #[test]
    fn partition_small_cases_match_brute_force() {
        // {1, 1} splits evenly; {1, 2} has an odd sum and cannot.
        for (items, expected) in [(vec![1, 1], 1), (vec![1, 2], 2)] {
            let p = PartitionInstance::new(items).unwrap();
            let inst = partition_to_drp_msr(&p);
            assert_eq!(inst.n(), 6);
            assert_eq!(msr_optimum(&inst), expected);
            let brute = brute_force_drp(&inst, Objective::Msr).unwrap();
            assert_eq!(brute.1, expected);
        }
    }

    #[test]
    fn partition_rejects_bad_items() {
        assert!(PartitionInstance::new(vec![]).is_err());
        assert!(PartitionInstance::new(vec![3, 0]).is_err());
    }

    #[test]
    fn grouping_gadget_shape() {
        let t3 = ThreePartitionInstance::new(vec![1, 2, 3, 1, 2, 3]).unwrap();
        assert_eq!(t3.k(), 2);
        assert_eq!(t3.group_sum(), 6);
        let inst = three_partition_to_drp_ssr(&t3);
        assert_eq!(inst.n(), 6);
        for i in 0..4 {
            assert_eq!(inst.transmission()[i], vec![1, 2, 3, 1, 2, 3]);
        }
        assert!(inst.transmission()[4..].iter().flatten().all(|&x| x == 0));
        for i in 0..6 {
            for j in 0..6 {
                let expected = u64::from(i % 2 == j % 2 && i != j);
                assert_eq!(inst.costs()[i][j], expected, "C[{i}][{j}]");
            }
        }
    }

    #[test]
    fn grouping_reaches_target_when_triples_balance() {
        let t3 = ThreePartitionInstance::new(vec![1, 2, 3, 1, 2, 3]).unwrap();
        let inst = three_partition_to_drp_ssr(&t3);
        assert_eq!(ssr_optimum(&inst), 6);
        assert_eq!(brute_force_drp(&inst, Objective::Ssr).unwrap().1, 6);
    }

    #[test]
    fn grouping_single_triple() {
        let t3 = ThreePartitionInstance::new(vec![1, 1, 1]).unwrap();
        assert_eq!(ssr_optimum(&three_partition_to_drp_ssr(&t3)), 3);
    }

    #[test]
    fn grouping_overshoots_target_when_impossible() {
        // 7 alone exceeds the target sum 6, so no balanced grouping.
        let t3 = ThreePartitionInstance::new(vec![1, 1, 1, 1, 1, 7]).unwrap();
        let inst = three_partition_to_drp_ssr(&t3);
        let optimum = ssr_optimum(&inst);
        assert!(optimum > 6);
        assert_eq!(optimum, brute_force_drp(&inst, Objective::Ssr).unwrap().1);
    }

    #[test]
    fn grouping_rejects_bad_items() {
        assert!(ThreePartitionInstance::new(vec![1, 2]).is_err());
        assert!(ThreePartitionInstance::new(vec![1, 2, 0]).is_err());
        // Sum 7 is not divisible by the two groups.
        assert!(ThreePartitionInstance::new(vec![1, 1, 1, 1, 1, 2]).is_err());
    }

    #[test]
    fn graph_normalizes_edges() {
        let g = Graph::new(3, vec![(2, 1), (1, 2), (3, 1)]).unwrap();
        assert_eq!(g.edges(), &[(1, 2), (1, 3)]);
        assert!(Graph::new(3, vec![(1, 1)]).is_err());
        assert!(Graph::new(3, vec![(1, 4)]).is_err());
        assert!(Graph::new(3, vec![(0, 2)]).is_err());
    }

    #[test]
    fn triangle_encodes_to_balanced_items() {
        let g = Graph::new(3, vec![(1, 2), (1, 3), (2, 3)]).unwrap();
        let sp = kclique_to_selecting_partition(&g, 3).unwrap();
        let items: Vec<u64> = sp.items().iter().map(|b| u64::try_from(b).unwrap()).collect();
        // Prime 5: vertices 2*5^i, edges 5^i + 5^j.
        assert_eq!(items, vec![10, 50, 250, 30, 130, 150]);
        assert_eq!(sp.k(), 6);
        assert!(check_selecting_partition(&sp).unwrap());
    }

    #[test]
    fn edgeless_graph_encodes_to_unbalanced_items() {
        let g = Graph::new(3, vec![]).unwrap();
        let sp = kclique_to_selecting_partition(&g, 2).unwrap();
        let items: Vec<u64> = sp.items().iter().map(|b| u64::try_from(b).unwrap()).collect();
        // Prime 3: vertices 1*3^i, no edges.
        assert_eq!(items, vec![3, 9, 27]);
        assert_eq!(sp.k(), 3);
        assert!(!check_selecting_partition(&sp).unwrap());
    }

    #[test]
    fn single_edge_encodes_to_balanced_items() {
        let g = Graph::new(2, vec![(1, 2)]).unwrap();
        let sp = kclique_to_selecting_partition(&g, 2).unwrap();
        let items: Vec<u64> = sp.items().iter().map(|b| u64::try_from(b).unwrap()).collect();
        assert_eq!(items, vec![3, 9, 12]);
        assert!(check_selecting_partition(&sp).unwrap());
        let w = selecting_partition_witness(&sp).unwrap().unwrap();
        let total: BigUint = w.subset.iter().map(|&i| &sp.items()[i]).sum();
        let half: BigUint = w.half.iter().map(|&i| &sp.items()[i]).sum();
        assert_eq!(half * 2u32, total);
    }

    #[test]
    fn prime_selection_is_smallest_above() {
        assert_eq!(smallest_prime_above(2), 3);
        assert_eq!(smallest_prime_above(3), 5);
        assert_eq!(smallest_prime_above(4), 5);
        assert_eq!(smallest_prime_above(5), 7);
        assert_eq!(smallest_prime_above(10), 11);
    }

    #[test]
    fn pair_selection_needs_equal_items() {
        let yes = SelectingPartitionInstance::from_u64(&[4, 7, 4], 2).unwrap();
        assert!(check_selecting_partition(&yes).unwrap());
        let no = SelectingPartitionInstance::from_u64(&[4, 7, 5], 2).unwrap();
        assert!(!check_selecting_partition(&no).unwrap());
    }

    #[test]
    fn selection_larger_than_item_count_is_unsatisfiable() {
        let sp = SelectingPartitionInstance::from_u64(&[5], 2).unwrap();
        assert!(!check_selecting_partition(&sp).unwrap());
    }

    #[test]
    fn enumeration_budget_is_enforced() {
        let items = vec![1u64; 21];
        let sp = SelectingPartitionInstance::from_u64(&items, 2).unwrap();
        assert!(matches!(
            check_selecting_partition(&sp),
            Err(Error::SizeCap(_))
        ));
        assert!(check_selecting_partition_with_budget(&sp, 21, 10).unwrap());
    }

    fn hard_budget(machines: usize) -> HardBudget {
        HardBudget {
            max_values: 12,
            max_machines: machines,
            ..HardBudget::default()
        }
    }

    #[test]
    fn selection_graph_shape() {
        let sp = SelectingPartitionInstance::from_u64(&[2, 2], 2).unwrap();
        let g = selecting_partition_to_dap_msr(&sp).unwrap();
        assert_eq!(g.n(), 6);
        // Two real columns plus k + 1 = 3 padding columns.
        assert_eq!(g.num_cols(), 5);
        assert_eq!(g.values(), &[2, 2, 3, 4, 5]);
        assert_eq!(g.max_col(1), 2);
        assert_eq!(g.max_col(2), 2);
        assert_eq!(g.max_col(3), 5);
        assert!(!g.has_scalar_weights());
        assert_eq!(g.vector_weight(1, 0, 1), vec![2, 2, 0, 0, 0, 0]);
        assert_eq!(g.vector_weight(3, 2, 3), vec![0; 6]);
        assert_eq!(g.costs()[0][1], 4);
        assert_eq!(g.costs()[0][2], 1);
        assert_eq!(g.costs()[1][4], 1);
    }

    #[test]
    fn equal_pair_selection_reaches_half_sum() {
        let sp = SelectingPartitionInstance::from_u64(&[2, 2], 2).unwrap();
        let g = selecting_partition_to_dap_msr(&sp).unwrap();
        let sol = solve_dap_hard_graph(&g, Objective::Msr, &hard_budget(6)).unwrap();
        assert_eq!(sol.value, 2);
        assert_eq!(sol.splitters.indices, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn unequal_pair_selection_overshoots_half_sum() {
        let sp = SelectingPartitionInstance::from_u64(&[1, 2], 2).unwrap();
        let g = selecting_partition_to_dap_msr(&sp).unwrap();
        let sol = solve_dap_hard_graph(&g, Objective::Msr, &hard_budget(6)).unwrap();
        // Sum 3 cannot split evenly; the best split is {1} vs {2}.
        assert_eq!(sol.value, 2);
        assert_ne!(2 * sol.value, 3);
    }

    #[test]
    fn zero_items_cost_nothing() {
        let sp = SelectingPartitionInstance::from_u64(&[0, 0], 2).unwrap();
        let g = selecting_partition_to_dap_msr(&sp).unwrap();
        let sol = solve_dap_hard_graph(&g, Objective::Msr, &hard_budget(6)).unwrap();
        assert_eq!(sol.value, 0);
    }

    #[test]
    fn too_few_items_leave_no_path() {
        let sp = SelectingPartitionInstance::from_u64(&[5], 2).unwrap();
        let g = selecting_partition_to_dap_msr(&sp).unwrap();
        assert!(matches!(
            solve_dap_hard_graph(&g, Objective::Msr, &hard_budget(6)),
            Err(Error::InvalidArgument(_))
        ));
    }
}
