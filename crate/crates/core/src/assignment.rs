//! Polynomial-time redistribution solvers via assignment problems.
//!
//! With the transmission matrix fixed, the receive cost of placing
//! interval `j` on machine `k` is independent of the rest of the
//! assignment: `F[j][k] = sum_i T[i][j] * C[i][k]`. Minimizing `total`
//! is then a linear assignment problem over `F`, solved with the
//! Hungarian algorithm in `O(n^3)`; minimizing `btnk` is a linear
//! bottleneck assignment problem, solved by binary search over the
//! distinct entries of `F` with an augmenting-path matching test.

use crate::error::{Error, Result};
use crate::model::{DrpInstance, Permutation};

/// A square matrix of per-(interval, machine) receive costs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentCostMatrix {
    n: usize,
    entries: Vec<Vec<u64>>,
}

impl AssignmentCostMatrix {
    pub fn new(entries: Vec<Vec<u64>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::Dimension("empty cost matrix".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension(format!(
                    "cost matrix row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
        }
        Ok(AssignmentCostMatrix { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.entries[row][col]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.entries
    }
}

fn receive_cost_matrix(inst: &DrpInstance) -> Result<AssignmentCostMatrix> {
    let n = inst.n();
    let mut entries = vec![vec![0u64; n]; n];
    for (j, row) in entries.iter_mut().enumerate() {
        for (k, cell) in row.iter_mut().enumerate() {
            let mut acc = 0u64;
            for i in 0..n {
                let term = inst.t(i, j).checked_mul(inst.c(i, k)).ok_or(Error::Overflow)?;
                acc = acc.checked_add(term).ok_or(Error::Overflow)?;
            }
            *cell = acc;
        }
    }
    AssignmentCostMatrix::new(entries)
}

/// Aggregated cost of assigning interval `j` to machine `k`, for the
/// `total` objective: `F[j][k] = sum_i T[i][j] * C[i][k]`.
pub fn build_lap_cost(inst: &DrpInstance) -> Result<AssignmentCostMatrix> {
    receive_cost_matrix(inst)
}

/// Receive cost of placing interval `j` on machine `k`, for the `btnk`
/// objective. The formula coincides with [`build_lap_cost`]: the maximum
/// receive load and the summed send load aggregate the same per-pair
/// quantity.
pub fn build_lbap_cost(inst: &DrpInstance) -> Result<AssignmentCostMatrix> {
    receive_cost_matrix(inst)
}

/// Minimum-sum assignment over `f` (Hungarian algorithm, `O(n^3)`).
///
/// Returns the assignment as a permutation `row -> column` together with
/// the summed value.
pub fn solve_lap(f: &AssignmentCostMatrix) -> Result<(Permutation, u64)> {
    let n = f.n();
    // Shortest augmenting path formulation with row/column potentials.
    // Potentials may go negative, and i128 keeps every intermediate sum
    // exact for u64 inputs.
    let mut u = vec![0i128; n + 1];
    let mut v = vec![0i128; n + 1];
    // match_row[j] = row currently assigned to column j; index 0 is a
    // virtual column holding the row being inserted.
    let mut match_row = vec![usize::MAX; n + 1];
    let mut way = vec![0usize; n + 1];
    for row in 0..n {
        match_row[0] = row;
        let mut j0 = 0usize;
        let mut minv = vec![i128::MAX; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = match_row[j0];
            let mut delta = i128::MAX;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = f.get(i0, j - 1) as i128 - u[i0 + 1] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[match_row[j] + 1] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if match_row[j0] == usize::MAX {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            match_row[j0] = match_row[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut mapping = vec![0usize; n];
    for j in 1..=n {
        mapping[match_row[j]] = j - 1;
    }
    let perm = Permutation::from_mapping(mapping)
        .map_err(|_| Error::Internal("assignment is not a bijection".into()))?;
    let mut value = 0u64;
    for j in 0..n {
        value = value
            .checked_add(f.get(j, perm.image(j)))
            .ok_or(Error::Overflow)?;
    }
    Ok((perm, value))
}

/// Minimum-bottleneck assignment over `f`.
///
/// Binary-searches the sorted distinct entries of `f` for the smallest
/// threshold admitting a perfect matching among the entries at or below
/// it; the returned value is therefore always an entry of `f`.
pub fn solve_lbap(f: &AssignmentCostMatrix) -> Result<(Permutation, u64)> {
    let n = f.n();
    let mut thresholds: Vec<u64> = f.rows().iter().flatten().copied().collect();
    thresholds.sort_unstable();
    thresholds.dedup();
    let mut lo = 0usize;
    let mut hi = thresholds.len() - 1;
    // The largest entry always admits the matching row j -> column j.
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if perfect_matching(f, thresholds[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let bound = thresholds[lo];
    let mapping = perfect_matching(f, bound)
        .ok_or_else(|| Error::Internal("bottleneck search lost feasibility".into()))?;
    let perm = Permutation::from_mapping(mapping)
        .map_err(|_| Error::Internal("matching is not a bijection".into()))?;
    let value = (0..n).map(|j| f.get(j, perm.image(j))).max().unwrap_or(0);
    Ok((perm, value))
}

/// Kuhn's augmenting-path matching restricted to entries `<= bound`.
/// Returns the column matched to each row when the matching is perfect.
fn perfect_matching(f: &AssignmentCostMatrix, bound: u64) -> Option<Vec<usize>> {
    let n = f.n();
    let mut col_of_row = vec![usize::MAX; n];
    let mut row_of_col = vec![usize::MAX; n];

    fn augment(
        f: &AssignmentCostMatrix,
        bound: u64,
        row: usize,
        visited: &mut [bool],
        col_of_row: &mut [usize],
        row_of_col: &mut [usize],
    ) -> bool {
        for col in 0..f.n() {
            if f.get(row, col) > bound || visited[col] {
                continue;
            }
            visited[col] = true;
            if row_of_col[col] == usize::MAX
                || augment(f, bound, row_of_col[col], visited, col_of_row, row_of_col)
            {
                col_of_row[row] = col;
                row_of_col[col] = row;
                return true;
            }
        }
        false
    }

    for row in 0..n {
        let mut visited = vec![false; n];
        if !augment(f, bound, row, &mut visited, &mut col_of_row, &mut row_of_col) {
            return None;
        }
    }
    Some(col_of_row)
}

/// Minimizes the `total` objective exactly by solving the assignment
/// problem over [`build_lap_cost`].
pub fn solve_drp_total(inst: &DrpInstance) -> Result<(Permutation, u64)> {
    let f = build_lap_cost(inst)?;
    let (perm, value) = solve_lap(&f)?;
    debug_assert_eq!(
        crate::model::eval_costs(inst, &perm).map(|r| r.total).ok(),
        Some(value)
    );
    Ok((perm, value))
}

/// Minimizes the `btnk` objective exactly by solving the bottleneck
/// assignment problem over [`build_lbap_cost`].
pub fn solve_drp_btnk(inst: &DrpInstance) -> Result<(Permutation, u64)> {
    let f = build_lbap_cost(inst)?;
    let (perm, value) = solve_lbap(&f)?;
    debug_assert_eq!(
        crate::model::eval_costs(inst, &perm).map(|r| r.btnk).ok(),
        Some(value)
    );
    Ok((perm, value))
}
