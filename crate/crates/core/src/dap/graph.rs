//! Allocation instances, prefix-count matrices and the splitter graph.

use crate::error::{Error, Result};
use crate::model::{eval_costs, CostReport, DrpInstance, Objective, Permutation};

/// An allocation instance: one sorted dataset per machine plus the cost
/// matrix of the cluster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DapInstance {
    n: usize,
    datasets: Vec<Vec<i64>>,
    c: Vec<Vec<u64>>,
    global: Vec<i64>,
}

impl DapInstance {
    /// Builds an instance from per-machine datasets (sorted internally)
    /// and an `n x n` cost matrix with a zero diagonal. At least two
    /// machines are required; individual datasets may be empty.
    pub fn new(datasets: Vec<Vec<i64>>, c: Vec<Vec<u64>>) -> Result<Self> {
        let n = datasets.len();
        if n < 2 {
            return Err(Error::InvalidArgument(
                "allocation needs at least two machines".into(),
            ));
        }
        if c.len() != n || c.iter().any(|row| row.len() != n) {
            return Err(Error::Dimension(format!(
                "cost matrix must be {n} x {n} to match {n} datasets"
            )));
        }
        for (i, row) in c.iter().enumerate() {
            if row[i] != 0 {
                return Err(Error::InvalidArgument(format!(
                    "C[{},{}] must be 0, got {}",
                    i + 1,
                    i + 1,
                    row[i]
                )));
            }
        }
        let mut datasets = datasets;
        for d in &mut datasets {
            d.sort_unstable();
        }
        let mut global: Vec<i64> = datasets.iter().flatten().copied().collect();
        global.sort_unstable();
        Ok(DapInstance {
            n,
            datasets,
            c,
            global,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of values across all datasets.
    pub fn num_values(&self) -> usize {
        self.global.len()
    }

    pub fn datasets(&self) -> &[Vec<i64>] {
        &self.datasets
    }

    pub fn costs(&self) -> &[Vec<u64>] {
        &self.c
    }

    /// The merged multiset of all values, sorted ascending. Splitters are
    /// addressed by 1-based index into this sequence.
    pub fn global_sorted(&self) -> &[i64] {
        &self.global
    }
}

/// Prefix counts per machine: `get(i, j)` is how many values of dataset
/// `i` are at most the `j`-th global value. Column `0` is the virtual
/// minus-infinity splitter (all zeros) and column `N + 1` the virtual
/// plus-infinity splitter (full dataset sizes).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccMatrix {
    rows: Vec<Vec<u64>>,
}

impl AccMatrix {
    pub fn get(&self, machine: usize, col: usize) -> u64 {
        self.rows[machine][col]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }
}

/// Computes the prefix-count matrix of an instance. Duplicate values are
/// counted against the value, not the index, so equal global values get
/// identical columns.
pub fn build_acc(inst: &DapInstance) -> AccMatrix {
    let n = inst.n();
    let big_n = inst.num_values();
    let mut rows = Vec::with_capacity(n);
    for dataset in inst.datasets() {
        let mut row = Vec::with_capacity(big_n + 2);
        row.push(0);
        for j in 1..=big_n {
            let v = inst.global_sorted()[j - 1];
            row.push(dataset.partition_point(|&x| x <= v) as u64);
        }
        row.push(dataset.len() as u64);
        rows.push(row);
    }
    AccMatrix { rows }
}

/// A choice of `n - 1` splitters, by 1-based column index and by value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitterSelection {
    pub indices: Vec<usize>,
    pub values: Vec<i64>,
}

/// A solved allocation: splitters, assignment, objective value and the
/// induced transmission matrix.
#[derive(Debug, Clone)]
pub struct DapSolution {
    pub splitters: SplitterSelection,
    pub perm: Permutation,
    pub value: u64,
    pub induced_t: Vec<Vec<u64>>,
    pub proven_optimal: bool,
}

enum EdgeWeights {
    /// Derived from an instance's prefix counts. `f[j][k]` aggregates
    /// `sum_i acc[i][j] * C[i][k]`; scalar edge weights are differences
    /// of `f` columns and are only materialized for the scalar
    /// objectives.
    FromCounts {
        acc: AccMatrix,
        f: Option<Vec<Vec<u64>>>,
    },
    /// Explicit per-edge vectors keyed by (entering level, target
    /// column), used by reduction-built instances. `level_max_col`
    /// limits which columns each interior level may use.
    Explicit {
        vectors: Vec<Vec<Vec<u64>>>,
        level_max_col: Vec<usize>,
    },
}

/// The layered graph over which all allocation solvers run.
///
/// Levels `1..n-1` hold one vertex per candidate splitter column; a
/// virtual source sits at column `0` and a virtual sink at column
/// `num_cols + 1`. Edges step from a vertex to any strictly larger
/// column on the next level, so each source-to-sink path picks `n - 1`
/// strictly increasing columns.
pub struct SplitterGraph {
    n: usize,
    num_cols: usize,
    values: Vec<i64>,
    c: Vec<Vec<u64>>,
    weights: EdgeWeights,
}

/// Builds the splitter graph of an instance. The scalar weight table is
/// materialized for `total` and `btnk`; the vector objectives only need
/// the prefix counts.
pub fn build_splitter_graph(inst: &DapInstance, obj: Objective) -> Result<SplitterGraph> {
    let n = inst.n();
    let acc = build_acc(inst);
    let f = match obj {
        Objective::Total | Objective::Btnk => Some(aggregate_receive_costs(inst, &acc)?),
        Objective::Msr | Objective::Ssr => None,
    };
    Ok(SplitterGraph {
        n,
        num_cols: inst.num_values(),
        values: inst.global_sorted().to_vec(),
        c: inst.costs().to_vec(),
        weights: EdgeWeights::FromCounts { acc, f },
    })
}

/// `f[j][k] = sum_i acc[i][j] * C[i][k]`: cost of machine `k` receiving
/// everything up to column `j`.
fn aggregate_receive_costs(inst: &DapInstance, acc: &AccMatrix) -> Result<Vec<Vec<u64>>> {
    let n = inst.n();
    let cols = inst.num_values() + 2;
    let mut f = vec![vec![0u64; n]; cols];
    for (j, row) in f.iter_mut().enumerate() {
        for (k, cell) in row.iter_mut().enumerate() {
            let mut acc_cost = 0u64;
            for i in 0..n {
                let term = acc
                    .get(i, j)
                    .checked_mul(inst.costs()[i][k])
                    .ok_or(Error::Overflow)?;
                acc_cost = acc_cost.checked_add(term).ok_or(Error::Overflow)?;
            }
            *cell = acc_cost;
        }
    }
    Ok(f)
}

impl SplitterGraph {
    /// Builds a graph with explicit edge vectors, for constructions that
    /// are not backed by concrete datasets. `vectors[i - 1][j - 1]` is
    /// the per-machine data vector of any edge entering level `i` at
    /// column `j` (the entry at column `num_cols + 1` covers the final
    /// edge into the sink). `level_max_col[i - 1]` caps the columns
    /// interior level `i` may use.
    pub fn from_vectors(
        values: Vec<i64>,
        c: Vec<Vec<u64>>,
        vectors: Vec<Vec<Vec<u64>>>,
        level_max_col: Vec<usize>,
    ) -> Result<Self> {
        let n = c.len();
        if n < 2 {
            return Err(Error::InvalidArgument(
                "splitter graph needs at least two levels".into(),
            ));
        }
        if c.iter().any(|row| row.len() != n) {
            return Err(Error::Dimension("cost matrix must be square".into()));
        }
        let num_cols = values.len();
        if vectors.len() != n {
            return Err(Error::Dimension(format!(
                "expected vectors for {n} levels, got {}",
                vectors.len()
            )));
        }
        for level in &vectors {
            if level.len() != num_cols + 1 {
                return Err(Error::Dimension(format!(
                    "each level needs vectors for {} target columns",
                    num_cols + 1
                )));
            }
            if level.iter().any(|v| v.len() != n) {
                return Err(Error::Dimension(format!(
                    "edge vectors must have {n} entries"
                )));
            }
        }
        if level_max_col.len() != n - 1 || level_max_col.iter().any(|&m| m > num_cols) {
            return Err(Error::Dimension(
                "level_max_col must cap each interior level by the column count".into(),
            ));
        }
        Ok(SplitterGraph {
            n,
            num_cols,
            values,
            c,
            weights: EdgeWeights::Explicit {
                vectors,
                level_max_col,
            },
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of candidate splitter columns (excluding the virtual
    /// source and sink columns).
    pub fn num_cols(&self) -> usize {
        self.num_cols
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn costs(&self) -> &[Vec<u64>] {
        &self.c
    }

    /// Column of the virtual sink vertex.
    pub fn sink_col(&self) -> usize {
        self.num_cols + 1
    }

    pub fn has_scalar_weights(&self) -> bool {
        matches!(
            self.weights,
            EdgeWeights::FromCounts { f: Some(_), .. }
        )
    }

    /// Largest column interior level `i` (1-based) may occupy.
    pub fn max_col(&self, level: usize) -> usize {
        match &self.weights {
            EdgeWeights::FromCounts { .. } => self.num_cols,
            EdgeWeights::Explicit { level_max_col, .. } => level_max_col[level - 1],
        }
    }

    /// Receive cost on `machine` of the interval spanned by an edge from
    /// `from_col` to `to_col`.
    ///
    /// Panics when the graph was built without scalar weights.
    pub fn scalar_weight(&self, from_col: usize, to_col: usize, machine: usize) -> u64 {
        match &self.weights {
            EdgeWeights::FromCounts { f: Some(f), .. } => {
                f[to_col][machine] - f[from_col][machine]
            }
            _ => panic!("splitter graph has no scalar weights"),
        }
    }

    /// Per-machine data counts of the interval spanned by an edge
    /// entering `level` from `from_col` to `to_col`.
    pub fn vector_weight(&self, level: usize, from_col: usize, to_col: usize) -> Vec<u64> {
        match &self.weights {
            EdgeWeights::FromCounts { acc, .. } => (0..self.n)
                .map(|i| acc.get(i, to_col) - acc.get(i, from_col))
                .collect(),
            EdgeWeights::Explicit { vectors, .. } => vectors[level - 1][to_col - 1].clone(),
        }
    }

    /// Transmission matrix induced by a path through the interior
    /// columns `cols` (1-based, strictly increasing, length `n - 1`).
    pub fn induced_transmission(&self, cols: &[usize]) -> Result<Vec<Vec<u64>>> {
        self.check_path(cols)?;
        let mut t = vec![vec![0u64; self.n]; self.n];
        let sink = self.sink_col();
        let mut prev = 0usize;
        for (j, &col) in cols.iter().chain(std::iter::once(&sink)).enumerate() {
            let vec = self.vector_weight(j + 1, prev, col);
            for i in 0..self.n {
                t[i][j] = vec[i];
            }
            prev = col;
        }
        Ok(t)
    }

    /// The splitter selection described by interior path columns.
    pub fn selection(&self, cols: &[usize]) -> SplitterSelection {
        SplitterSelection {
            indices: cols.to_vec(),
            values: cols.iter().map(|&c| self.values[c - 1]).collect(),
        }
    }

    fn check_path(&self, cols: &[usize]) -> Result<()> {
        if cols.len() != self.n - 1 {
            return Err(Error::Dimension(format!(
                "path needs {} interior columns, got {}",
                self.n - 1,
                cols.len()
            )));
        }
        let mut prev = 0usize;
        for (level, &col) in cols.iter().enumerate() {
            if col <= prev || col > self.max_col(level + 1) {
                return Err(Error::InvalidArgument(format!(
                    "column {col} is not reachable at level {}",
                    level + 1
                )));
            }
            prev = col;
        }
        Ok(())
    }

    /// Visits every source-to-sink path in lexicographic column order.
    pub fn for_each_path<F>(&self, mut visit: F) -> Result<()>
    where
        F: FnMut(&[usize]) -> Result<()>,
    {
        let mut cols = vec![0usize; self.n - 1];
        self.descend_paths(0, 0, &mut cols, &mut visit)
    }

    fn descend_paths<F>(
        &self,
        level: usize,
        prev: usize,
        cols: &mut Vec<usize>,
        visit: &mut F,
    ) -> Result<()>
    where
        F: FnMut(&[usize]) -> Result<()>,
    {
        if level == self.n - 1 {
            return visit(cols);
        }
        for col in prev + 1..=self.max_col(level + 1) {
            cols[level] = col;
            self.descend_paths(level + 1, col, cols, visit)?;
        }
        Ok(())
    }
}

/// Transmission matrix induced on `inst` by explicit splitter indices
/// (1-based into the global sorted sequence). Interval membership is by
/// value, so duplicated splitter values produce empty intervals.
pub fn induced_transmission_for_indices(
    inst: &DapInstance,
    indices: &[usize],
) -> Result<Vec<Vec<u64>>> {
    let n = inst.n();
    let big_n = inst.num_values();
    if indices.len() != n - 1 {
        return Err(Error::Dimension(format!(
            "expected {} splitter indices, got {}",
            n - 1,
            indices.len()
        )));
    }
    let mut prev = 0usize;
    for &idx in indices {
        if idx <= prev || idx > big_n {
            return Err(Error::InvalidArgument(format!(
                "splitter indices must be strictly increasing and within 1..={big_n}"
            )));
        }
        prev = idx;
    }
    let mut t = vec![vec![0u64; n]; n];
    for (i, dataset) in inst.datasets().iter().enumerate() {
        let mut below_prev = 0usize;
        for (j, &idx) in indices.iter().enumerate() {
            let v = inst.global_sorted()[idx - 1];
            let below = dataset.partition_point(|&x| x <= v);
            t[i][j] = (below - below_prev) as u64;
            below_prev = below;
        }
        t[i][n - 1] = (dataset.len() - below_prev) as u64;
    }
    Ok(t)
}

/// Evenly spaced splitters: the `i`-th splitter sits at global index
/// `ceil(i * N / n)`. This is the default splitter rule of
/// sample-and-partition shuffles such as TeraSort.
pub fn quantile_splitters(inst: &DapInstance) -> Result<SplitterSelection> {
    let n = inst.n();
    let big_n = inst.num_values();
    if big_n < n {
        return Err(Error::InvalidArgument(format!(
            "{big_n} values cannot be split into {n} non-degenerate quantiles"
        )));
    }
    let indices: Vec<usize> = (1..n).map(|i| (i * big_n).div_ceil(n)).collect();
    let values = indices
        .iter()
        .map(|&idx| inst.global_sorted()[idx - 1])
        .collect();
    Ok(SplitterSelection { indices, values })
}

/// Cost report of the cost-oblivious baseline: quantile splitters with
/// the identity assignment.
pub fn terasort_baseline(inst: &DapInstance) -> Result<CostReport> {
    let splitters = quantile_splitters(inst)?;
    let t = induced_transmission_for_indices(inst, &splitters.indices)?;
    let drp = DrpInstance::new(t, inst.costs().to_vec())?;
    eval_costs(&drp, &Permutation::identity(inst.n()))
}
