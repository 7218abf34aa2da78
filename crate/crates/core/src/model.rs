//! Cost model for one-round redistribution among weighted machines.
//!
//! A redistribution instance consists of `n` machines, a transmission
//! matrix `T` where `T[i][j]` is the amount of data machine `i` holds for
//! interval `j`, and a cost matrix `C` where `C[i][j]` is the per-unit cost
//! of sending from machine `i` to machine `j` (`C[i][i] = 0`). An
//! assignment is a permutation mapping intervals to machines; four
//! aggregate objectives are defined over the induced send and receive
//! loads:
//!
//! * `total`: sum of all send costs,
//! * `btnk`:  maximum receive cost over machines,
//! * `msr`:   maximum over machines of max(send, receive),
//! * `ssr`:   maximum over machines of send + receive.
//!
//! All arithmetic is checked; overflow is reported as an error rather than
//! wrapping.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Default size cap for [`brute_force_drp`]; `9! = 362880` permutations.
pub const BRUTE_FORCE_CAP: usize = 9;

/// Aggregate objective over the per-machine send and receive costs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    Total,
    Btnk,
    Msr,
    Ssr,
}

impl Objective {
    pub const ALL: [Objective; 4] = [
        Objective::Total,
        Objective::Btnk,
        Objective::Msr,
        Objective::Ssr,
    ];
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Objective::Total => "total",
            Objective::Btnk => "btnk",
            Objective::Msr => "msr",
            Objective::Ssr => "ssr",
        };
        f.write_str(name)
    }
}

impl FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "total" => Ok(Objective::Total),
            "btnk" => Ok(Objective::Btnk),
            "msr" => Ok(Objective::Msr),
            "ssr" => Ok(Objective::Ssr),
            other => Err(Error::InvalidArgument(format!(
                "unknown objective {other:?}; expected total, btnk, msr or ssr"
            ))),
        }
    }
}

/// A redistribution instance: transmission matrix `T` and cost matrix `C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrpInstance {
    n: usize,
    t: Vec<Vec<u64>>,
    c: Vec<Vec<u64>>,
}

impl DrpInstance {
    /// Builds an instance from an `n x n` transmission matrix and an
    /// `n x n` cost matrix with a zero diagonal.
    pub fn new(t: Vec<Vec<u64>>, c: Vec<Vec<u64>>) -> Result<Self> {
        let n = t.len();
        if n == 0 {
            return Err(Error::Dimension("empty transmission matrix".into()));
        }
        check_square("T", &t, n)?;
        check_square("C", &c, n)?;
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
        Ok(DrpInstance { n, t, c })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Amount machine `i` holds for interval `j` (0-based).
    pub fn t(&self, i: usize, j: usize) -> u64 {
        self.t[i][j]
    }

    /// Per-unit cost of sending from machine `i` to machine `j` (0-based).
    pub fn c(&self, i: usize, j: usize) -> u64 {
        self.c[i][j]
    }

    pub fn transmission(&self) -> &[Vec<u64>] {
        &self.t
    }

    pub fn costs(&self) -> &[Vec<u64>] {
        &self.c
    }
}

fn check_square(name: &str, m: &[Vec<u64>], n: usize) -> Result<()> {
    if m.len() != n {
        return Err(Error::Dimension(format!(
            "{name} has {} rows, expected {n}",
            m.len()
        )));
    }
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Dimension(format!(
                "{name} row {} has {} entries, expected {n}",
                i + 1,
                row.len()
            )));
        }
    }
    Ok(())
}

/// A bijection from intervals to machines, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Builds a permutation from a 0-based image vector, verifying that it
    /// is a bijection.
    pub fn from_mapping(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &m in &mapping {
            if m >= n || seen[m] {
                return Err(Error::InvalidArgument(format!(
                    "mapping {mapping:?} is not a permutation of 0..{n}"
                )));
            }
            seen[m] = true;
        }
        Ok(Permutation(mapping))
    }

    /// Builds a permutation from 1-based entries, as used in files and on
    /// the command line.
    pub fn from_one_based(entries: &[usize]) -> Result<Self> {
        let mapping: Vec<usize> = entries
            .iter()
            .map(|&e| {
                e.checked_sub(1).ok_or_else(|| {
                    Error::InvalidArgument("permutation entries are 1-based".into())
                })
            })
            .collect::<Result<_>>()?;
        Self::from_mapping(mapping)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Machine assigned to interval `j` (0-based).
    pub fn image(&self, j: usize) -> usize {
        self.0[j]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (j, &m) in self.0.iter().enumerate() {
            inv[m] = j;
        }
        Permutation(inv)
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&m| m + 1).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries = self.one_based();
        write!(f, "{}", entries.iter().join(" "))
    }
}

/// Per-machine loads and the four aggregate objective values for one
/// assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostReport {
    pub send: Vec<u64>,
    pub rcv: Vec<u64>,
    pub total: u64,
    pub btnk: u64,
    pub msr: u64,
    pub ssr: u64,
}

impl CostReport {
    pub fn value(&self, obj: Objective) -> u64 {
        match obj {
            Objective::Total => self.total,
            Objective::Btnk => self.btnk,
            Objective::Msr => self.msr,
            Objective::Ssr => self.ssr,
        }
    }
}

fn checked_mul_add(acc: u64, a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b)
        .and_then(|p| acc.checked_add(p))
        .ok_or(Error::Overflow)
}

/// Evaluates the send and receive loads of `perm` on `inst` and all four
/// aggregates.
///
/// Machine `i` sends its share of interval `j` to machine `perm(j)` and
/// receives interval `perm^-1(i)` from every other holder.
pub fn eval_costs(inst: &DrpInstance, perm: &Permutation) -> Result<CostReport> {
    let n = inst.n();
    if perm.n() != n {
        return Err(Error::Dimension(format!(
            "permutation has {} entries, instance has {n} machines",
            perm.n()
        )));
    }
    let inv = perm.inverse();
    let mut send = vec![0u64; n];
    let mut rcv = vec![0u64; n];
    for i in 0..n {
        for j in 0..n {
            send[i] = checked_mul_add(send[i], inst.t(i, j), inst.c(i, perm.image(j)))?;
        }
        let interval = inv.image(i);
        for j in 0..n {
            rcv[i] = checked_mul_add(rcv[i], inst.t(j, interval), inst.c(j, i))?;
        }
    }
    let mut total = 0u64;
    for &s in &send {
        total = total.checked_add(s).ok_or(Error::Overflow)?;
    }
    let btnk = rcv.iter().copied().max().unwrap_or(0);
    let mut msr = 0u64;
    let mut ssr = 0u64;
    for i in 0..n {
        msr = msr.max(send[i].max(rcv[i]));
        ssr = ssr.max(send[i].checked_add(rcv[i]).ok_or(Error::Overflow)?);
    }
    Ok(CostReport {
        send,
        rcv,
        total,
        btnk,
        msr,
        ssr,
    })
}

/// Exhaustive reference solver: evaluates every permutation in
/// lexicographic order and returns the first one attaining the minimum,
/// so ties resolve to the lexicographically smallest assignment.
pub fn brute_force_drp(inst: &DrpInstance, obj: Objective) -> Result<(Permutation, u64)> {
    brute_force_drp_with_cap(inst, obj, BRUTE_FORCE_CAP)
}

/// [`brute_force_drp`] with an explicit size cap.
pub fn brute_force_drp_with_cap(
    inst: &DrpInstance,
    obj: Objective,
    cap: usize,
) -> Result<(Permutation, u64)> {
    let n = inst.n();
    if n > cap {
        return Err(Error::SizeCap(format!(
            "brute force on n = {n} exceeds cap {cap}"
        )));
    }
    let mut best: Option<(Permutation, u64)> = None;
    for mapping in (0..n).permutations(n) {
        let perm = Permutation(mapping);
        let value = eval_costs(inst, &perm)?.value(obj);
        match &best {
            Some((_, v)) if *v <= value => {}
            _ => best = Some((perm, value)),
        }
    }
    best.ok_or_else(|| Error::Internal("no permutation enumerated".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> DrpInstance {
        DrpInstance::new(
            vec![vec![1, 2], vec![3, 4]],
            vec![vec![0, 5], vec![7, 0]],
        )
        .unwrap()
    }

    #[test]
    fn eval_identity_on_example() {
        let report = eval_costs(&example(), &Permutation::identity(2)).unwrap();
        assert_eq!(report.send, vec![10, 21]);
        assert_eq!(report.rcv, vec![21, 10]);
        assert_eq!(report.total, 31);
        assert_eq!(report.btnk, 21);
        assert_eq!(report.msr, 21);
        assert_eq!(report.ssr, 31);
    }

    #[test]
    fn eval_swap_on_example() {
        let swap = Permutation::from_mapping(vec![1, 0]).unwrap();
        let report = eval_costs(&example(), &swap).unwrap();
        assert_eq!(report.send, vec![5, 28]);
        assert_eq!(report.rcv, vec![28, 5]);
        assert_eq!(report.total, 33);
        assert_eq!(report.btnk, 28);
        assert_eq!(report.msr, 28);
        assert_eq!(report.ssr, 33);
    }

    #[test]
    fn eval_zero_costs() {
        let inst = DrpInstance::new(
            vec![vec![4, 4], vec![4, 4]],
            vec![vec![0, 0], vec![0, 0]],
        )
        .unwrap();
        let report = eval_costs(&inst, &Permutation::identity(2)).unwrap();
        assert_eq!(report.total, 0);
        assert_eq!(report.ssr, 0);
    }

    #[test]
    fn total_is_sum_of_sends_and_receives() {
        let report = eval_costs(&example(), &Permutation::identity(2)).unwrap();
        assert_eq!(report.total, report.send.iter().sum::<u64>());
        assert_eq!(report.total, report.rcv.iter().sum::<u64>());
    }

    #[test]
    fn single_machine_is_free() {
        let inst = DrpInstance::new(vec![vec![17]], vec![vec![0]]).unwrap();
        for obj in Objective::ALL {
            let (perm, value) = brute_force_drp(&inst, obj).unwrap();
            assert_eq!(perm, Permutation::identity(1));
            assert_eq!(value, 0);
        }
    }

    #[test]
    fn brute_force_keeps_local_data_local() {
        // T = 5 * I, so the identity moves nothing at all.
        let t = vec![
            vec![5, 0, 0],
            vec![0, 5, 0],
            vec![0, 0, 5],
        ];
        let c = vec![
            vec![0, 2, 3],
            vec![4, 0, 6],
            vec![7, 8, 0],
        ];
        let inst = DrpInstance::new(t, c).unwrap();
        for obj in Objective::ALL {
            let (perm, value) = brute_force_drp(&inst, obj).unwrap();
            assert_eq!(value, 0, "{obj}");
            assert_eq!(perm, Permutation::identity(3), "{obj}");
        }
    }

    #[test]
    fn brute_force_prefers_lexicographically_smallest_tie() {
        // All permutations cost 0, so the identity must win.
        let inst = DrpInstance::new(
            vec![vec![3, 3], vec![3, 3]],
            vec![vec![0, 0], vec![0, 0]],
        )
        .unwrap();
        let (perm, value) = brute_force_drp(&inst, Objective::Total).unwrap();
        assert_eq!(value, 0);
        assert_eq!(perm, Permutation::identity(2));
    }

    #[test]
    fn brute_force_respects_cap() {
        let inst = example();
        assert!(matches!(
            brute_force_drp_with_cap(&inst, Objective::Total, 1),
            Err(Error::SizeCap(_))
        ));
    }

    #[test]
    fn rejects_nonzero_diagonal() {
        let err = DrpInstance::new(vec![vec![1]], vec![vec![2]]);
        assert!(matches!(err, Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn rejects_ragged_matrix() {
        let err = DrpInstance::new(vec![vec![1, 2], vec![3]], vec![vec![0, 0], vec![0, 0]]);
        assert!(matches!(err, Err(Error::Dimension(_))));
    }

    #[test]
    fn rejects_wrong_length_permutation() {
        let perm = Permutation::identity(3);
        assert!(matches!(
            eval_costs(&example(), &perm),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn overflow_is_reported() {
        let inst = DrpInstance::new(
            vec![vec![1, u64::MAX], vec![1, 1]],
            vec![vec![0, 2], vec![2, 0]],
        )
        .unwrap();
        assert!(matches!(
            eval_costs(&inst, &Permutation::identity(2)),
            Err(Error::Overflow)
        ));
    }

    #[test]
    fn one_based_round_trip() {
        let perm = Permutation::from_one_based(&[2, 1, 3]).unwrap();
        assert_eq!(perm.one_based(), vec![2, 1, 3]);
        assert_eq!(perm.to_string(), "2 1 3");
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
        assert!(Permutation::from_one_based(&[1, 1]).is_err());
    }

    #[test]
    fn inverse_composes_to_identity() {
        let perm = Permutation::from_mapping(vec![2, 0, 3, 1]).unwrap();
        let inv = perm.inverse();
        for j in 0..4 {
            assert_eq!(inv.image(perm.image(j)), j);
        }
    }
}
