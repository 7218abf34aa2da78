//! Exact solvers for one-round communication-cost minimization in the
//! weighted MPC model.
//!
//! In a cluster of `n` machines with heterogeneous link prices, a
//! one-round shuffle is described by a transmission matrix `T` (how much
//! data each machine holds for each target interval) and a cost matrix
//! `C` (per-unit price of each directed link). This crate solves two
//! families of problems over that model:
//!
//! * **Redistribution** ([`DrpInstance`]): `T` is fixed; choose the
//!   permutation assigning intervals to machines. The `total` and `btnk`
//!   objectives reduce to assignment problems and are solved in
//!   polynomial time ([`assignment`]); the `msr` and `ssr` objectives are
//!   NP-hard and are solved exactly by branch and bound
//!   ([`branch_bound`]).
//! * **Allocation** ([`dap::DapInstance`]): machines hold sorted
//!   datasets; additionally choose `n - 1` splitters partitioning the
//!   value domain into intervals, which induces `T`. Solved over a
//!   layered splitter graph: dynamic programs for `total` and `btnk`,
//!   exhaustive splitter enumeration for `msr` and `ssr` ([`dap`]).
//!
//! The [`reductions`] module constructs the hard instance families that
//! place these problems beyond polynomial solvability (number
//! partitioning, 3-partition, clique selection), usable both as test
//! oracles and as generator input. [`generate`] produces seeded random
//! and structured workloads.

pub mod assignment;
pub mod branch_bound;
pub mod dap;
pub mod error;
pub mod generate;
pub mod model;
pub mod reductions;

pub use error::{Error, Result};
pub use model::{
    brute_force_drp, brute_force_drp_with_cap, eval_costs, CostReport, DrpInstance, Objective,
    Permutation,
};
