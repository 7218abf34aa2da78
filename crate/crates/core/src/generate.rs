//! Seeded instance generators for tests, benchmarks and the CLI.
//!
//! All generators draw from a fixed-algorithm RNG seeded explicitly, so
//! a (generator, parameters, seed) triple always reproduces the same
//! instance, including across platforms.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dap::DapInstance;
use crate::error::{Error, Result};
use crate::model::DrpInstance;

/// Uniform random transmission and cost matrices with entries in
/// `0..=max_entry` (costs keep a zero diagonal).
pub fn random_drp(n: usize, max_entry: u64, seed: u64) -> Result<DrpInstance> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "need at least one machine".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(0..=max_entry)).collect())
        .collect();
    let c = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { 0 } else { rng.gen_range(0..=max_entry) })
                .collect()
        })
        .collect();
    DrpInstance::new(t, c)
}

/// Random transmission over a rack-structured cost matrix: machines in
/// the same rack exchange at cost `intra`, across racks at `inter`.
pub fn rack_drp(
    racks: usize,
    per_rack: usize,
    intra: u64,
    inter: u64,
    max_t: u64,
    seed: u64,
) -> Result<DrpInstance> {
    if racks == 0 || per_rack == 0 {
        return Err(Error::InvalidArgument(
            "need at least one rack and one machine per rack".into(),
        ));
    }
    let n = racks
        .checked_mul(per_rack)
        .ok_or(Error::Overflow)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(0..=max_t)).collect())
        .collect();
    let c = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        0
                    } else if i / per_rack == j / per_rack {
                        intra
                    } else {
                        inter
                    }
                })
                .collect()
        })
        .collect();
    DrpInstance::new(t, c)
}

/// Scatters `total_values` values uniform in `-max_value..=max_value`
/// across `n` machines; costs are uniform in `0..=max_cost` off the
/// diagonal.
pub fn random_dap(
    n: usize,
    total_values: usize,
    max_value: i64,
    max_cost: u64,
    seed: u64,
) -> Result<DapInstance> {
    if max_value < 0 {
        return Err(Error::InvalidArgument(
            "value bound must be non-negative".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut datasets = vec![Vec::new(); n];
    for _ in 0..total_values {
        let machine = rng.gen_range(0..n);
        datasets[machine].push(rng.gen_range(-max_value..=max_value));
    }
    let c = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { 0 } else { rng.gen_range(0..=max_cost) })
                .collect()
        })
        .collect();
    DapInstance::new(datasets, c)
}

/// The motivating sorted-output workload: machine `i` already holds a
/// contiguous block of the global order, but the blocks sit in reverse
/// machine order. Splitting at block boundaries and assigning interval
/// `j` to machine `n - 1 - j` costs nothing, while keeping interval `j`
/// on machine `j` moves every value (off-diagonal costs are at least 1).
pub fn inverse_sorted_dap(
    n: usize,
    per_machine: usize,
    max_cost: u64,
    seed: u64,
) -> Result<DapInstance> {
    if n < 2 || per_machine == 0 {
        return Err(Error::InvalidArgument(
            "need at least two machines and one value per machine".into(),
        ));
    }
    if max_cost == 0 {
        return Err(Error::InvalidArgument(
            "cost bound must be positive so misplacement is visible".into(),
        ));
    }
    let m = per_machine as i64;
    let datasets = (0..n as i64)
        .map(|i| {
            let base = (n as i64 - 1 - i) * m;
            (base + 1..=base + m).collect()
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { 0 } else { rng.gen_range(1..=max_cost) })
                .collect()
        })
        .collect();
    DapInstance::new(datasets, c)
}

/// The identity-friendly counterpart of [`inverse_sorted_dap`]: machine
/// `i` holds the `i`-th contiguous block of the global order, so
/// splitting at block boundaries and keeping every interval where it
/// already sits costs nothing.
pub fn sorted_dap(
    n: usize,
    per_machine: usize,
    max_cost: u64,
    seed: u64,
) -> Result<DapInstance> {
    if n < 2 || per_machine == 0 {
        return Err(Error::InvalidArgument(
            "need at least two machines and one value per machine".into(),
        ));
    }
    let m = per_machine as i64;
    let datasets = (0..n as i64)
        .map(|i| {
            let base = i * m;
            (base + 1..=base + m).collect()
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { 0 } else { rng.gen_range(0..=max_cost) })
                .collect()
        })
        .collect();
    DapInstance::new(datasets, c)
}
