//! Shared instance builders for the solver benchmarks.
//!
//! Each builder derives its seed from the size parameters, so a given
//! shape always benchmarks the same instance.

use wmpc_core::dap::DapInstance;
use wmpc_core::generate;
use wmpc_core::DrpInstance;

/// Dense random redistribution instance with `n` machines.
pub fn drp(n: usize) -> DrpInstance {
    generate::random_drp(n, 99, 0xD1CE ^ n as u64).expect("positive machine count")
}

/// Redistribution instance over a two-tier rack cost structure.
pub fn rack_drp(racks: usize, per_rack: usize) -> DrpInstance {
    generate::rack_drp(racks, per_rack, 1, 10, 99, 0xACC ^ (racks * 64 + per_rack) as u64)
        .expect("positive rack dimensions")
}

/// Random allocation instance with `n` machines spanning `values`
/// scattered values.
pub fn dap(n: usize, values: usize) -> DapInstance {
    generate::random_dap(n, values, 1_000, 99, 0xDA7A ^ (n * 1024 + values) as u64)
        .expect("valid allocation shape")
}
