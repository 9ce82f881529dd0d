//! Per-run seeds for sweeps.
//!
//! Grid indices are packed into one 64-bit key (beta index in bits 48..64,
//! R index in bits 32..48, replicate in bits 0..32). The key is mixed with
//! the SplitMix64 finalizer, xored with the base seed, and mixed again.
//! Each stage is a bijection on `u64`, so distinct grid cells under one base
//! seed always get distinct seeds, and a cell's seed does not depend on the
//! grid's size.

use crate::error::{Error, Result};

pub const MAX_GRID_AXIS: usize = 1 << 16;
pub const MAX_REPLICATES: usize = 1 << 32;

#[inline]
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(base_seed: u64, beta_index: usize, r_index: usize, replicate: usize) -> Result<u64> {
    if beta_index >= MAX_GRID_AXIS || r_index >= MAX_GRID_AXIS {
        return Err(Error::Domain(format!(
            "grid index ({beta_index}, {r_index}) exceeds {MAX_GRID_AXIS}"
        )));
    }
    if replicate >= MAX_REPLICATES {
        return Err(Error::Domain(format!("replicate {replicate} exceeds 2^32")));
    }
    let key = ((beta_index as u64) << 48) | ((r_index as u64) << 32) | replicate as u64;
    Ok(splitmix64(splitmix64(key) ^ base_seed))
}
