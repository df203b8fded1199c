// SPDX-License-Identifier: Apache-2.0

//! Shared workloads for the synthesis benchmarks.

use qmap_core::ReversibleFunction;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

/// A uniformly random bijection on `width` bits, reproducible from `seed`.
pub fn random_bijection(width: usize, seed: u64) -> ReversibleFunction {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut table: Vec<u32> = (0..1u32 << width).collect();
    table.shuffle(&mut rng);
    ReversibleFunction::from_table(width, table).expect("a shuffle is a permutation")
}

/// Random bijections for which the natural or searched stage order is
/// feasible, skipping seeds whose function has no single-pass cascade.
pub fn feasible_bijections(width: usize, count: usize, seed: u64) -> Vec<ReversibleFunction> {
    (seed..)
        .map(|s| random_bijection(width, s))
        .filter(|f| qmap_core::find_feasible_order(f).is_ok())
        .take(count)
        .collect()
}
