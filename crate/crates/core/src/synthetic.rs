// SPDX-License-Identifier: Apache-2.0

//! Seeded random triangles for property tests and the verification corpus.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::triangle::IncrementalTriangle;

/// Strictly positive increments with a decaying payment pattern and
/// multiplicative noise, so that every variance parameter is non-zero.
pub fn random_triangle(seed: u64, dim: usize) -> IncrementalTriangle {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let decay: f64 = rng.gen_range(0.55..0.85);
    let rows = (1..=dim)
        .map(|i| {
            let exposure: f64 = rng.gen_range(5_000.0..20_000.0);
            (1..=dim + 1 - i)
                .map(|j| exposure * decay.powi(j as i32 - 1) * rng.gen_range(0.6..1.4))
                .collect()
        })
        .collect();
    IncrementalTriangle::new(rows).expect("positive increments form a valid triangle")
}

/// `n` triangles with dimensions cycling through `4..=8`.
pub fn random_corpus(seed: u64, n: usize) -> Vec<IncrementalTriangle> {
    (0..n)
        .map(|t| random_triangle(seed.wrapping_add(t as u64), 4 + t % 5))
        .collect()
}
