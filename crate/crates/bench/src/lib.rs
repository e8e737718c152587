//! Shared inputs for the benchmarks.

use batlz_cli::gen::{generate, GenParams};

/// A repetitive input of about `seed_size * copies` bytes.
pub fn repetitive(seed_size: usize, copies: usize) -> Vec<u8> {
    generate(&GenParams {
        seed_size,
        copies,
        mutation_rate: 0.005,
        rng_seed: 42,
    })
}
