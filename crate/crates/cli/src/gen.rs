use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Parameters of a synthetic repetitive corpus.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenParams {
    /// Length of the random seed block in bytes.
    pub seed_size: usize,
    pub copies: usize,
    /// Probability that a symbol of a copy is replaced by a random byte.
    pub mutation_rate: f64,
    pub rng_seed: u64,
}

impl GenParams {
    pub fn validate(&self) -> Result<(), String> {
        if self.seed_size == 0 {
            return Err("seed size must be positive".into());
        }
        if self.copies == 0 {
            return Err("copies must be positive".into());
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return Err(format!("mutation rate {} outside [0, 1]", self.mutation_rate));
        }
        Ok(())
    }
}

/// `copies` concatenated copies of a uniformly random seed block, each copy
/// independently point-mutated. Deterministic in `rng_seed`.
pub fn generate(p: &GenParams) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.rng_seed);
    let mut seed = vec![0u8; p.seed_size];
    rng.fill(&mut seed[..]);
    let mut out = Vec::with_capacity(p.seed_size * p.copies);
    for _ in 0..p.copies {
        out.extend(seed.iter().map(|&b| {
            if p.mutation_rate > 0.0 && rng.gen_bool(p.mutation_rate) {
                rng.gen()
            } else {
                b
            }
        }));
    }
    out
}
