//! Seeded random streams.
//!
//! A run owns one root seed; each consumer draws from its own ChaCha stream
//! so that swapping the sampler backend leaves the outer loop's draws intact.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Substream {
    Permutation = 1,
    Perturbation = 2,
    Acceptance = 3,
    Sampler = 4,
    Instance = 5,
}

pub fn root_stream(seed: u64, stream: Substream) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}

/// Seed of replica `index` in an experiment rooted at `seed`.
pub fn replica_seed(seed: u64, index: u64) -> u64 {
    seed.wrapping_add(index)
}
