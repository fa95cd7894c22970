use alloc::vec::Vec;

use rand::RngCore;

use super::Sampler;
use crate::{SamplerError, SpinVector, WeightMatrix};

/// Ignores the weights entirely; reduces the search to classical simulated
/// annealing with random candidate generation.
#[derive(Debug, Clone, Copy, Default)]
pub struct RandomSampler;

impl Sampler for RandomSampler {
    fn sample(
        &mut self,
        theta: &WeightMatrix<'_>,
        reads: usize,
        rng: &mut dyn RngCore,
    ) -> Result<Vec<SpinVector>, SamplerError> {
        Ok(random_sample(theta.dim(), reads, rng))
    }
}

pub fn random_sample<R: RngCore + ?Sized>(n: usize, reads: usize, rng: &mut R) -> Vec<SpinVector> {
    (0..reads).map(|_| SpinVector::random(n, rng)).collect()
}
