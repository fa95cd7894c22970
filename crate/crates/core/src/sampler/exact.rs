use alloc::vec::Vec;

use rand::{Rng, RngCore};

use super::Sampler;
use crate::enumerate::{minimizers, tolerance};
use crate::{SamplerError, SpinVector, WeightMatrix, MAX_ENUMERATION_DIM};

/// Enumerates every configuration; each read is drawn uniformly from the
/// exact minimizer set.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactSampler;

impl Sampler for ExactSampler {
    fn sample(
        &mut self,
        theta: &WeightMatrix<'_>,
        reads: usize,
        rng: &mut dyn RngCore,
    ) -> Result<Vec<SpinVector>, SamplerError> {
        exact_sample(theta, reads, rng)
    }
}

pub fn exact_sample<R: RngCore + ?Sized>(
    theta: &WeightMatrix<'_>,
    reads: usize,
    rng: &mut R,
) -> Result<Vec<SpinVector>, SamplerError> {
    let n = theta.dim();
    if n > MAX_ENUMERATION_DIM {
        return Err(SamplerError::Capacity { n, max: MAX_ENUMERATION_DIM });
    }
    let found =
        minimizers(n, tolerance(2.0 * theta.magnitude()), |z, i| theta.flip_delta(z, i), |z| theta.energy_unchecked(z));
    Ok((0..reads).map(|_| SpinVector::from_code(n, found.codes[rng.random_range(0..found.codes.len())])).collect())
}
