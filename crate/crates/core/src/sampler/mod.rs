//! Annealer backends.
//!
//! A [`Sampler`] plays the role of the quantum annealer: given weights on a
//! topology it returns low-energy spin configurations. The search only ever
//! consumes the estimate produced by [`estimate_argmin`].

mod exact;
mod metropolis;
mod random;

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use rand::RngCore;

use crate::{Error, SamplerError, SpinVector, WeightMatrix};

pub use exact::{exact_sample, ExactSampler};
pub use metropolis::{metropolis_sample, MetropolisSampler, SaScheduleParams};
pub use random::{random_sample, RandomSampler};

pub trait Sampler {
    /// Returns exactly `reads` spin vectors of dimension `theta.dim()`.
    ///
    /// Local backends must be a pure function of `theta`, `reads` and the
    /// state of `rng`.
    fn sample(
        &mut self,
        theta: &WeightMatrix<'_>,
        reads: usize,
        rng: &mut dyn RngCore,
    ) -> Result<Vec<SpinVector>, SamplerError>;
}

impl<S: Sampler + ?Sized> Sampler for &mut S {
    fn sample(
        &mut self,
        theta: &WeightMatrix<'_>,
        reads: usize,
        rng: &mut dyn RngCore,
    ) -> Result<Vec<SpinVector>, SamplerError> {
        (**self).sample(theta, reads, rng)
    }
}

impl<S: Sampler + ?Sized> Sampler for Box<S> {
    fn sample(
        &mut self,
        theta: &WeightMatrix<'_>,
        reads: usize,
        rng: &mut dyn RngCore,
    ) -> Result<Vec<SpinVector>, SamplerError> {
        (**self).sample(theta, reads, rng)
    }
}

/// Draws `reads` samples and returns the one of lowest energy, keeping the
/// first in sample order on ties.
pub fn estimate_argmin<S: Sampler + ?Sized>(
    sampler: &mut S,
    theta: &WeightMatrix<'_>,
    reads: usize,
    rng: &mut dyn RngCore,
) -> Result<SpinVector, SamplerError> {
    if reads == 0 {
        return Err(SamplerError::MalformedResponse("at least one read is required".into()));
    }
    let samples = sampler.sample(theta, reads, rng)?;
    if samples.len() != reads {
        return Err(SamplerError::MalformedResponse(format!("expected {reads} samples, got {}", samples.len())));
    }
    let n = theta.dim();
    let mut best: Option<(f64, SpinVector)> = None;
    for z in samples {
        if z.len() != n {
            return Err(SamplerError::DimensionMismatch { expected: n, found: z.len() });
        }
        let e = theta.energy_unchecked(z.as_slice());
        if best.as_ref().is_none_or(|(b, _)| e < *b) {
            best = Some((e, z));
        }
    }
    Ok(best.expect("reads >= 1").1)
}

/// Factor `c` such that `Θ / c` fills the bias range `[-delta, delta]` or the
/// coupling range `[-gamma, gamma]`; `None` for the zero matrix.
pub fn range_scale_factor(theta: &WeightMatrix<'_>, delta: f64, gamma: f64) -> Option<f64> {
    let bias = (0..theta.dim()).map(|i| theta.bias(i).abs()).fold(0.0, f64::max);
    let coupling = theta.couplings().map(|(_, _, v)| v.abs()).fold(0.0, f64::max);
    let c = f64::max(bias / delta, coupling / gamma);
    (c > 0.0).then_some(c)
}

/// Rescales `Θ` to use the full hardware ranges. The minimizer set is
/// unchanged since the factor is positive.
pub fn scale_to_ranges<'g>(theta: &WeightMatrix<'g>, delta: f64, gamma: f64) -> Result<WeightMatrix<'g>, Error> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidParameter { name: "delta", reason: "must be positive" });
    }
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidParameter { name: "gamma", reason: "must be positive" });
    }
    let Some(c) = range_scale_factor(theta, delta, gamma) else {
        return Ok(theta.clone());
    };
    let n = theta.dim();
    let mut scaled = theta.as_slice().to_vec();
    for i in 0..n {
        for j in 0..n {
            // division can land one ulp outside the range
            let limit = if i == j { delta } else { gamma };
            let v = &mut scaled[i * n + j];
            *v = (*v / c).clamp(-limit, limit);
        }
    }
    Ok(WeightMatrix::from_raw(theta.graph(), scaled))
}
