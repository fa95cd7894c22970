use alloc::vec::Vec;

use rand::{Rng, RngCore};

use super::Sampler;
use crate::{SamplerError, SpinVector, WeightMatrix};

/// Sweep count and inverse-temperature endpoints of the classical anneal.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SaScheduleParams {
    pub sweeps: usize,
    pub beta_start: f64,
    pub beta_end: f64,
}

impl SaScheduleParams {
    /// `beta_start == beta_end` is accepted and runs a constant-temperature chain.
    pub fn new(sweeps: usize, beta_start: f64, beta_end: f64) -> Result<Self, SamplerError> {
        let schedule = Self { sweeps, beta_start, beta_end };
        schedule.validate()?;
        Ok(schedule)
    }

    pub fn validate(&self) -> Result<(), SamplerError> {
        if self.sweeps == 0 {
            return Err(SamplerError::InvalidSchedule("sweeps must be at least 1"));
        }
        if !(self.beta_start > 0.0 && self.beta_start.is_finite() && self.beta_end.is_finite()) {
            return Err(SamplerError::InvalidSchedule("inverse temperatures must be positive"));
        }
        if self.beta_end < self.beta_start {
            return Err(SamplerError::InvalidSchedule("beta_end must not be below beta_start"));
        }
        Ok(())
    }

    /// Geometric interpolation; a single sweep runs at `beta_end`.
    pub fn beta(&self, sweep: usize) -> f64 {
        if self.sweeps == 1 {
            return self.beta_end;
        }
        let t = sweep as f64 / (self.sweeps - 1) as f64;
        self.beta_start * libm::pow(self.beta_end / self.beta_start, t)
    }
}

impl Default for SaScheduleParams {
    fn default() -> Self {
        Self { sweeps: 1000, beta_start: 0.1, beta_end: 10.0 }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct MetropolisSampler {
    pub schedule: SaScheduleParams,
}

impl MetropolisSampler {
    pub fn new(schedule: SaScheduleParams) -> Result<Self, SamplerError> {
        schedule.validate()?;
        Ok(Self { schedule })
    }
}

impl Sampler for MetropolisSampler {
    fn sample(
        &mut self,
        theta: &WeightMatrix<'_>,
        reads: usize,
        rng: &mut dyn RngCore,
    ) -> Result<Vec<SpinVector>, SamplerError> {
        metropolis_sample(theta, reads, &self.schedule, rng)
    }
}

/// Single-spin-flip Metropolis annealing, one independent chain per read,
/// each starting from a uniform random configuration.
pub fn metropolis_sample<R: RngCore + ?Sized>(
    theta: &WeightMatrix<'_>,
    reads: usize,
    schedule: &SaScheduleParams,
    rng: &mut R,
) -> Result<Vec<SpinVector>, SamplerError> {
    schedule.validate()?;
    let n = theta.dim();
    let betas: Vec<f64> = (0..schedule.sweeps).map(|s| schedule.beta(s)).collect();
    let mut out = Vec::with_capacity(reads);
    for _ in 0..reads {
        let mut z = SpinVector::random(n, rng).into_inner();
        for &beta in &betas {
            for i in 0..n {
                let delta = theta.flip_delta(&z, i);
                if delta <= 0.0 || rng.random::<f64>() < libm::exp(-beta * delta) {
                    z[i] = -z[i];
                }
            }
        }
        out.push(SpinVector::from_raw(z));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complete_graph;
    use crate::rng::{root_stream, Substream};

    #[test]
    fn schedule_validation() {
        assert!(SaScheduleParams::new(0, 0.1, 1.0).is_err());
        assert!(SaScheduleParams::new(10, 0.0, 1.0).is_err());
        assert!(SaScheduleParams::new(10, 2.0, 1.0).is_err());
        assert!(SaScheduleParams::new(10, 1.0, 1.0).is_ok());
    }

    #[test]
    fn geometric_endpoints() {
        let s = SaScheduleParams::new(5, 0.1, 10.0).unwrap();
        assert!((s.beta(0) - 0.1).abs() < 1e-15);
        assert!((s.beta(4) - 10.0).abs() < 1e-12);
        assert!((s.beta(2) - 1.0).abs() < 1e-12);
        let flat = SaScheduleParams::new(4, 2.0, 2.0).unwrap();
        assert!((0..4).all(|k| flat.beta(k) == 2.0));
    }

    #[test]
    fn zero_weights_give_uniform_output() {
        let g = complete_graph(2).unwrap();
        let w = WeightMatrix::zeros(&g);
        let schedule = SaScheduleParams::new(3, 1.0, 1.0).unwrap();
        let samples = metropolis_sample(&w, 20_000, &schedule, &mut root_stream(5, Substream::Sampler)).unwrap();
        let mut counts = [0u32; 4];
        for z in &samples {
            counts[usize::from(z[0] == 1) * 2 + usize::from(z[1] == 1)] += 1;
        }
        for c in counts {
            assert!((f64::from(c) - 5000.0).abs() < 300.0, "{counts:?}");
        }
    }
}
