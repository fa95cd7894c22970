//! HTTP client for an external sampling service.
//!
//! `GET {endpoint}/info` advertises the hardware ranges and capacity;
//! `POST {endpoint}/sample` takes biases and couplings and returns spin
//! vectors. Weights are rescaled to the advertised ranges before sending.

use std::sync::{Arc, OnceLock};
use std::time::Duration;

use qals_core::{scale_to_ranges, Sampler, SamplerError, SpinVector, WeightMatrix};
use rand::RngCore;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RemoteInfo {
    pub delta: f64,
    pub gamma: f64,
    pub topology: RemoteTopology,
    pub max_nodes: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RemoteTopology {
    Chimera,
    Complete,
    Custom,
}

#[derive(Debug, Serialize)]
pub struct SampleRequest {
    pub n: usize,
    pub biases: Vec<f64>,
    pub couplings: Vec<(usize, usize, f64)>,
    pub num_reads: usize,
}

#[derive(Debug, Deserialize)]
pub struct SampleResponse {
    pub samples: Vec<Vec<i64>>,
    pub energies: Vec<f64>,
}

/// Cloning shares the connection pool and the cached `/info` answer.
#[derive(Debug, Clone)]
pub struct RemoteSampler {
    endpoint: String,
    agent: ureq::Agent,
    info: Arc<OnceLock<RemoteInfo>>,
}

impl RemoteSampler {
    pub fn new(endpoint: impl Into<String>) -> Self {
        Self::with_timeout(endpoint, Duration::from_secs(60))
    }

    pub fn with_timeout(endpoint: impl Into<String>, timeout: Duration) -> Self {
        let endpoint = endpoint.into().trim_end_matches('/').to_string();
        let agent =
            ureq::Agent::config_builder().timeout_global(Some(timeout)).http_status_as_error(true).build().into();
        Self { endpoint, agent, info: Arc::new(OnceLock::new()) }
    }

    pub fn endpoint(&self) -> &str {
        &self.endpoint
    }

    /// Fetched once, then cached.
    pub fn info(&self) -> Result<&RemoteInfo, SamplerError> {
        if let Some(info) = self.info.get() {
            return Ok(info);
        }
        let info: RemoteInfo = self
            .agent
            .get(format!("{}/info", self.endpoint))
            .call()
            .and_then(|mut r| r.body_mut().read_json())
            .map_err(map_error)?;
        if !(info.delta > 0.0 && info.delta.is_finite() && info.gamma > 0.0 && info.gamma.is_finite()) {
            return Err(SamplerError::MalformedResponse(format!(
                "advertised ranges must be positive, got delta={} gamma={}",
                info.delta, info.gamma
            )));
        }
        Ok(self.info.get_or_init(|| info))
    }

    fn request(&self, theta: &WeightMatrix<'_>, reads: usize) -> Result<SampleRequest, SamplerError> {
        let info = self.info()?;
        let n = theta.dim();
        if n > info.max_nodes {
            return Err(SamplerError::Capacity { n, max: info.max_nodes });
        }
        let scaled = scale_to_ranges(theta, info.delta, info.gamma)
            .map_err(|e| SamplerError::MalformedResponse(e.to_string()))?;
        Ok(SampleRequest {
            n,
            biases: (0..n).map(|i| scaled.bias(i)).collect(),
            couplings: scaled.couplings().collect(),
            num_reads: reads,
        })
    }
}

impl Sampler for RemoteSampler {
    fn sample(
        &mut self,
        theta: &WeightMatrix<'_>,
        reads: usize,
        _rng: &mut dyn RngCore,
    ) -> Result<Vec<SpinVector>, SamplerError> {
        let request = self.request(theta, reads)?;
        let response: SampleResponse = self
            .agent
            .post(format!("{}/sample", self.endpoint))
            .send_json(&request)
            .and_then(|mut r| r.body_mut().read_json())
            .map_err(map_error)?;
        validate(response, theta.dim(), reads)
    }
}

fn validate(response: SampleResponse, n: usize, reads: usize) -> Result<Vec<SpinVector>, SamplerError> {
    if response.samples.len() != reads {
        return Err(SamplerError::MalformedResponse(format!(
            "requested {reads} reads, got {} samples",
            response.samples.len()
        )));
    }
    if response.energies.len() != response.samples.len() {
        return Err(SamplerError::MalformedResponse(format!(
            "{} samples but {} energies",
            response.samples.len(),
            response.energies.len()
        )));
    }
    response
        .samples
        .into_iter()
        .map(|raw| {
            if raw.len() != n {
                return Err(SamplerError::DimensionMismatch { expected: n, found: raw.len() });
            }
            let spins = raw
                .iter()
                .map(|&v| match v {
                    1 => Ok(1),
                    -1 => Ok(-1),
                    other => Err(SamplerError::MalformedResponse(format!("entry {other} is not a spin"))),
                })
                .collect::<Result<Vec<i8>, _>>()?;
            Ok(SpinVector::new(spins).expect("entries checked"))
        })
        .collect()
}

fn map_error(err: ureq::Error) -> SamplerError {
    use ureq::Error as E;
    match err {
        E::StatusCode(code) => SamplerError::MalformedResponse(format!("HTTP status {code}")),
        E::Json(e) => SamplerError::MalformedResponse(format!("invalid JSON: {e}")),
        E::Http(_) | E::Protocol(_) | E::BodyExceedsLimit(_) | E::BodyStalled => {
            SamplerError::MalformedResponse(err.to_string())
        }
        other => SamplerError::Transport(other.to_string()),
    }
}
