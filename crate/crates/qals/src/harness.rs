//! Replicated experiments against the brute-force oracle.
//!
//! Replica `r` of an experiment seeded with `s` solves with seed `s + r`;
//! unless a fixed instance seed is given, its QUBO instance is drawn from the
//! instance stream of that same seed. Records come back ordered by replica
//! index whatever the thread scheduling.

use std::fmt::{self, Write as _};
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use qals_core::rng::{replica_seed, root_stream, Substream};
use qals_core::{
    brute_force_min, chimera_graph, complete_graph, random_qubo, solve, ChimeraSpec, ExactSampler, MetropolisSampler,
    QalsParams, QuboProblem, RandomSampler, SaScheduleParams, Sampler, SamplerError, SolveError, Termination,
    TopologyGraph, MAX_ENUMERATION_DIM,
};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::formats::{parse_edge_list, ParseError};
use crate::remote::RemoteSampler;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid experiment: {0}")]
    Spec(String),
    #[error(transparent)]
    Input(#[from] qals_core::Error),
    #[error("cannot read {path}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}")]
    GraphFile { path: PathBuf, source: ParseError },
    #[error("replica {replica}")]
    Replica { replica: usize, source: SolveError },
}

impl HarnessError {
    /// True when the failure came from a sampler backend rather than the input.
    pub fn is_sampler_failure(&self) -> bool {
        matches!(self, HarnessError::Replica { source: SolveError::Sampler { .. }, .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BackendSpec {
    Exact,
    Sa(SaScheduleParams),
    Random,
    Remote { url: String },
}

impl BackendSpec {
    pub fn sampler(&self) -> Result<Box<dyn Sampler + Send>, SamplerError> {
        Ok(match self {
            BackendSpec::Exact => Box::new(ExactSampler),
            BackendSpec::Sa(schedule) => Box::new(MetropolisSampler::new(*schedule)?),
            BackendSpec::Random => Box::new(RandomSampler),
            BackendSpec::Remote { url } => Box::new(RemoteSampler::new(url.clone())),
        })
    }
}

impl FromStr for BackendSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(BackendSpec::Exact),
            "sa" => Ok(BackendSpec::Sa(SaScheduleParams::default())),
            "random" => Ok(BackendSpec::Random),
            _ => match s.strip_prefix("remote:") {
                Some(url) if !url.is_empty() => Ok(BackendSpec::Remote { url: url.to_string() }),
                _ => Err(format!("unknown sampler `{s}`; expected exact, sa, random or remote:<url>")),
            },
        }
    }
}

impl fmt::Display for BackendSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BackendSpec::Exact => f.write_str("exact"),
            BackendSpec::Sa(_) => f.write_str("sa"),
            BackendSpec::Random => f.write_str("random"),
            BackendSpec::Remote { url } => write!(f, "remote:{url}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphSpec {
    Complete,
    Chimera { m: usize },
    File { path: PathBuf },
}

impl GraphSpec {
    /// The topology for an `n`-variable problem; it must have exactly `n` nodes.
    pub fn build(&self, n: usize) -> Result<TopologyGraph, HarnessError> {
        let graph = match self {
            GraphSpec::Complete => return Ok(complete_graph(n)?),
            GraphSpec::Chimera { m } => chimera_graph(ChimeraSpec::new(*m)?),
            GraphSpec::File { path } => {
                let text =
                    std::fs::read_to_string(path).map_err(|source| HarnessError::Io { path: path.clone(), source })?;
                parse_edge_list(&text).map_err(|source| HarnessError::GraphFile { path: path.clone(), source })?
            }
        };
        if graph.node_count() != n {
            return Err(HarnessError::Spec(format!(
                "graph `{self}` has {} nodes but the problem has {n} variables",
                graph.node_count()
            )));
        }
        Ok(graph)
    }
}

impl FromStr for GraphSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "complete" {
            return Ok(GraphSpec::Complete);
        }
        if let Some(m) = s.strip_prefix("chimera:") {
            return m
                .parse()
                .ok()
                .filter(|&m| m >= 1)
                .map(|m| GraphSpec::Chimera { m })
                .ok_or_else(|| format!("bad Chimera size `{m}`; expected an integer >= 1"));
        }
        match s.strip_prefix("file:") {
            Some(path) if !path.is_empty() => Ok(GraphSpec::File { path: path.into() }),
            _ => Err(format!("unknown graph `{s}`; expected complete, chimera:<m> or file:<path>")),
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Complete => f.write_str("complete"),
            GraphSpec::Chimera { m } => write!(f, "chimera:{m}"),
            GraphSpec::File { path } => write!(f, "file:{}", path.display()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentSpec {
    pub n: usize,
    /// Fraction of nonzero off-diagonal entries, in `(0, 1]`.
    pub density: f64,
    pub coeff_range: (f64, f64),
    pub replicas: usize,
    /// `params.seed` is the experiment's root seed.
    pub params: QalsParams,
    pub backend: BackendSpec,
    pub graph: GraphSpec,
    /// Solve one shared instance drawn from this seed instead of one per replica.
    pub instance_seed: Option<u64>,
    /// Compare every replica against the brute-force minimum.
    pub oracle: bool,
}

impl ExperimentSpec {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            density: 0.5,
            coeff_range: (-1.0, 1.0),
            replicas: 10,
            params: QalsParams::default(),
            backend: BackendSpec::Sa(SaScheduleParams::default()),
            graph: GraphSpec::Complete,
            instance_seed: None,
            oracle: true,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |msg: String| Err(HarnessError::Spec(msg));
        if self.n == 0 {
            return bad("n must be at least 1".into());
        }
        if self.replicas == 0 {
            return bad("replicas must be at least 1".into());
        }
        if !(self.density > 0.0 && self.density <= 1.0) {
            return bad(format!("density {} outside (0, 1]", self.density));
        }
        let (lo, hi) = self.coeff_range;
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return bad(format!("coefficient range {lo}:{hi} must be finite with lo <= hi"));
        }
        if self.oracle && self.n > MAX_ENUMERATION_DIM {
            return Err(qals_core::Error::Capacity { n: self.n, max: MAX_ENUMERATION_DIM }.into());
        }
        self.params.validate()?;
        if let BackendSpec::Sa(schedule) = &self.backend {
            schedule.validate().map_err(|e| HarnessError::Spec(e.to_string()))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplicaRecord {
    pub replica: usize,
    pub seed: u64,
    pub f_best: f64,
    pub oracle_min: Option<f64>,
    pub success: Option<bool>,
    /// Iteration at which the optimum was first reached, for successful runs.
    pub iters_to_opt: Option<u64>,
    pub iterations: u64,
    pub evaluations: u64,
    pub termination: Termination,
    pub millis: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Quantiles {
    pub min: f64,
    pub q25: f64,
    pub median: f64,
    pub q75: f64,
    pub max: f64,
    pub mean: f64,
}

impl Quantiles {
    /// Linear interpolation between order statistics; `None` for no data.
    pub fn of(values: impl IntoIterator<Item = f64>) -> Option<Self> {
        let mut v: Vec<f64> = values.into_iter().collect();
        if v.is_empty() {
            return None;
        }
        v.sort_by(f64::total_cmp);
        let at = |q: f64| {
            let pos = q * (v.len() - 1) as f64;
            let (lo, hi) = (pos.floor() as usize, pos.ceil() as usize);
            v[lo] + (v[hi] - v[lo]) * (pos - lo as f64)
        };
        Some(Self {
            min: v[0],
            q25: at(0.25),
            median: at(0.5),
            q75: at(0.75),
            max: v[v.len() - 1],
            mean: v.iter().sum::<f64>() / v.len() as f64,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Aggregates {
    pub replicas: usize,
    pub successes: Option<usize>,
    pub success_rate: Option<f64>,
    pub f_best: Quantiles,
    /// Over successful replicas only.
    pub iters_to_opt: Option<Quantiles>,
    pub iterations: Quantiles,
    pub millis: Quantiles,
}

impl Aggregates {
    pub fn from_records(records: &[ReplicaRecord]) -> Self {
        let successes = records.iter().map(|r| r.success.map(usize::from)).sum::<Option<usize>>();
        Self {
            replicas: records.len(),
            successes,
            success_rate: successes.map(|s| s as f64 / records.len() as f64),
            f_best: Quantiles::of(records.iter().map(|r| r.f_best)).expect("at least one replica"),
            iters_to_opt: Quantiles::of(records.iter().filter_map(|r| r.iters_to_opt.map(|i| i as f64))),
            iterations: Quantiles::of(records.iter().map(|r| r.iterations as f64)).expect("at least one replica"),
            millis: Quantiles::of(records.iter().map(|r| r.millis)).expect("at least one replica"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub spec: ExperimentSpec,
    pub replicas: Vec<ReplicaRecord>,
    pub aggregates: Aggregates,
}

impl ExperimentReport {
    /// The report with wall times zeroed, for comparing runs.
    pub fn without_timing(&self) -> Self {
        let mut out = self.clone();
        for r in &mut out.replicas {
            r.millis = 0.0;
        }
        out.aggregates = Aggregates::from_records(&out.replicas);
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("replica,seed,f_best,success,iters_to_opt,millis\n");
        let opt = |v: Option<String>| v.unwrap_or_default();
        for r in &self.replicas {
            writeln!(
                out,
                "{},{},{},{},{},{:.3}",
                r.replica,
                r.seed,
                r.f_best,
                opt(r.success.map(|s| s.to_string())),
                opt(r.iters_to_opt.map(|i| i.to_string())),
                r.millis
            )
            .unwrap();
        }
        out
    }
}

/// Two objective values count as equal within this band; distinct minimizers
/// of the same value can differ by rounding.
pub fn success_tolerance(problem: &QuboProblem) -> f64 {
    let magnitude: f64 = problem.as_slice().iter().map(|v| v.abs()).sum();
    1e-9 * (1.0 + magnitude)
}

pub fn instance(spec: &ExperimentSpec, replica: usize) -> Result<QuboProblem, HarnessError> {
    let seed = spec.instance_seed.unwrap_or_else(|| replica_seed(spec.params.seed, replica as u64));
    let mut rng = root_stream(seed, Substream::Instance);
    Ok(random_qubo(spec.n, spec.density, spec.coeff_range, &mut rng)?)
}

pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport, HarnessError> {
    spec.validate()?;
    let graph = spec.graph.build(spec.n)?;
    // one client for every replica so the capability lookup is shared
    let remote = match &spec.backend {
        BackendSpec::Remote { url } => Some(RemoteSampler::new(url.clone())),
        _ => None,
    };
    let outcomes: Vec<Result<ReplicaRecord, HarnessError>> = (0..spec.replicas)
        .into_par_iter()
        .map(|replica| {
            let sampler: Box<dyn Sampler + Send> = match &remote {
                Some(client) => Box::new(client.clone()),
                None => spec.backend.sampler().map_err(|e| HarnessError::Spec(e.to_string()))?,
            };
            run_replica(spec, &graph, replica, sampler)
        })
        .collect();
    let replicas = outcomes.into_iter().collect::<Result<Vec<_>, _>>()?;
    let aggregates = Aggregates::from_records(&replicas);
    Ok(ExperimentReport { spec: spec.clone(), replicas, aggregates })
}

fn run_replica(
    spec: &ExperimentSpec,
    graph: &TopologyGraph,
    replica: usize,
    sampler: Box<dyn Sampler + Send>,
) -> Result<ReplicaRecord, HarnessError> {
    let seed = replica_seed(spec.params.seed, replica as u64);
    let problem = instance(spec, replica)?;
    let oracle_min = if spec.oracle { Some(brute_force_min(&problem)?.1) } else { None };
    let params = QalsParams { seed, ..spec.params.clone() };
    let start = Instant::now();
    let report =
        solve(&problem, graph, sampler, &params).map_err(|source| HarnessError::Replica { replica, source })?;
    let millis = start.elapsed().as_secs_f64() * 1e3;
    let success = oracle_min.map(|m| report.f_best - m <= success_tolerance(&problem));
    Ok(ReplicaRecord {
        replica,
        seed,
        f_best: report.f_best,
        oracle_min,
        success,
        iters_to_opt: (success == Some(true)).then_some(report.best_iteration),
        iterations: report.iterations,
        evaluations: report.evaluations,
        termination: report.termination,
        millis,
    })
}
