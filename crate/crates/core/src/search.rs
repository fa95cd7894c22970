//! The learning-search loop.
//!
//! Each iteration deforms `Q` by the scaled tabu matrix, encodes it into the
//! annealer through a perturbed copy of the best permutation, samples, maps
//! the estimate back, optionally perturbs it, and applies a simulated
//! annealing acceptance rule with `p` playing the role of `e^{-1/T}`.

use alloc::vec::Vec;
use core::mem;

use rand::{Rng, RngCore};

use crate::rng::{root_stream, StreamRng, Substream};
use crate::sampler::{estimate_argmin, Sampler};
use crate::{
    decode, encode, modify_permutation, Error, Objective, Permutation, QuboProblem, SolveError, SpinVector, TabuMatrix,
    TopologyGraph,
};

/// Replaceable balancing-factor rule `(λ₀, i, e) -> λ`; results are capped at `λ₀`.
pub type LambdaSchedule = fn(f64, u64, u64) -> f64;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct QalsParams {
    /// Floor of the permutation-modification probability, in `(0, 0.5)`.
    pub p_delta: f64,
    /// Decrease rate of `p`, in `(0, 1)`.
    pub eta: f64,
    /// Probability of perturbing a candidate, in `(0, 1]`.
    pub q: f64,
    /// Iterations spent at each `p` level.
    pub n_per_level: u64,
    pub lambda0: f64,
    /// Annealer reads per estimate.
    pub k: usize,
    pub i_max: u64,
    pub n_max: u64,
    pub d_min: u64,
    pub seed: u64,
    /// Record one [`TraceRecord`] per iteration.
    pub trace: bool,
}

impl Default for QalsParams {
    fn default() -> Self {
        Self {
            p_delta: 0.1,
            eta: 0.01,
            q: 0.7,
            n_per_level: 10,
            lambda0: 3.0,
            k: 10,
            i_max: 1000,
            n_max: 100,
            d_min: 20,
            seed: 0,
            trace: false,
        }
    }
}

impl QalsParams {
    pub fn validate(&self) -> Result<(), Error> {
        let bad = |name, reason| Err(Error::InvalidParameter { name, reason });
        if !(self.p_delta > 0.0 && self.p_delta < 0.5) {
            return bad("p_delta", "must lie in (0, 0.5)");
        }
        if !(self.eta > 0.0 && self.eta < 1.0) {
            return bad("eta", "must lie in (0, 1)");
        }
        if !(self.q > 0.0 && self.q <= 1.0) {
            return bad("q", "must lie in (0, 1]");
        }
        if !(self.lambda0 > 0.0 && self.lambda0.is_finite()) {
            return bad("lambda0", "must be positive");
        }
        for (name, v) in [
            ("N", self.n_per_level),
            ("k", self.k as u64),
            ("i_max", self.i_max),
            ("N_max", self.n_max),
            ("d_min", self.d_min),
        ] {
            if v == 0 {
                return bad(name, "must be at least 1");
            }
        }
        Ok(())
    }
}

/// What happened to the candidate in one iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "snake_case"))]
pub enum Outcome {
    /// The candidate equals the current solution.
    Repeated,
    Improved,
    AcceptedWorse,
    Rejected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "snake_case"))]
pub enum Termination {
    IterationLimit,
    /// `e + d ≥ N_max` with `d < d_min`.
    Stalled,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TraceRecord {
    pub iteration: u64,
    pub p: f64,
    /// Equivalent annealing temperature `-1 / ln p`.
    pub temperature: f64,
    pub lambda: f64,
    pub f_prime: Option<f64>,
    pub outcome: Outcome,
    pub e: u64,
    pub d: u64,
    pub f_star: f64,
    pub f_best: f64,
    pub tabu_count: u64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SolveReport {
    /// The current solution when the loop stopped.
    pub z_returned: SpinVector,
    pub f_returned: f64,
    /// Best candidate ever evaluated, initialization included.
    pub z_best: SpinVector,
    pub f_best: f64,
    /// Loop iterations after which `z_best` was found (0 = initialization).
    pub best_iteration: u64,
    pub iterations: u64,
    pub evaluations: u64,
    pub termination: Termination,
    pub final_p: f64,
    pub final_lambda: f64,
    pub tabu_count: u64,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub trace: Option<Vec<TraceRecord>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoopState {
    pub z_star: SpinVector,
    pub f_star: f64,
    pub sigma_star: Permutation,
    pub tabu: TabuMatrix,
    pub lambda: f64,
    pub p: f64,
    pub e: u64,
    pub d: u64,
    pub i: u64,
    pub z_best: SpinVector,
    pub f_best: f64,
    pub best_iteration: u64,
    pub evaluations: u64,
}

struct Streams {
    permutation: StreamRng,
    perturbation: StreamRng,
    acceptance: StreamRng,
    sampler: StreamRng,
}

impl Streams {
    fn new(seed: u64) -> Self {
        Self {
            permutation: root_stream(seed, Substream::Permutation),
            perturbation: root_stream(seed, Substream::Perturbation),
            acceptance: root_stream(seed, Substream::Acceptance),
            sampler: root_stream(seed, Substream::Sampler),
        }
    }
}

/// `p − (p − p_δ)η`.
pub fn update_p(p: f64, p_delta: f64, eta: f64) -> f64 {
    p - (p - p_delta) * eta
}

/// `min(λ₀, λ₀ / (2 + i − e))`, where `2 + i − e` counts rejected candidates.
pub fn update_lambda(lambda0: f64, i: u64, e: u64) -> f64 {
    let rejected = 2.0 + i as f64 - e as f64;
    debug_assert!(rejected >= 1.0);
    f64::min(lambda0, lambda0 / rejected)
}

/// Flips each spin independently with probability `pr`.
pub fn perturb_candidate<R: RngCore + ?Sized>(z: &SpinVector, pr: f64, rng: &mut R) -> SpinVector {
    let pr = pr.clamp(0.0, 1.0);
    let mut out = z.clone();
    for i in 0..z.len() {
        if rng.random_bool(pr) {
            out.flip(i);
        }
    }
    out
}

/// True with probability `p^(f′ − f*)`.
pub fn accept_suboptimal<R: RngCore + ?Sized>(p: f64, f_prime: f64, f_star: f64, rng: &mut R) -> bool {
    debug_assert!(p > 0.0 && f_prime >= f_star);
    rng.random::<f64>() < libm::pow(p, f_prime - f_star)
}

/// One learning-search run, advanced an iteration at a time.
pub struct QalsRun<'a, S, O = QuboProblem> {
    problem: &'a QuboProblem,
    objective: &'a O,
    graph: &'a TopologyGraph,
    sampler: S,
    params: QalsParams,
    lambda_schedule: LambdaSchedule,
    streams: Streams,
    state: LoopState,
    trace: Vec<TraceRecord>,
    termination: Option<Termination>,
}

impl<'a, S: Sampler> QalsRun<'a, S, QuboProblem> {
    /// Validates the inputs and performs the two-candidate initialization.
    pub fn new(
        problem: &'a QuboProblem,
        graph: &'a TopologyGraph,
        sampler: S,
        params: QalsParams,
    ) -> Result<Self, SolveError> {
        Self::with_objective(problem, problem, graph, sampler, params)
    }
}

impl<'a, S: Sampler, O: Objective> QalsRun<'a, S, O> {
    /// Encodes `problem` into the annealer but ranks candidates by `objective`.
    pub fn with_objective(
        problem: &'a QuboProblem,
        objective: &'a O,
        graph: &'a TopologyGraph,
        mut sampler: S,
        params: QalsParams,
    ) -> Result<Self, SolveError> {
        params.validate()?;
        let n = problem.dim();
        for found in [graph.node_count(), objective.dim()] {
            if found != n {
                return Err(Error::DimensionMismatch { expected: n, found }.into());
            }
        }
        let mut streams = Streams::new(params.seed);
        let identity = Permutation::identity(n);
        let sigma1 = modify_permutation(&identity, 1.0, &mut streams.permutation);
        let sigma2 = modify_permutation(&identity, 1.0, &mut streams.permutation);
        let theta1 = encode(problem, &sigma1, graph)?;
        let theta2 = encode(problem, &sigma2, graph)?;
        let mut draw = |theta, sigma| -> Result<SpinVector, SolveError> {
            let y = estimate_argmin(&mut sampler, theta, params.k, &mut streams.sampler)
                .map_err(|source| SolveError::Sampler { iteration: None, source })?;
            Ok(decode(&y, sigma)?)
        };
        let z1 = draw(&theta1, &sigma1)?;
        let z2 = draw(&theta2, &sigma2)?;
        let f1 = objective.evaluate(&z1);
        let f2 = objective.evaluate(&z2);

        let (z_star, f_star, sigma_star, z_worse) = if f1 < f2 { (z1, f1, sigma1, z2) } else { (z2, f2, sigma2, z1) };
        let mut tabu = TabuMatrix::zeros(n);
        if f1 != f2 {
            tabu.accumulate(&z_worse)?;
        }
        let state = LoopState {
            z_best: z_star.clone(),
            f_best: f_star,
            z_star,
            f_star,
            sigma_star,
            tabu,
            lambda: params.lambda0,
            p: 1.0,
            e: 0,
            d: 0,
            i: 0,
            best_iteration: 0,
            evaluations: 2,
        };
        Ok(Self {
            problem,
            objective,
            graph,
            sampler,
            params,
            lambda_schedule: update_lambda,
            streams,
            state,
            trace: Vec::new(),
            termination: None,
        })
    }

    pub fn with_lambda_schedule(mut self, schedule: LambdaSchedule) -> Self {
        self.lambda_schedule = schedule;
        self
    }

    pub fn state(&self) -> &LoopState {
        &self.state
    }

    pub fn termination(&self) -> Option<Termination> {
        self.termination
    }

    /// Runs one iteration and reports whether the stopping rule fired.
    pub fn step(&mut self) -> Result<Option<Termination>, SolveError> {
        if self.termination.is_some() {
            return Ok(self.termination);
        }
        let params = &self.params;
        let st = &mut self.state;
        let iteration = st.i;

        let deformed = self.problem.with_tabu(&st.tabu, st.lambda)?;
        if st.i.is_multiple_of(params.n_per_level) {
            st.p = update_p(st.p, params.p_delta, params.eta);
        }
        let sigma = modify_permutation(&st.sigma_star, st.p, &mut self.streams.permutation);
        let theta = encode(&deformed, &sigma, self.graph)?;
        let y = estimate_argmin(&mut self.sampler, &theta, params.k, &mut self.streams.sampler)
            .map_err(|source| SolveError::Sampler { iteration: Some(iteration), source })?;
        let mut candidate = decode(&y, &sigma)?;
        if self.streams.perturbation.random_bool(params.q) {
            candidate = perturb_candidate(&candidate, st.p, &mut self.streams.perturbation);
        }

        let mut f_prime = None;
        let outcome = if candidate != st.z_star {
            let f = self.objective.evaluate(&candidate);
            st.evaluations += 1;
            f_prime = Some(f);
            if f < st.f_best {
                st.z_best = candidate.clone();
                st.f_best = f;
                st.best_iteration = iteration + 1;
            }
            let outcome = if f < st.f_star {
                let displaced = mem::replace(&mut st.z_star, candidate);
                st.f_star = f;
                st.sigma_star = sigma;
                st.e = 0;
                st.d = 0;
                st.tabu.accumulate(&displaced)?;
                Outcome::Improved
            } else {
                st.d += 1;
                if accept_suboptimal(st.p, f, st.f_star, &mut self.streams.acceptance) {
                    st.z_star = candidate;
                    st.f_star = f;
                    st.sigma_star = sigma;
                    st.e = 0;
                    Outcome::AcceptedWorse
                } else {
                    Outcome::Rejected
                }
            };
            st.lambda = (self.lambda_schedule)(params.lambda0, st.i, st.e).min(params.lambda0);
            outcome
        } else {
            st.e += 1;
            Outcome::Repeated
        };
        st.i += 1;

        if params.trace {
            self.trace.push(TraceRecord {
                iteration,
                p: st.p,
                temperature: -1.0 / libm::log(st.p),
                lambda: st.lambda,
                f_prime,
                outcome,
                e: st.e,
                d: st.d,
                f_star: st.f_star,
                f_best: st.f_best,
                tabu_count: st.tabu.count(),
            });
        }

        self.termination = if st.i >= params.i_max {
            Some(Termination::IterationLimit)
        } else if st.e + st.d >= params.n_max && st.d < params.d_min {
            Some(Termination::Stalled)
        } else {
            None
        };
        Ok(self.termination)
    }

    /// Iterates until the stopping rule fires.
    pub fn run(mut self) -> Result<SolveReport, SolveError> {
        let termination = loop {
            if let Some(t) = self.step()? {
                break t;
            }
        };
        let st = self.state;
        Ok(SolveReport {
            z_returned: st.z_star,
            f_returned: st.f_star,
            z_best: st.z_best,
            f_best: st.f_best,
            best_iteration: st.best_iteration,
            iterations: st.i,
            evaluations: st.evaluations,
            termination,
            final_p: st.p,
            final_lambda: st.lambda,
            tabu_count: st.tabu.count(),
            trace: self.params.trace.then_some(self.trace),
        })
    }
}

/// Runs the full search on `problem` over `graph`.
pub fn solve<S: Sampler>(
    problem: &QuboProblem,
    graph: &TopologyGraph,
    sampler: S,
    params: &QalsParams,
) -> Result<SolveReport, SolveError> {
    QalsRun::new(problem, graph, sampler, params.clone())?.run()
}
