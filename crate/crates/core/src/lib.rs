//! Quantum annealing learning search for QUBO problems over spin variables.
//!
//! The search repeatedly encodes a QUBO matrix, deformed by a tabu matrix of
//! penalized candidates, into the weights of an annealer with a fixed
//! topology. The annealer is abstracted by the [`Sampler`] trait; the crate
//! ships exact-enumeration, Metropolis and uniform-random backends.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod enumerate;
mod error;

pub mod encoding;
pub mod oracle;
pub mod permutation;
pub mod problem;
pub mod rng;
pub mod sampler;
pub mod search;
pub mod spin;
pub mod tabu;
pub mod topology;
pub mod weights;

pub use encoding::{decode, encode, map_to_qubits};
pub use error::{Error, SamplerError, SolveError};
pub use oracle::{brute_force_min, random_qubo};
pub use permutation::{modify_permutation, Permutation};
pub use problem::{objective, Objective, QuboProblem};
pub use sampler::{
    estimate_argmin, exact_sample, metropolis_sample, random_sample, scale_to_ranges, ExactSampler, MetropolisSampler,
    RandomSampler, SaScheduleParams, Sampler,
};
pub use search::{
    accept_suboptimal, perturb_candidate, solve, update_lambda, update_p, LoopState, Outcome, QalsParams, QalsRun,
    SolveReport, Termination, TraceRecord,
};
pub use spin::SpinVector;
pub use tabu::{conjugate_tabu, tabu_init, tabu_update, TabuMatrix};
pub use topology::{chimera_graph, complete_graph, graph_from_edge_list, ChimeraSpec, TopologyGraph};
pub use weights::{energy, WeightMatrix};

/// Largest dimension accepted by the enumeration-based routines.
pub const MAX_ENUMERATION_DIM: usize = 24;
