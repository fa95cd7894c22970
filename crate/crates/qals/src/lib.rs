//! Host-side companion to `qals-core`: instance and topology file formats,
//! the HTTP sampler client, the experiment harness and the `qals` CLI.

pub mod config;
pub mod formats;
pub mod harness;
pub mod remote;

pub use formats::{parse_edge_list, parse_qubo_file, write_qubo_file, ParseError};
pub use harness::{run_experiment, BackendSpec, ExperimentReport, ExperimentSpec, GraphSpec, HarnessError};
pub use remote::RemoteSampler;
