use alloc::string::String;
use core::fmt;

/// Contract and validation failures of the core types.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    EmptyDimension,
    InvalidSpin {
        index: usize,
        value: i8,
    },
    NotSymmetric {
        row: usize,
        col: usize,
    },
    NonFinite {
        row: usize,
        col: usize,
    },
    /// A weight is nonzero on a pair that is not an edge of the topology.
    OffSupport {
        row: usize,
        col: usize,
    },
    InvalidPermutation,
    InvalidEdge {
        i: usize,
        j: usize,
        n: usize,
    },
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },
    /// The exhaustive routines refuse dimensions above the enumeration cap.
    Capacity {
        n: usize,
        max: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::EmptyDimension => f.write_str("dimension must be at least 1"),
            Error::InvalidSpin { index, value } => {
                write!(f, "spin {index} has value {value}, expected -1 or +1")
            }
            Error::NotSymmetric { row, col } => {
                write!(f, "matrix is not symmetric at ({row}, {col})")
            }
            Error::NonFinite { row, col } => write!(f, "matrix entry ({row}, {col}) is not finite"),
            Error::OffSupport { row, col } => {
                write!(f, "weight ({row}, {col}) is nonzero but not an edge of the topology")
            }
            Error::InvalidPermutation => f.write_str("image array is not a bijection"),
            Error::InvalidEdge { i, j, n } => {
                write!(f, "invalid edge ({i}, {j}) for a graph with {n} nodes")
            }
            Error::InvalidParameter { name, reason } => write!(f, "invalid {name}: {reason}"),
            Error::Capacity { n, max } => {
                write!(f, "dimension {n} exceeds the enumeration limit of {max}; use a heuristic backend")
            }
        }
    }
}

impl core::error::Error for Error {}

/// Failures reported by a [`Sampler`](crate::Sampler) backend.
#[derive(Debug, Clone, PartialEq)]
pub enum SamplerError {
    Capacity { n: usize, max: usize },
    DimensionMismatch { expected: usize, found: usize },
    InvalidSchedule(&'static str),
    Transport(String),
    MalformedResponse(String),
}

impl fmt::Display for SamplerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SamplerError::Capacity { n, max } => {
                write!(f, "sampler cannot handle {n} variables (limit {max}); choose another backend")
            }
            SamplerError::DimensionMismatch { expected, found } => {
                write!(f, "sample has {found} spins, expected {expected}")
            }
            SamplerError::InvalidSchedule(reason) => write!(f, "invalid annealing schedule: {reason}"),
            SamplerError::Transport(msg) => write!(f, "transport error: {msg}"),
            SamplerError::MalformedResponse(msg) => write!(f, "malformed sampler response: {msg}"),
        }
    }
}

impl core::error::Error for SamplerError {}

/// Errors surfaced by a learning-search run.
#[derive(Debug, Clone, PartialEq)]
pub enum SolveError {
    Input(Error),
    /// `iteration` is `None` when the failure happened during initialization.
    Sampler {
        iteration: Option<u64>,
        source: SamplerError,
    },
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::Input(_) => f.write_str("invalid input"),
            SolveError::Sampler { iteration: None, .. } => f.write_str("sampler failed during initialization"),
            SolveError::Sampler { iteration: Some(i), .. } => write!(f, "sampler failed at iteration {i}"),
        }
    }
}

impl core::error::Error for SolveError {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            SolveError::Input(e) => Some(e),
            SolveError::Sampler { source, .. } => Some(source),
        }
    }
}

impl From<Error> for SolveError {
    fn from(e: Error) -> Self {
        SolveError::Input(e)
    }
}
