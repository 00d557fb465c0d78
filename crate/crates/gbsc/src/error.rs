use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop on vertex {0} is not allowed")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("duplicate vertex {0} in set argument")]
    DuplicateVertex(usize),

    #[error("edge probability {0} is outside [0, 1]")]
    InvalidProbability(f64),

    #[error("{what}: dimension {got} exceeds the supported limit {limit}")]
    DimensionTooLarge {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },

    #[error("matrix is not square: row {row} has {got} entries, expected {expected}")]
    NotSquare {
        row: usize,
        got: usize,
        expected: usize,
    },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("eigensolver failed to converge after {sweeps} sweeps (off-diagonal norm {off:.3e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("mean photon number {nbar} is unreachable: {reason}")]
    UnreachableMeanPhotons { nbar: f64, reason: &'static str },

    #[error("scaling constant must be positive, got {0}")]
    InvalidScaling(f64),

    #[error("sampler configuration invalid: {0}")]
    InvalidSamplerConfig(String),

    #[error("vertices {0} and {1} are not adjacent; the set is not a clique")]
    NotAClique(usize, usize),

    #[error("coloring leaves vertex {0} uncolored but a total coloring is required")]
    PartialColoring(usize),

    #[error("coloring is invalid: edge ({0}, {1}) is monochromatic")]
    InvalidColoring(usize, usize),

    #[error("color count must be at least 1")]
    ZeroColors,

    #[error("candidate list is empty")]
    NoCandidates,

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("benchmark invariant violated: {0}")]
    BenchInvariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
