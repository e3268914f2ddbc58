use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors from reading the edge-list format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed header: expected \"n m\", got {0:?}")]
    MalformedHeader(String),
    #[error("line {line}: malformed edge {text:?}")]
    MalformedEdge { line: usize, text: String },
    #[error("header declares {declared} edges but {found} were given")]
    EdgeCount { declared: usize, found: usize },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: loop at vertex {vertex}")]
    Loop { line: usize, vertex: usize },
    #[error("malformed {what}: {text:?}")]
    Malformed { what: &'static str, text: String },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex set over {found} vertices used with a graph on {expected}")]
    VertexRangeMismatch { expected: usize, found: usize },
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("vertex set must be a proper nonempty subset")]
    ImproperSubset,
    #[error("{what} refused: n = {n} exceeds the cap of {cap}")]
    CapExceeded { what: &'static str, n: usize, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("input to forest splitting contains a cycle")]
    NotAForest,
    #[error("isolated-vertex hypothesis unmet: {isolated} isolated vertices, need at least rho*n - 1 = {required}")]
    HypothesisUnmet { isolated: usize, required: String },
    #[error("postcondition violated: {0}")]
    Postcondition(String),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("transition CSV: {0}")]
    Schema(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
