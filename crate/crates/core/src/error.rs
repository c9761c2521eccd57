use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("vertex index {index} out of range for {count} vertices")]
    VertexOutOfRange { index: usize, count: usize },
    #[error("edge index {index} out of range for {count} edges")]
    EdgeOutOfRange { index: usize, count: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("enumeration bound exceeded: {needed} candidates, bound is {bound}")]
    BoundExceeded { needed: u128, bound: u128 },
    #[error("vertex {0} has indegree 0")]
    ZeroIndegree(usize),
    #[error("invalid spanning tree: {0}")]
    InvalidTree(String),
    #[error("invalid tree array: {0}")]
    InvalidTreeArray(String),
    #[error("not a de Bruijn sequence")]
    NotDeBruijn,
    #[error("expected {expected} symbols, got {actual}")]
    WrongLength { expected: usize, actual: usize },
    #[error("graph is not strongly connected")]
    NotStronglyConnected,
    #[error("graph is not Eulerian")]
    NotEulerian,
    #[error("unsupported graph: {0}")]
    UnsupportedGraph(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// An internal invariant of one of the algorithms failed. Seeing this is a bug.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
