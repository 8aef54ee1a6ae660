use thiserror::Error;

/// Errors produced by graph construction, certificates and the exhaustive searches.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("vertex sets differ: {left} vs {right} vertices")]
    VertexCountMismatch { left: usize, right: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An exhaustive search was asked to run beyond its configured size limit.
    #[error("{what}: size {size} exceeds the configured limit {limit}")]
    GuardExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    /// The input contains `K_{p+1}`; `witness` spans a complete subgraph of that size.
    #[error("graph contains K_{} on vertices {witness:?}", .witness.len())]
    CliquePresent { witness: Vec<usize> },

    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CliquePresent { .. } => 2,
            Error::GuardExceeded { .. } => 3,
            _ => 1,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
