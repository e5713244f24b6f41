use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("source and sink must differ (both are {0})")]
    SameSourceSink(usize),
    #[error("root {0} is not in the contracted set")]
    RootNotInSet(usize),
    #[error("terminal set must be nonempty and exclude the root")]
    InvalidTerminals,
    #[error("connectivity parameter must be positive")]
    InvalidLambda,
    #[error("epsilon must be positive, got {0}")]
    InvalidEpsilon(String),
    #[error("in-volume guess must be a positive power of two, got {0}")]
    InvalidMu(usize),
    #[error("graph has no vertex besides the root")]
    NoSinkCandidate,
    #[error("no vertex cut exists: {0}")]
    NoVertexCut(&'static str),
    #[error("exact small-connectivity mode requires integer capacities")]
    NonIntegerCapacities,
    #[error("all vertex capacities are zero")]
    ZeroCapacities,
    #[error("capacity arithmetic overflowed 128 bits")]
    CapacityOverflow,
    #[error("invalid parameter: {0}")]
    InvalidParams(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
