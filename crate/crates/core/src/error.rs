use thiserror::Error;

/// Errors raised anywhere in the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {edge} is a self-loop")]
    SelfLoop { edge: usize },
    #[error("{count} parallel edges between {u} and {v} (at most 3 allowed)")]
    TooManyParallel { u: usize, v: usize, count: usize },
    #[error("graph is not planar")]
    NonPlanar,
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error("outer face {0} does not exist")]
    InvalidOuterFace(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("input is infeasible: {0}")]
    InfeasibleInput(String),
    #[error("slice admits no feasible subgraph: {0}")]
    InfeasibleSlice(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("malformed slice set: {0}")]
    MalformedSliceSet(String),
    #[error("corrupt decomposition: {0}")]
    CorruptDecomposition(String),
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("format error: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InfeasibleInput(_) | Error::InfeasibleSlice(_) | Error::Disconnected => 2,
            Error::VertexOutOfRange { .. }
            | Error::SelfLoop { .. }
            | Error::TooManyParallel { .. }
            | Error::NonPlanar
            | Error::InvalidRotation(_)
            | Error::InvalidOuterFace(_)
            | Error::InvalidSpec(_)
            | Error::InvalidParameter(_)
            | Error::Format(_)
            | Error::Io(_)
            | Error::Json(_) => 3,
            Error::BudgetExceeded(_) => 4,
            Error::MalformedSliceSet(_) | Error::CorruptDecomposition(_) | Error::Internal(_) => 1,
        }
    }
}
