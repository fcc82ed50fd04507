use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("edge list contains no edges")]
    EmptyGraph,
    #[error("node {node} out of range for graph with {n_nodes} nodes")]
    NodeOutOfRange { node: usize, n_nodes: usize },
    #[error("line {line}: invalid value: {message}")]
    InvalidValue { line: usize, message: String },
    #[error("line {line}: id {id:?} is not a node of the graph")]
    UnknownId { line: usize, id: String },
    #[error("attribute {name:?} has {found} values but the graph has {expected} nodes")]
    NodeSetMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("size error: {0}")]
    Size(String),
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("Pareto mean is undefined for alpha = {alpha} <= 1")]
    UndefinedMean { alpha: f64 },
    #[error("empty input")]
    EmptyInput,
    #[error("histogram has no positive values")]
    EmptyHistogram,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
