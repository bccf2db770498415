use thiserror::Error;

use crate::partition::PartitionViolation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge `{0}`-`{1}`")]
    DuplicateEdge(String, String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("self-loop on vertex `{0}`")]
    SelfLoop(String),
    #[error("vertex `{0}` has non-positive mass")]
    NonPositiveMass(String),
    #[error("edge `{0}`-`{1}` has non-positive weight")]
    NonPositiveWeight(String, String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph has {0} vertices; at most {max} are supported", max = crate::graph::MAX_VERTICES)]
    TooManyVertices(usize),
    #[error("block count {n} out of range 1..={vertices}")]
    BlockCountOutOfRange { n: usize, vertices: usize },
    #[error("lambda {0} outside [0, 1]")]
    LambdaOutOfRange(f64),
    #[error("invalid norm exponent {0}: expected a real >= 1 or `inf`")]
    InvalidNorm(String),
    #[error("scale factor must be positive, got {0}")]
    InvalidScale(f64),
    #[error("empty vertex set")]
    EmptyBlock,
    #[error("invalid partition: {0:?}")]
    InvalidPartition(Vec<PartitionViolation>),
    #[error("partition has {fine} blocks, not a multiple of {coarse}")]
    SizeMismatch { fine: usize, coarse: usize },
    #[error("lambda must be non-zero for weight engineering")]
    ZeroLambda,
    #[error("no edge between `{0}` and `{1}`")]
    MissingEdge(String, String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("invalid fixture parameter: {0}")]
    InvalidFixtureParam(String),
}
