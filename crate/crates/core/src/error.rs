use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} out of range (graph has {n} vertices)")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph has {n} vertices, limit is {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("invalid family specification: {0}")]
    InvalidFamily(String),

    #[error("vertex set must be nonempty")]
    EmptySet,

    #[error("graph is not a tree")]
    NotATree,

    #[error("distance {distance} is illegal from vertex {vertex} (eccentricity {ecc})")]
    IllegalDistance {
        vertex: usize,
        distance: u32,
        ecc: u32,
    },

    #[error("vertex {reply} is not at distance {distance} from {from}")]
    IllegalReply {
        from: usize,
        distance: u32,
        reply: usize,
    },

    #[error(
        "invalid at step {step}: distance {distance} exceeds eccentricity {ecc} of vertex {vertex}"
    )]
    InvalidSequence {
        step: usize,
        distance: u32,
        vertex: usize,
        ecc: u32,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
