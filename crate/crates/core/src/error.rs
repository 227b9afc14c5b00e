use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph order {n} exceeds the supported maximum of {max}")]
    TooManyVertices { n: usize, max: usize },
    #[error("vertex {vertex} out of range for a graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} listed more than once")]
    DuplicateVertex(usize),
    #[error("adjacency is not symmetric at {0}-{1}")]
    Asymmetric(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph6 parse error at byte {offset}: {reason}")]
pub struct Graph6Error {
    pub offset: usize,
    pub reason: &'static str,
}

/// Raised when an exponential routine is asked for more than it can hold.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{routine} supports at most {limit} vertices, got {n}")]
pub struct SizeLimitError {
    pub routine: &'static str,
    pub limit: usize,
    pub n: usize,
}
