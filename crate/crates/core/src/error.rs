use thiserror::Error;

/// Errors raised by graph construction, moves, reductions and the catalog.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("loop edge at vertex {0}")]
    InvalidEdge(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for order {order}")]
    BadVertex { vertex: usize, order: usize },
    #[error("order {0} exceeds the supported maximum")]
    OrderTooLarge(usize),
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("graph6 parse error: {0}")]
    ParseError(String),
    #[error("reduction pair must be two distinct vertices, got {0} twice")]
    SamePair(usize),
    #[error("vertices {0:?} do not span a triangle")]
    NotATriangle([usize; 3]),
    #[error("vertex {0} does not have degree 3")]
    NotAYVertex(usize),
    #[error("Y-triangle move at vertex {0} would create a parallel edge")]
    WouldCreateParallel(usize),
    #[error("family closure exceeded its budget of {0} members")]
    ClosureBudget(usize),
    #[error("unknown graph name {0:?}")]
    UnknownGraph(String),
    #[error("graph {0:?} has no contraction witness")]
    NoWitness(String),
    #[error("brute-force oracle limited to order <= 9, got {0}")]
    OracleTooLarge(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
