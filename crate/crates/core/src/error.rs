use thiserror::Error;

use crate::quiver::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range (quiver has {count} vertices)")]
    VertexOutOfRange { vertex: usize, count: usize },

    #[error("unknown arrow {0}")]
    UnknownArrow(String),

    #[error("arrow sequence is not composable at position {position}")]
    NotComposable { position: usize },

    #[error("invalid dimer quiver: {0}")]
    InvalidQuiver(ValidationReport),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("not a perfect matching: {0}")]
    NotPerfectMatching(String),

    #[error("contraction sends unit cycle to vertex (face {face})")]
    UnitCycleToVertex { face: usize },

    #[error("contraction contracts a cycle of the underlying graph (through arrow {arrow})")]
    ContractsCycle { arrow: String },

    #[error("contracted quiver is not a dimer quiver: {0}")]
    InvalidTarget(ValidationReport),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("degree {requested} exceeds the computed bound {available}")]
    DegreeBeyondCache { requested: u32, available: u32 },

    #[error("exploration cap of {cap} states exceeded")]
    CapExceeded { cap: usize },

    #[error("unknown fixture {0}")]
    UnknownFixture(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
