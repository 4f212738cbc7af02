//! Exact piecewise-linear geometry: based loops, retracing reduction,
//! segment arrangements, and decomposition into independent generator
//! loops.
//!
//! Two line segments with rational endpoints meet in finitely many
//! points or share a sub-segment, and both cases are decided exactly.
//! That dichotomy is what lets a closed curve be cut into edges that
//! meet only at nodes, so its edge walk transcribes to a word in the
//! cycles of the arrangement graph. Everything here computes over
//! arbitrary-precision rationals; no tolerance ever enters the word.

pub mod arrangement;
pub mod decompose;
pub mod files;
pub mod point;
pub mod polyline;

pub use arrangement::{Arrangement, EdgeId, NodeId};
pub use decompose::{decompose, is_independent, loop_equal, Decomposition, MarkedSegment, TreeHeuristic};
pub use files::{
    loop_from_record, loop_to_record, read_decomposition, read_loop, write_decomposition,
    write_loop, DecompositionRecord, LoopRecord,
};
pub use point::{Point, Rat, SegmentMeet};
pub use polyline::{compose, invert_loop, spur_reduce, PolyLoop, PolyPath};

use thiserror::Error;

/// Why a geometric construction was rejected.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("a path needs at least two vertices")]
    TooFewVertices,
    #[error("ambient dimension must be at least 2, got {0}")]
    DimensionTooLow(usize),
    #[error("mixed coordinate dimensions: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("consecutive vertices repeat at position {0}")]
    RepeatedVertex(usize),
    #[error("vertex list does not start and end at the same point")]
    NotClosed,
    #[error("loops are based at different points")]
    BasepointMismatch,
    #[error("curve leaves the arrangement: {0}")]
    NotOnArrangement(String),
    #[error("invalid rational coordinate {0:?}")]
    BadRational(String),
    #[error("invalid record: {0}")]
    BadRecord(String),
}
