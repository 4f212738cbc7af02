//! Connections and parallel transport in low-dimensional matrix
//! groups. A connection here is a finite sum of compactly supported
//! bump one-forms; transporting a frame around a loop produces a
//! holonomy matrix, and a nontrivial holonomy certifies that the
//! loop is not retraceable to a point.
//!
//! Everything numerical carries an explicit error estimate, and
//! returned matrices are re-projected onto their group so that
//! membership residuals stay near machine precision.

use thiserror::Error;

pub mod connection;
pub mod group;
pub mod random;
pub mod transport;

pub use connection::{
    bump_profile, read_connection, write_connection, BumpTerm, BumpTermRecord, Connection,
    ConnectionRecord, BUMP_CHORD_INTEGRAL,
};
pub use group::{AlgebraElement, GroupElement, LieGroupSpec};
pub use random::{random_connection, GroupSampler};
pub use transport::{
    group_distance, holonomy_of_word, transport, Holonomy, PlTransport, TransportPath,
    DEFAULT_TRANSPORT_STEPS,
};

/// Errors from connection construction, serialization, and transport.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum GaugeError {
    #[error("group mismatch: expected {expected}, got {got}")]
    SpecMismatch {
        expected: LieGroupSpec,
        got: LieGroupSpec,
    },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error("invalid bump term: {0}")]
    BadTerm(String),
    #[error("matrix is not in the algebra: {0}")]
    NotInAlgebra(String),
    #[error("matrix is not in the group: {0}")]
    NotInGroup(String),
    #[error("transport needs at least one step per piece")]
    ZeroSteps,
    #[error("non-finite values in {0}")]
    NonFinite(String),
    #[error("invalid record: {0}")]
    BadRecord(String),
}
