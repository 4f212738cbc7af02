//! Inverse problems for holonomy: matrix logarithms with certified
//! round trips, synthesis of connections hitting prescribed generator
//! holonomies, and triviality falsification that turns a nonidentity
//! word into a concrete field separating the loop from the constant
//! one.

pub mod build;
pub mod falsify;
pub mod logmap;

pub use build::{
    bump_inside_clearance, read_synthesis_record, synthesize, synthesize_full,
    write_synthesis_record, ProvenanceEntry, Synthesis, SynthesisRecord, DEFAULT_MIN_CLEARANCE,
};
pub use falsify::{falsify_hoop_triviality, FalsifyOutcome, Nontriviality, FALSIFY_MARGIN};
pub use logmap::{log_map, LogResult, LOG_RESIDUAL_TOL};

use crate::gauge::GaugeError;
use crate::geom::GeomError;
use crate::words::WordsError;

/// Failures of logarithms, synthesis, or falsification.
#[derive(thiserror::Error, Debug)]
pub enum SynthError {
    #[error("expected {expected} targets, got {got}")]
    WrongTargetCount { expected: usize, got: usize },
    #[error("target {index} is off its group by {residual:e}")]
    TargetOffGroup { index: usize, residual: f64 },
    #[error("matrix is off its group by {residual:e}")]
    OffGroup { residual: f64 },
    #[error("decomposition is not independent, generators share support")]
    NotIndependent,
    #[error("marked segment {segment} has clearance {radius:e}, below the minimum {minimum:e}")]
    ClearanceTooSmall {
        segment: usize,
        radius: f64,
        minimum: f64,
    },
    #[error("no witness found in {trials} trials")]
    WitnessNotFound { trials: u32 },
    #[error("synthesized holonomy stayed within {distance:e} of the identity")]
    VerificationFailed { distance: f64 },
    #[error("logarithm failed to invert the exponential, residual {0:e}")]
    LogFailed(f64),
    #[error("bad synthesis record: {0}")]
    BadRecord(String),
    #[error(transparent)]
    Gauge(#[from] GaugeError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Words(#[from] WordsError),
}
