//! Fine-topology pathologies: curves that are close in every C^n
//! seminorm yet holonomy-distinguishable, built from cascades of
//! shrinking bumps on dyadic intervals. The pieces here construct
//! those cascades, measure C^n distances with exact derivative
//! oracles, interpolate between approximations, locally flatten
//! curves, and discretize them for the combinatorial word tests.

pub mod counterexample;
pub mod curve;
pub mod distance;
pub mod flatten;
pub mod homotopy;
pub mod mollify;
pub mod profile;

pub use counterexample::{counterexample_family, CounterexampleFamily, MAX_CASCADE_DEPTH};
pub use distance::{cn_distance, cn_distance_report, CnDistanceReport};
pub use flatten::{flatten_loop, flatten_to_pl};
pub use homotopy::{
    interpolating_homotopy, stage_radius, BandBound, HomotopyReport, InterpolatingHomotopy,
};
pub use mollify::{mollify, MollifierSpec};
pub use curve::{
    read_curve, write_curve, AtomRecord, CurveRecord, DyadicAtom, GraphCurve, GraphPath,
    MollifierFactor, MollifierRecord,
};
pub use profile::{BumpProfile, DEFAULT_FLATNESS};

use crate::geom::GeomError;

/// Errors from pathology constructions.
#[derive(Debug, thiserror::Error)]
pub enum PathologyError {
    /// Flatness orders outside 1..=40 are either useless or overflow.
    #[error("flatness order {0} is outside the supported range 1..=40")]
    BadFlatness(usize),
    /// A derivative order beyond what the profile certifies.
    #[error("derivative order {order} exceeds the oracle's maximum {max}")]
    OrderBeyondOracle { order: usize, max: usize },
    /// A curve, atom, or evaluation point left its domain.
    #[error("bad domain: {0}")]
    BadDomain(String),
    /// Sample grids need at least two points.
    #[error("sample count {0} is too small")]
    BadSampleCount(usize),
    /// Cascade depth outside the supported range.
    #[error("cascade depth {level} is outside 1..={max}")]
    LevelOutOfRange { level: u32, max: u32 },
    /// An interpolation stage is not close enough to its target.
    #[error(
        "stage {level} is {distance:.3e} from the target in C^{level}, over the bound {bound:.3e}"
    )]
    ClosenessViolated { level: u32, distance: f64, bound: f64 },
    /// Two mollifier supports overlap, so their effects would mix.
    #[error("mollifier supports {first} and {second} overlap")]
    MollifierOverlap { first: usize, second: usize },
    /// Flattening needs at least two samples per atom interval.
    #[error("resolution {0} is too coarse, need at least 2 samples per interval")]
    BadResolution(usize),
    /// A record file could not be read or written.
    #[error("bad record: {0}")]
    BadRecord(String),
    /// Geometry errors surfaced while discretizing.
    #[error(transparent)]
    Geom(#[from] GeomError),
}
