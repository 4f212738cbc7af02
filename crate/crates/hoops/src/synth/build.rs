//! Builds a connection whose generator holonomies hit given targets.
//! Each generator crosses its marked segment exactly once, so a bump
//! centered on that segment contributes
//!
//! ```text
//! transport(generator) = exp(Y u_mu R I_b)
//! ```
//!
//! where u is the unit traversal direction, mu the bump axis, R the
//! support radius, and I_b the chord integral of the window. Scaling
//! the coefficient Y solves for any target in the exponential image;
//! two staggered bumps cover the rest.

use std::fs;
use std::path::Path;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::gauge::{
    BumpTerm, Connection, GroupElement, LieGroupSpec, BUMP_CHORD_INTEGRAL,
};
use crate::geom::point::rational_sqrt_lower_bound;
use crate::geom::{is_independent, Decomposition, MarkedSegment, Rat};

use super::logmap::{log_map, LogResult};
use super::SynthError;

/// Marked segments with a certified clearance radius below this are
/// rejected by default.
pub const DEFAULT_MIN_CLEARANCE: f64 = 1e-6;

/// Support radii use this fraction of the certified clearance, so
/// bumps sit strictly inside their clearance balls.
const SUPPORT_FRACTION: f64 = 0.9;

/// Audit trail from one generator to its bump terms and target.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ProvenanceEntry {
    /// One-based generator index, matching word symbols.
    pub generator: u32,
    /// Target matrix as rows of [re, im] entries.
    pub target: Vec<Vec<[f64; 2]>>,
    /// Indices into the synthesized connection's term list.
    pub terms: Vec<usize>,
    /// Midpoint of the marked segment carrying the bumps.
    pub marked_midpoint: Vec<f64>,
    /// Certified clearance radius (rational lower bound).
    pub clearance_radius: f64,
}

/// Full audit record of a synthesis run.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct SynthesisRecord {
    pub group: String,
    pub entries: Vec<ProvenanceEntry>,
}

/// A synthesized connection together with its audit record.
#[derive(Clone, Debug)]
pub struct Synthesis {
    pub connection: Connection,
    pub provenance: SynthesisRecord,
}

/// Writes the audit record as pretty-printed structured text.
pub fn write_synthesis_record(path: &Path, record: &SynthesisRecord) -> Result<(), SynthError> {
    let text = serde_json::to_string_pretty(record)
        .map_err(|e| SynthError::BadRecord(e.to_string()))?;
    fs::write(path, text + "\n").map_err(|e| SynthError::BadRecord(e.to_string()))
}

/// Reads an audit record written by `write_synthesis_record`.
pub fn read_synthesis_record(path: &Path) -> Result<SynthesisRecord, SynthError> {
    let text = fs::read_to_string(path).map_err(|e| SynthError::BadRecord(e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| SynthError::BadRecord(e.to_string()))
}

/// Exact check that a bump's support ball stays strictly inside the
/// clearance ball of a marked segment: distance from the stored
/// midpoint plus the support radius stays below the rational lower
/// bound of the clearance radius.
pub fn bump_inside_clearance(term: &BumpTerm, mark: &MarkedSegment) -> bool {
    let clearance = rational_sqrt_lower_bound(&mark.clearance_sq);
    let radius = match Rat::from_float(term.radius) {
        Some(r) => r,
        None => return false,
    };
    if radius >= clearance {
        return false;
    }
    let mid = mark.midpoint();
    let mut dist_sq = Rat::from_integer(0.into());
    for (c, m) in term.center.iter().zip(mid.coords()) {
        let c = match Rat::from_float(*c) {
            Some(c) => c,
            None => return false,
        };
        let d = c - m;
        dist_sq += &d * &d;
    }
    let margin = clearance - radius;
    dist_sq < &margin * &margin
}

fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().expect("clearance radius fits in f64 range")
}

/// Builds the connection realizing `targets` as the generator
/// holonomies of `dec`, with a full audit record.
pub fn synthesize_full(
    dec: &Decomposition,
    targets: &[GroupElement],
    spec: LieGroupSpec,
    min_clearance: f64,
) -> Result<Synthesis, SynthError> {
    if targets.len() != dec.generator_count() {
        return Err(SynthError::WrongTargetCount {
            expected: dec.generator_count(),
            got: targets.len(),
        });
    }
    for (index, target) in targets.iter().enumerate() {
        if target.spec() != spec {
            return Err(SynthError::Gauge(crate::gauge::GaugeError::SpecMismatch {
                expected: spec,
                got: target.spec(),
            }));
        }
        let residual = target.residual();
        if residual > super::logmap::LOG_RESIDUAL_TOL {
            return Err(SynthError::TargetOffGroup { index, residual });
        }
    }
    if !is_independent(dec) {
        return Err(SynthError::NotIndependent);
    }

    let dim = dec.dim();
    let mut terms: Vec<BumpTerm> = Vec::new();
    let mut entries = Vec::with_capacity(targets.len());
    for (i, (target, mark)) in targets.iter().zip(dec.marked_segments()).enumerate() {
        let clearance = rat_to_f64(&rational_sqrt_lower_bound(&mark.clearance_sq));
        if clearance < min_clearance {
            return Err(SynthError::ClearanceTooSmall {
                segment: i,
                radius: clearance,
                minimum: min_clearance,
            });
        }
        let log = log_map(target)?;
        let mut entry = ProvenanceEntry {
            generator: (i + 1) as u32,
            target: target.to_complex_rows(),
            terms: Vec::new(),
            marked_midpoint: mark.midpoint().to_f64(),
            clearance_radius: clearance,
        };
        if log.is_zero() {
            entries.push(entry);
            continue;
        }

        // Unit traversal direction of the marked segment.
        let start = mark.start.to_f64();
        let end = mark.end.to_f64();
        let mut direction: Vec<f64> = end.iter().zip(&start).map(|(e, s)| e - s).collect();
        let len = direction.iter().map(|d| d * d).sum::<f64>().sqrt();
        for d in &mut direction {
            *d /= len;
        }
        let (axis, u_mu) = direction
            .iter()
            .copied()
            .enumerate()
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .expect("dimension is at least 2");

        // Integration error falls like the fourth power of the
        // substeps crossing a support, so radii are pushed to the
        // largest values the clearance ball allows.
        let support = SUPPORT_FRACTION * clearance;
        let midpoint = &entry.marked_midpoint;
        match log {
            LogResult::One(x) => {
                entry.terms.push(terms.len());
                terms.push(BumpTerm {
                    center: midpoint.clone(),
                    radius: support,
                    axis,
                    coeff: x.scale(1.0 / (u_mu * support * BUMP_CHORD_INTEGRAL)),
                });
            }
            LogResult::Two(x1, x2) => {
                // Two half-size bumps packed along the segment, almost
                // touching at the midpoint; the traversal meets the x1
                // bump first, matching the factor order under right
                // accumulation.
                let small = (support / 2.0) * (1.0 - 1e-9);
                let chord = u_mu * small * BUMP_CHORD_INTEGRAL;
                for (x, side) in [(x1, -1.0), (x2, 1.0)] {
                    let center: Vec<f64> = midpoint
                        .iter()
                        .zip(&direction)
                        .map(|(m, u)| m + side * 0.5 * support * u)
                        .collect();
                    entry.terms.push(terms.len());
                    terms.push(BumpTerm {
                        center,
                        radius: small,
                        axis,
                        coeff: x.scale(1.0 / chord),
                    });
                }
            }
        }
        entries.push(entry);
    }

    let connection = Connection::new(spec, dim, terms)?;
    Ok(Synthesis {
        connection,
        provenance: SynthesisRecord {
            group: spec.to_string(),
            entries,
        },
    })
}

/// Builds the connection realizing `targets` as the generator
/// holonomies of `dec`.
pub fn synthesize(
    dec: &Decomposition,
    targets: &[GroupElement],
    spec: LieGroupSpec,
) -> Result<Connection, SynthError> {
    Ok(synthesize_full(dec, targets, spec, DEFAULT_MIN_CLEARANCE)?.connection)
}
