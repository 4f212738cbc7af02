//! Planar curves given as graphs t -> (t, f(t)) where f is a finite
//! sum of scaled bump atoms on dyadic intervals times optional cutoff
//! factors. Every derivative up to the profile's flatness order has
//! an exact oracle, which is what the fine-topology experiments need.

use std::fs;
use std::io::Write as IoWrite;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::gauge::TransportPath;

use super::profile::BumpProfile;
use super::PathologyError;

/// One scaled bump supported on the dyadic interval
/// (2^-level, 2^-level+1], evaluating to scale * beta(2^level x - 1).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DyadicAtom {
    pub level: u32,
    pub scale: f64,
}

impl DyadicAtom {
    pub fn support(&self) -> (f64, f64) {
        let hi = 2.0f64.powi(1 - self.level as i32);
        (hi / 2.0, hi)
    }
}

/// A multiplicative cutoff factor: the profile's cutoff evaluated at
/// (x - center) / width, flattening the curve on the core
/// |x - center| <= width / 2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MollifierFactor {
    pub center: f64,
    pub width: f64,
}

/// The graph curve t -> (t, f(t)) over [0, t_end].
#[derive(Clone, Debug)]
pub struct GraphCurve {
    profile: BumpProfile,
    t_end: f64,
    atoms: Vec<DyadicAtom>,
    mollifiers: Vec<MollifierFactor>,
}

impl GraphCurve {
    pub fn new(
        profile: BumpProfile,
        t_end: f64,
        atoms: Vec<DyadicAtom>,
    ) -> Result<Self, PathologyError> {
        if !(t_end.is_finite() && t_end > 0.0) {
            return Err(PathologyError::BadDomain(format!(
                "domain end {t_end} must be positive and finite"
            )));
        }
        for atom in &atoms {
            if atom.level == 0 {
                return Err(PathologyError::BadDomain(
                    "atom level 0 would overhang the unit interval".into(),
                ));
            }
            if !atom.scale.is_finite() {
                return Err(PathologyError::BadDomain("atom scale must be finite".into()));
            }
            let (_, hi) = atom.support();
            if hi > t_end {
                return Err(PathologyError::BadDomain(format!(
                    "atom on level {} overhangs the domain end {t_end}",
                    atom.level
                )));
            }
        }
        Ok(GraphCurve {
            profile,
            t_end,
            atoms,
            mollifiers: Vec::new(),
        })
    }

    /// The zero curve over [0, t_end].
    pub fn zero(profile: BumpProfile, t_end: f64) -> Result<Self, PathologyError> {
        Self::new(profile, t_end, Vec::new())
    }

    pub fn profile(&self) -> &BumpProfile {
        &self.profile
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn atoms(&self) -> &[DyadicAtom] {
        &self.atoms
    }

    pub fn mollifiers(&self) -> &[MollifierFactor] {
        &self.mollifiers
    }

    /// Highest derivative order the oracle certifies.
    pub fn max_order(&self) -> usize {
        self.profile.flatness()
    }

    /// Same curve with the atom scales negated.
    pub fn negated(&self) -> Self {
        let mut out = self.clone();
        for atom in &mut out.atoms {
            atom.scale = -atom.scale;
        }
        out
    }

    /// Same curve with the atoms above `level` removed.
    pub fn truncated(&self, level: u32) -> Self {
        let mut out = self.clone();
        out.atoms.retain(|a| a.level <= level);
        out
    }

    /// Appends a multiplicative cutoff factor. Used by mollification;
    /// validation of factor layouts happens there.
    pub(super) fn push_mollifier(&mut self, factor: MollifierFactor) {
        self.mollifiers.push(factor);
    }

    /// Derivatives 0..=order of the atom sum at x.
    fn atom_derivs(&self, order: usize, x: f64) -> Result<Vec<f64>, PathologyError> {
        let mut out = vec![0.0; order + 1];
        for atom in &self.atoms {
            let (lo, hi) = atom.support();
            if x <= lo || x > hi {
                continue;
            }
            let inner = 2.0f64.powi(atom.level as i32) * x - 1.0;
            for (n, slot) in out.iter_mut().enumerate() {
                let chain = 2.0f64.powi((atom.level as usize * n) as i32);
                *slot += atom.scale * chain * self.profile.bump_deriv(n, inner)?;
            }
        }
        Ok(out)
    }

    /// Derivatives 0..=order of one cutoff factor at x.
    fn mollifier_derivs(
        &self,
        factor: &MollifierFactor,
        order: usize,
        x: f64,
    ) -> Result<Vec<f64>, PathologyError> {
        let inner = (x - factor.center) / factor.width;
        let mut out = vec![0.0; order + 1];
        for (n, slot) in out.iter_mut().enumerate() {
            *slot = self.profile.cutoff_deriv(n, inner)? / factor.width.powi(n as i32);
        }
        Ok(out)
    }

    /// Derivatives 0..=order of f at x, folding the factors together
    /// with the product rule.
    pub fn derivatives(&self, order: usize, x: f64) -> Result<Vec<f64>, PathologyError> {
        if order > self.max_order() {
            return Err(PathologyError::OrderBeyondOracle {
                order,
                max: self.max_order(),
            });
        }
        let mut acc = self.atom_derivs(order, x)?;
        for factor in &self.mollifiers {
            let g = self.mollifier_derivs(factor, order, x)?;
            let mut next = vec![0.0; order + 1];
            for (n, slot) in next.iter_mut().enumerate() {
                let mut binom = 1.0;
                for k in 0..=n {
                    *slot += binom * acc[k] * g[n - k];
                    binom *= (n - k) as f64 / (k + 1) as f64;
                }
            }
            acc = next;
        }
        Ok(acc)
    }

    /// f(x).
    pub fn value(&self, x: f64) -> f64 {
        self.derivatives(0, x).expect("order zero is always available")[0]
    }

    /// n-th derivative of f at x.
    pub fn derivative(&self, n: usize, x: f64) -> Result<f64, PathologyError> {
        Ok(self.derivatives(n, x)?[n])
    }

    /// Sorted structural breakpoints: domain ends, atom interval ends,
    /// and mollifier junctions. Between consecutive breakpoints the
    /// curve is one fixed polynomial expression.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts = vec![0.0, self.t_end];
        for atom in &self.atoms {
            let (lo, hi) = atom.support();
            pts.push(lo);
            pts.push(hi);
        }
        for m in &self.mollifiers {
            for r in [m.width, m.width / 2.0] {
                for s in [-1.0, 1.0] {
                    let x = m.center + s * r;
                    if x > 0.0 && x < self.t_end {
                        pts.push(x);
                    }
                }
            }
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }

    /// Writes sampled values and derivatives as CSV rows
    /// `x, f, f', ..., f^(order)` for plotting.
    pub fn write_csv(
        &self,
        path: &Path,
        order: usize,
        samples: usize,
    ) -> Result<(), PathologyError> {
        if samples < 2 {
            return Err(PathologyError::BadSampleCount(samples));
        }
        if order > self.max_order() {
            return Err(PathologyError::OrderBeyondOracle {
                order,
                max: self.max_order(),
            });
        }
        let mut out = String::from("x");
        for n in 0..=order {
            out.push_str(&format!(",f{n}"));
        }
        out.push('\n');
        for i in 0..=samples {
            let x = self.t_end * i as f64 / samples as f64;
            let d = self.derivatives(order, x)?;
            out.push_str(&format!("{x}"));
            for v in d {
                out.push_str(&format!(",{v}"));
            }
            out.push('\n');
        }
        let mut file =
            fs::File::create(path).map_err(|e| PathologyError::BadRecord(e.to_string()))?;
        file.write_all(out.as_bytes())
            .map_err(|e| PathologyError::BadRecord(e.to_string()))
    }
}

/// File form of one atom: split sign keeps scales human-readable.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct AtomRecord {
    pub level: u32,
    pub sign: i8,
    pub scale: f64,
}

/// File form of one cutoff factor.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct MollifierRecord {
    pub center: f64,
    pub width: f64,
}

/// File form of a graph curve.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct CurveRecord {
    pub flatness: usize,
    pub t_end: f64,
    pub atoms: Vec<AtomRecord>,
    pub mollifiers: Vec<MollifierRecord>,
}

impl GraphCurve {
    pub fn to_record(&self) -> CurveRecord {
        CurveRecord {
            flatness: self.profile.flatness(),
            t_end: self.t_end,
            atoms: self
                .atoms
                .iter()
                .map(|a| AtomRecord {
                    level: a.level,
                    sign: if a.scale < 0.0 { -1 } else { 1 },
                    scale: a.scale.abs(),
                })
                .collect(),
            mollifiers: self
                .mollifiers
                .iter()
                .map(|m| MollifierRecord {
                    center: m.center,
                    width: m.width,
                })
                .collect(),
        }
    }

    pub fn from_record(record: &CurveRecord) -> Result<Self, PathologyError> {
        let profile = BumpProfile::new(record.flatness)?;
        let atoms = record
            .atoms
            .iter()
            .map(|a| {
                if a.sign != 1 && a.sign != -1 {
                    return Err(PathologyError::BadRecord(format!(
                        "atom sign must be 1 or -1, got {}",
                        a.sign
                    )));
                }
                Ok(DyadicAtom {
                    level: a.level,
                    scale: a.sign as f64 * a.scale,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut curve = GraphCurve::new(profile, record.t_end, atoms)?;
        for m in &record.mollifiers {
            if !(m.width.is_finite() && m.width > 0.0) {
                return Err(PathologyError::BadRecord(format!(
                    "mollifier width {} must be positive",
                    m.width
                )));
            }
            curve.push_mollifier(MollifierFactor {
                center: m.center,
                width: m.width,
            });
        }
        Ok(curve)
    }
}

/// Writes a curve record as pretty-printed structured text.
pub fn write_curve(path: &Path, curve: &GraphCurve) -> Result<(), PathologyError> {
    let text = serde_json::to_string_pretty(&curve.to_record())
        .map_err(|e| PathologyError::BadRecord(e.to_string()))?;
    fs::write(path, text + "\n").map_err(|e| PathologyError::BadRecord(e.to_string()))
}

/// Reads a curve record written by `write_curve`.
pub fn read_curve(path: &Path) -> Result<GraphCurve, PathologyError> {
    let text = fs::read_to_string(path).map_err(|e| PathologyError::BadRecord(e.to_string()))?;
    let record: CurveRecord =
        serde_json::from_str(&text).map_err(|e| PathologyError::BadRecord(e.to_string()))?;
    GraphCurve::from_record(&record)
}

/// A planar path built from graph-curve sections, each traversed
/// forward or reversed, smooth between structural breakpoints. This
/// is the bridge from curves to holonomy transport.
#[derive(Clone, Debug)]
pub struct GraphPath {
    parts: Vec<(GraphCurve, bool)>,
    /// piece index -> (part, interval) with per-part interval tables.
    intervals: Vec<Vec<(f64, f64)>>,
    pieces: Vec<(usize, usize)>,
}

impl GraphPath {
    /// A single forward section.
    pub fn single(curve: GraphCurve) -> Self {
        Self::composed(vec![(curve, false)]).expect("one section always chains")
    }

    /// Chains sections end to end; `true` marks a reversed traversal.
    /// Consecutive endpoints must agree exactly.
    pub fn composed(parts: Vec<(GraphCurve, bool)>) -> Result<Self, PathologyError> {
        if parts.is_empty() {
            return Err(PathologyError::BadDomain("empty path".into()));
        }
        let mut prev_end: Option<(f64, f64)> = None;
        for (curve, reversed) in &parts {
            let (sx, ex) = if *reversed {
                (curves_end(curve), (0.0, curve.value(0.0)))
            } else {
                ((0.0, curve.value(0.0)), curves_end(curve))
            };
            if let Some(p) = prev_end {
                if p != sx {
                    return Err(PathologyError::BadDomain(format!(
                        "section junction {:?} does not meet {:?}",
                        p, sx
                    )));
                }
            }
            prev_end = Some(ex);
        }
        let intervals: Vec<Vec<(f64, f64)>> = parts
            .iter()
            .map(|(c, _)| {
                let b = c.breakpoints();
                b.windows(2).map(|w| (w[0], w[1])).collect()
            })
            .collect();
        let mut pieces = Vec::new();
        for (part, ivs) in intervals.iter().enumerate() {
            let reversed = parts[part].1;
            for i in 0..ivs.len() {
                let i = if reversed { ivs.len() - 1 - i } else { i };
                pieces.push((part, i));
            }
        }
        Ok(GraphPath {
            parts,
            intervals,
            pieces,
        })
    }

    pub fn start(&self) -> (f64, f64) {
        let (curve, reversed) = &self.parts[0];
        if *reversed {
            curves_end(curve)
        } else {
            (0.0, curve.value(0.0))
        }
    }

    pub fn end(&self) -> (f64, f64) {
        let (curve, reversed) = &self.parts[self.parts.len() - 1];
        if *reversed {
            (0.0, curve.value(0.0))
        } else {
            curves_end(curve)
        }
    }
}

fn curves_end(curve: &GraphCurve) -> (f64, f64) {
    (curve.t_end(), curve.value(curve.t_end()))
}

impl TransportPath for GraphPath {
    fn dim(&self) -> usize {
        2
    }

    fn piece_count(&self) -> usize {
        self.pieces.len()
    }

    fn eval_piece(&self, piece: usize, t: f64, pos: &mut [f64], vel: &mut [f64]) {
        let (part, interval) = self.pieces[piece];
        let (curve, reversed) = &self.parts[part];
        let (lo, hi) = self.intervals[part][interval];
        let (x, dx) = if *reversed {
            (hi - (hi - lo) * t, lo - hi)
        } else {
            (lo + (hi - lo) * t, hi - lo)
        };
        let d = curve
            .derivatives(1, x)
            .expect("order one is within every oracle");
        pos[0] = x;
        pos[1] = d[0];
        vel[0] = dx;
        vel[1] = d[1] * dx;
    }
}
