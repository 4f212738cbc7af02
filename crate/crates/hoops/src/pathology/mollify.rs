//! Local flattening of curve families. Each mollifier point (p, d)
//! multiplies every curve by the profile cutoff ((x - p)/d), which is
//! exactly zero on |x - p| <= d/2 and exactly one beyond |x - p| >= d.
//! Applying the same factors to a whole family preserves every
//! pointwise coincidence between its members, which is what lets the
//! deformation keep intersection patterns while killing derivatives
//! at chosen points.

use super::curve::{GraphCurve, MollifierFactor};
use super::profile::BumpProfile;
use super::PathologyError;

/// Where to flatten and how wide, plus the cutoff sup constants that
/// drive the deformation's C^n cost.
#[derive(Clone, Debug)]
pub struct MollifierSpec {
    points: Vec<(f64, f64)>,
    hat_bounds: Vec<f64>,
}

impl MollifierSpec {
    /// Validates widths and keeps the supports |x - p| < d pairwise
    /// disjoint so each point's deformation stays independent.
    pub fn new(points: Vec<(f64, f64)>, profile: &BumpProfile) -> Result<Self, PathologyError> {
        for (i, &(p, d)) in points.iter().enumerate() {
            if !(p.is_finite() && d.is_finite() && d > 0.0) {
                return Err(PathologyError::BadDomain(format!(
                    "mollifier {i} needs a finite point and positive width, got ({p}, {d})"
                )));
            }
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                let (pi, di) = points[i];
                let (pj, dj) = points[j];
                if (pi - pj).abs() < di + dj {
                    return Err(PathologyError::MollifierOverlap { first: i, second: j });
                }
            }
        }
        let hat_bounds = (0..=profile.flatness())
            .map(|n| profile.cutoff_sup(n))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MollifierSpec { points, hat_bounds })
    }

    /// An empty spec: mollification becomes the identity.
    pub fn empty(profile: &BumpProfile) -> Self {
        Self::new(Vec::new(), profile).expect("no points, nothing to clash")
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    /// Sup of the n-th cutoff derivative before width scaling.
    pub fn hat_bound(&self, n: usize) -> Result<f64, PathologyError> {
        self.hat_bounds
            .get(n)
            .copied()
            .ok_or(PathologyError::OrderBeyondOracle {
                order: n,
                max: self.hat_bounds.len().saturating_sub(1),
            })
    }
}

/// Multiplies every curve by the spec's cutoff factors. All curves
/// must share one domain, and every point must lie inside it.
pub fn mollify(
    curves: &[GraphCurve],
    spec: &MollifierSpec,
) -> Result<Vec<GraphCurve>, PathologyError> {
    if let Some(first) = curves.first() {
        let t_end = first.t_end();
        for (i, c) in curves.iter().enumerate() {
            if c.t_end() != t_end {
                return Err(PathologyError::BadDomain(format!(
                    "curve {i} lives on [0, {}], the family on [0, {t_end}]",
                    c.t_end()
                )));
            }
        }
        for &(p, _) in spec.points() {
            if !(0.0..=t_end).contains(&p) {
                return Err(PathologyError::BadDomain(format!(
                    "mollifier point {p} is outside [0, {t_end}]"
                )));
            }
        }
    }
    Ok(curves
        .iter()
        .map(|c| {
            let mut out = c.clone();
            for &(center, width) in spec.points() {
                out.push_mollifier(MollifierFactor { center, width });
            }
            out
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathology::counterexample::counterexample_family;
    use crate::pathology::distance::cn_distance;

    #[test]
    fn empty_spec_leaves_curves_unchanged() {
        let fam = counterexample_family(3).unwrap();
        let spec = MollifierSpec::empty(fam.profile());
        let out = mollify(fam.curves(), &spec).unwrap();
        for (before, after) in fam.curves().iter().zip(&out) {
            assert!(after.mollifiers().is_empty());
            for k in 0..=32 {
                let x = k as f64 / 32.0;
                assert_eq!(before.value(x), after.value(x));
            }
        }
    }

    #[test]
    fn cores_flatten_exactly_and_remote_points_are_untouched() {
        let fam = counterexample_family(3).unwrap();
        let spec = MollifierSpec::new(vec![(0.375, 0.05)], fam.profile()).unwrap();
        let out = mollify(&fam.curves()[..1], &spec).unwrap();
        let f = fam.curve(0);
        let g = &out[0];
        // Sample strictly inside the core: its exact edge is a
        // coin-flip under rounding of (x - p) / width.
        for k in 0..=10 {
            let x = 0.3525 + 0.045 * k as f64 / 10.0;
            assert_eq!(g.value(x), 0.0, "core kills the value at {x}");
        }
        assert_eq!(g.derivative(2, 0.38).unwrap(), 0.0, "core kills derivatives");
        for &x in &[0.2, 0.3, 0.44, 0.7, 0.9] {
            assert_eq!(g.value(x), f.value(x), "outside the support at {x}");
        }
    }

    #[test]
    fn overlapping_supports_are_rejected_by_index() {
        let fam = counterexample_family(2).unwrap();
        let result = MollifierSpec::new(vec![(0.3, 0.05), (0.36, 0.02)], fam.profile());
        assert!(matches!(
            result,
            Err(PathologyError::MollifierOverlap { first: 0, second: 1 })
        ));
        // Touching supports are fine: both factors are one there.
        assert!(MollifierSpec::new(vec![(0.3, 0.05), (0.37, 0.02)], fam.profile()).is_ok());
    }

    #[test]
    fn family_coincidences_survive_mollification() {
        // On even levels the first two cascade curves agree; shared
        // factors keep them agreeing after the deformation.
        let fam = counterexample_family(4).unwrap();
        let spec = MollifierSpec::new(vec![(0.375, 0.04)], fam.profile()).unwrap();
        let out = mollify(fam.curves(), &spec).unwrap();
        for k in 0..=20 {
            let x = 0.25 + 0.25 * k as f64 / 20.0;
            assert_eq!(fam.curve(0).value(x), fam.curve(1).value(x));
            assert_eq!(out[0].value(x), out[1].value(x), "coincidence kept at {x}");
        }
    }

    #[test]
    fn small_window_deformations_stay_cn_close() {
        // Flattening near the origin only disturbs the curve inside
        // the window, and the C^N cost is controlled by the measured
        // window seminorm epsilon times 2^(2^(N+1)).
        let fam = counterexample_family(4).unwrap();
        let f = fam.curve(0);
        let order = 3usize;
        let delta = 0.25;
        let spec = MollifierSpec::new(vec![(0.0, delta)], fam.profile()).unwrap();
        let g = &mollify(&fam.curves()[..1], &spec).unwrap()[0];
        // Window seminorm: max derivative magnitude over |x| <= delta.
        let mut eps = 0.0f64;
        for k in 0..=4096 {
            let x = delta * k as f64 / 4096.0;
            let d = f.derivatives(order, x).unwrap();
            for v in d {
                eps = eps.max(v.abs());
            }
        }
        let bound = 2.0f64.powi(1 << (order + 1)) * eps;
        let dist = cn_distance(f, g, order, 2048).unwrap();
        assert!(dist > 0.0, "the deformation does change the curve");
        assert!(
            dist <= bound,
            "distance {dist} exceeds 2^(2^{}) * {eps} = {bound}",
            order + 1
        );
    }

    #[test]
    fn points_outside_the_domain_are_rejected() {
        let fam = counterexample_family(2).unwrap();
        let spec = MollifierSpec::new(vec![(1.5, 0.1)], fam.profile()).unwrap();
        assert!(matches!(
            mollify(fam.curves(), &spec),
            Err(PathologyError::BadDomain(_))
        ));
        assert!(MollifierSpec::new(vec![(0.4, -0.1)], fam.profile()).is_err());
    }
}
