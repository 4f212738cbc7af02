//! The four-curve cascade whose composite loop is invisible to every
//! connection on the plane yet combinatorially nontrivial. Each curve
//! stacks one bump per dyadic level with weights 1/(2^n a_n), where
//! a_n is the profile's order-n sup constant, so the cascade converges
//! in every C^n seminorm while the levels stay holonomy-active.

use super::curve::{DyadicAtom, GraphCurve, GraphPath};
use super::profile::{BumpProfile, DEFAULT_FLATNESS};
use super::PathologyError;

/// Deepest supported cascade level. Beyond this the level weights
/// underflow any f64 signal the transport integrator could see.
pub const MAX_CASCADE_DEPTH: u32 = 24;

/// The four graph curves f1..f4 over [0, 1] plus their composite loop
/// c1 . c2^-1 . c3 . c4^-1.
#[derive(Clone, Debug)]
pub struct CounterexampleFamily {
    curves: [GraphCurve; 4],
    loop_path: GraphPath,
    depth: u32,
}

impl CounterexampleFamily {
    /// Curves in order f1, f2, f3, f4.
    pub fn curves(&self) -> &[GraphCurve; 4] {
        &self.curves
    }

    pub fn curve(&self, i: usize) -> &GraphCurve {
        &self.curves[i]
    }

    /// The composite loop, ready for holonomy transport.
    pub fn loop_path(&self) -> &GraphPath {
        &self.loop_path
    }

    /// Number of dyadic levels carrying a bump.
    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn profile(&self) -> &BumpProfile {
        self.curves[0].profile()
    }

    /// The level-n weight 1/(2^n a_n) shared by all four curves.
    pub fn level_weight(&self, level: u32) -> Result<f64, PathologyError> {
        cascade_weight(self.profile(), level)
    }
}

fn cascade_weight(profile: &BumpProfile, level: u32) -> Result<f64, PathologyError> {
    let a_n = profile.sup_constant(level as usize)?;
    Ok(2.0f64.powi(-(level as i32)) / a_n)
}

/// Builds the depth-level family. The flatness order grows with the
/// depth so every level weight is meaningful: weights divide by a_n,
/// and a_n is only an oracle up to the flatness order.
pub fn counterexample_family(depth: u32) -> Result<CounterexampleFamily, PathologyError> {
    if depth == 0 || depth > MAX_CASCADE_DEPTH {
        return Err(PathologyError::LevelOutOfRange {
            level: depth,
            max: MAX_CASCADE_DEPTH,
        });
    }
    let flatness = DEFAULT_FLATNESS.max(depth as usize);
    let profile = BumpProfile::new(flatness)?;

    // Level signs: f1 takes +1 on every level, f2 alternates with
    // (-1)^n, and f3, f4 are the exact negations. On even levels
    // f1 = f2 and f3 = f4; on odd levels f1 = f4 and f2 = f3. In the
    // composite loop the equal pairs traverse with opposite
    // orientations, so every planar line integral cancels level by
    // level, whatever the connection.
    let mut atoms1 = Vec::with_capacity(depth as usize);
    let mut atoms2 = Vec::with_capacity(depth as usize);
    for level in 1..=depth {
        let weight = cascade_weight(&profile, level)?;
        atoms1.push(DyadicAtom {
            level,
            scale: weight,
        });
        let sign = if level % 2 == 0 { 1.0 } else { -1.0 };
        atoms2.push(DyadicAtom {
            level,
            scale: sign * weight,
        });
    }
    let f1 = GraphCurve::new(profile.clone(), 1.0, atoms1)?;
    let f2 = GraphCurve::new(profile, 1.0, atoms2)?;
    let f3 = f1.negated();
    let f4 = f2.negated();

    let loop_path = GraphPath::composed(vec![
        (f1.clone(), false),
        (f2.clone(), true),
        (f3.clone(), false),
        (f4.clone(), true),
    ])?;

    Ok(CounterexampleFamily {
        curves: [f1, f2, f3, f4],
        loop_path,
        depth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauge::{random_connection, transport, LieGroupSpec, TransportPath};

    #[test]
    fn level_scales_pair_up_with_opposite_orientations() {
        let fam = counterexample_family(5).unwrap();
        let [f1, f2, f3, f4] = fam.curves();
        for level in 1..=5u32 {
            let idx = (level - 1) as usize;
            let s = [
                f1.atoms()[idx].scale,
                f2.atoms()[idx].scale,
                f3.atoms()[idx].scale,
                f4.atoms()[idx].scale,
            ];
            let w = fam.level_weight(level).unwrap();
            assert!(w > 0.0 && w < 1.0, "weights shrink below one");
            let mut sorted = s;
            sorted.sort_by(f64::total_cmp);
            assert_eq!(
                sorted,
                [-w, -w, w, w],
                "level {level} carries two plus and two minus copies"
            );
            if level % 2 == 0 {
                assert_eq!(s[0], s[1], "even levels: f1 matches f2");
                assert_eq!(s[2], s[3], "even levels: f3 matches f4");
            } else {
                assert_eq!(s[0], s[3], "odd levels: f1 matches f4");
                assert_eq!(s[1], s[2], "odd levels: f2 matches f3");
            }
        }
    }

    #[test]
    fn weights_shrink_fast_enough_for_every_seminorm() {
        // 2^(n-1) a_(n-1) / (2^n a_n) -> the order-(n-1) seminorm of
        // the level-n atom is weight * 2^(n(n-1)) a_(n-1), which must
        // drop with n for convergence of the tail in C^(n-1).
        let fam = counterexample_family(8).unwrap();
        for level in 2..=8u32 {
            let w = fam.level_weight(level).unwrap();
            let prev = fam.level_weight(level - 1).unwrap();
            assert!(w < prev, "weights decrease with depth");
        }
    }

    #[test]
    fn shallow_levels_are_silent_below_the_deepest_support() {
        let fam = counterexample_family(4).unwrap();
        let cut = 2.0f64.powi(-4);
        for i in 0..4 {
            for k in 0..=16 {
                let x = cut * k as f64 / 16.0;
                assert_eq!(
                    fam.curve(i).value(x),
                    0.0,
                    "curve {i} vanishes on the tail [0, 2^-depth]"
                );
            }
        }
    }

    #[test]
    fn mirror_curves_negate_exactly() {
        let fam = counterexample_family(6).unwrap();
        for k in 0..=64 {
            let x = k as f64 / 64.0;
            assert_eq!(fam.curve(2).value(x), -fam.curve(0).value(x));
            assert_eq!(fam.curve(3).value(x), -fam.curve(1).value(x));
        }
    }

    #[test]
    fn composite_loop_closes_at_the_origin() {
        let fam = counterexample_family(3).unwrap();
        assert_eq!(fam.loop_path().start(), (0.0, 0.0));
        assert_eq!(fam.loop_path().end(), (0.0, 0.0));
        assert!(fam.loop_path().piece_count() >= 16);
    }

    #[test]
    fn every_phase_connection_reads_the_loop_as_trivial() {
        // The pairing of equal curves with opposite orientations makes
        // the composite loop's phase vanish exactly for every abelian
        // connection; the integrator only adds its own step error.
        let fam = counterexample_family(6).unwrap();
        let region = [(-0.2, 1.2), (-0.3, 0.3)];
        for seed in 0..100u64 {
            let conn = random_connection(LieGroupSpec::U1, &region, 3, seed).unwrap();
            let hol = transport(&conn, fam.loop_path(), 64).unwrap();
            let dist = hol.matrix.distance_to_identity();
            assert!(
                dist < 1e-6,
                "seed {seed}: phase {dist} should vanish up to step error"
            );
        }
    }

    #[test]
    fn depth_bounds_are_enforced() {
        assert!(matches!(
            counterexample_family(0),
            Err(PathologyError::LevelOutOfRange { level: 0, .. })
        ));
        assert!(matches!(
            counterexample_family(MAX_CASCADE_DEPTH + 1),
            Err(PathologyError::LevelOutOfRange { .. })
        ));
        assert!(counterexample_family(MAX_CASCADE_DEPTH).is_ok());
    }
}
