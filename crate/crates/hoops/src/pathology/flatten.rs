//! Discretization of graph curves into exact-rational polylines, the
//! bridge from the smooth pathology constructions to the segment
//! arrangement and word machinery. Vertices snap to a fixed dyadic
//! grid, so curves that agree at shared sample points produce
//! identical vertices and their retraced pieces become shared edges.

use num_bigint::BigInt;
use num_traits::One;

use crate::geom::{Point, PolyLoop, PolyPath, Rat};

use super::counterexample::CounterexampleFamily;
use super::curve::GraphCurve;
use super::PathologyError;

/// Snap denominator: 2^48 splits the difference between exactness of
/// small dyadic sample coordinates and keeping numerators in i64.
const SNAP_BITS: u32 = 48;

fn snap(v: f64) -> Rat {
    let scaled = (v * 2.0f64.powi(SNAP_BITS as i32)).round();
    Rat::new(
        BigInt::from(scaled as i64),
        BigInt::one() << SNAP_BITS as usize,
    )
}

/// Shared sample grid: every structural window of the curve split
/// into `resolution` equal parts. The grid is a deterministic
/// function of the breakpoints, so curves with equal breakpoints
/// sample at bitwise-identical abscissas.
fn sample_grid(curve: &GraphCurve, resolution: usize) -> Vec<f64> {
    let cuts = curve.breakpoints();
    let mut grid = Vec::new();
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        for j in 0..resolution {
            grid.push(lo + (hi - lo) * j as f64 / resolution as f64);
        }
    }
    grid.push(curve.t_end());
    grid
}

fn flatten_vertices(curve: &GraphCurve, resolution: usize) -> Result<Vec<Point>, PathologyError> {
    if resolution < 2 {
        return Err(PathologyError::BadResolution(resolution));
    }
    let mut verts: Vec<Point> = Vec::new();
    for x in sample_grid(curve, resolution) {
        let p = Point::new(vec![snap(x), snap(curve.value(x))]);
        // Snapping can collapse very close samples; drop exact repeats.
        if verts.last() != Some(&p) {
            verts.push(p);
        }
    }
    Ok(verts)
}

/// Chord-samples the curve's graph into a polyline on the snap grid.
pub fn flatten_to_pl(curve: &GraphCurve, resolution: usize) -> Result<PolyPath, PathologyError> {
    Ok(PolyPath::new(flatten_vertices(curve, resolution)?)?)
}

/// Flattens the four-curve family's composite loop. All four curves
/// share one sample grid, so the pieces that coincide as functions
/// coincide as vertex runs and retrace each other exactly.
pub fn flatten_loop(
    family: &CounterexampleFamily,
    resolution: usize,
) -> Result<PolyLoop, PathologyError> {
    let flats: Vec<Vec<Point>> = family
        .curves()
        .iter()
        .map(|c| flatten_vertices(c, resolution))
        .collect::<Result<_, _>>()?;
    let [f1, f2, f3, f4] = <[Vec<Point>; 4]>::try_from(flats).expect("four curves");
    let mut verts = f1;
    verts.extend(f2.into_iter().rev().skip(1));
    verts.extend(f3.into_iter().skip(1));
    verts.extend(f4.into_iter().rev().skip(1));
    Ok(PolyLoop::new(verts)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathology::counterexample::counterexample_family;
    use crate::pathology::profile::BumpProfile;
    use crate::words::{is_identity, GroupClass};

    #[test]
    fn the_zero_curve_flattens_to_a_straight_run() {
        let zero = GraphCurve::zero(BumpProfile::with_default_flatness(), 1.0).unwrap();
        let path = flatten_to_pl(&zero, 2).unwrap();
        for v in path.vertices() {
            assert_eq!(v.coords()[1], Rat::from(BigInt::from(0)));
        }
        assert_eq!(path.vertices().first().unwrap().coords()[0], Rat::from(BigInt::from(0)));
        assert_eq!(path.vertices().last().unwrap().coords()[0], Rat::from(BigInt::from(1)));
    }

    #[test]
    fn mirror_curves_flatten_to_mirror_vertices() {
        let fam = counterexample_family(3).unwrap();
        let up = flatten_to_pl(fam.curve(0), 4).unwrap();
        let down = flatten_to_pl(fam.curve(2), 4).unwrap();
        assert_eq!(up.vertices().len(), down.vertices().len());
        for (a, b) in up.vertices().iter().zip(down.vertices()) {
            assert_eq!(a.coords()[0], b.coords()[0]);
            assert_eq!(a.coords()[1], -b.coords()[1].clone(), "y mirrors exactly");
        }
    }

    #[test]
    fn matching_levels_share_identical_vertices() {
        // Even levels carry the same atom in the first two curves, so
        // their flattenings agree vertex for vertex there.
        let fam = counterexample_family(2).unwrap();
        let a = flatten_to_pl(fam.curve(0), 6).unwrap();
        let b = flatten_to_pl(fam.curve(1), 6).unwrap();
        let quarter = Rat::new(BigInt::from(1), BigInt::from(4));
        let half = Rat::new(BigInt::from(1), BigInt::from(2));
        for (va, vb) in a.vertices().iter().zip(b.vertices()) {
            assert_eq!(va.coords()[0], vb.coords()[0], "shared sample grid");
            let x = &va.coords()[0];
            if *x >= quarter && *x <= half {
                assert_eq!(va, vb, "level-two vertices coincide exactly");
            } else if *x > half {
                assert_eq!(
                    va.coords()[1],
                    -vb.coords()[1].clone(),
                    "level-one vertices mirror"
                );
            }
        }
    }

    #[test]
    fn resolution_below_two_is_rejected() {
        let fam = counterexample_family(2).unwrap();
        assert!(matches!(
            flatten_to_pl(fam.curve(0), 1),
            Err(PathologyError::BadResolution(1))
        ));
    }

    #[test]
    fn flattened_loop_is_closed_and_balanced() {
        let fam = counterexample_family(2).unwrap();
        let lp = flatten_loop(&fam, 4).unwrap();
        let verts = lp.vertices();
        assert_eq!(verts.first(), verts.last(), "the loop closes");
        let origin = Point::from_integers(&[0, 0]);
        assert_eq!(verts[0], origin, "based at the origin");
    }

    #[test]
    fn flattened_cascade_loop_is_abelian_trivial_but_word_nontrivial() {
        // The composite loop retraces every arc once in each direction
        // but interleaved, so the exponent vector vanishes while the
        // reduced word survives: invisible to abelian groups, visible
        // to the free-group test.
        let fam = counterexample_family(2).unwrap();
        let lp = flatten_loop(&fam, 4).unwrap();
        let dec = crate::geom::decompose(&lp);
        let word = dec.word().reduce();
        assert!(
            word.exponent_vector().is_zero(),
            "every generator count balances"
        );
        assert!(
            !word.symbols().is_empty(),
            "the reduced word is not the empty word"
        );
        assert!(
            is_identity(&word, &GroupClass::AbelianConnectedLie).unwrap(),
            "trivial over abelian groups"
        );
        assert!(
            !is_identity(&word, &GroupClass::NonsolvableConnectedLie).unwrap(),
            "nontrivial over nonsolvable groups"
        );
    }
}
