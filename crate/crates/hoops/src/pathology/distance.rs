//! Sampled C^n seminorm distances between graph curves. The distance
//! is the max over derivative orders 0..=n of the sup difference,
//! measured on a grid that refines every structural interval of both
//! curves, so no bump hides between sample points.

use super::curve::GraphCurve;
use super::PathologyError;

/// Distance value plus a half-density check of the same quantity. A
/// coarse value close to the fine one signals the grid is dense
/// enough; a gap means bumps are slipping between samples.
#[derive(Clone, Copy, Debug)]
pub struct CnDistanceReport {
    pub value: f64,
    pub coarse_value: f64,
    pub samples: usize,
}

/// Merged, per-interval refined grid over the common domain. Each
/// structural window of either curve gets at least `parts_floor`
/// subintervals, and long windows get enough to match the requested
/// uniform density. Doubling `density` nests the coarse grid in the
/// fine one.
fn merged_grid(f: &GraphCurve, g: &GraphCurve, density: usize) -> Vec<f64> {
    let mut cuts = f.breakpoints();
    cuts.extend(g.breakpoints());
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let t_end = f.t_end();
    let mut grid = Vec::new();
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let parts = ((density as f64 * (hi - lo) / t_end).ceil() as usize).max(2);
        for j in 0..parts {
            grid.push(lo + (hi - lo) * j as f64 / parts as f64);
        }
    }
    grid.push(t_end);
    grid
}

fn max_over_grid(
    f: &GraphCurve,
    g: &GraphCurve,
    order: usize,
    grid: &[f64],
) -> Result<f64, PathologyError> {
    let mut worst = 0.0f64;
    for &x in grid {
        let df = f.derivatives(order, x)?;
        let dg = g.derivatives(order, x)?;
        for n in 0..=order {
            worst = worst.max((df[n] - dg[n]).abs());
        }
    }
    Ok(worst)
}

/// Sampled C^order distance with the half-density refinement check.
pub fn cn_distance_report(
    f: &GraphCurve,
    g: &GraphCurve,
    order: usize,
    samples: usize,
) -> Result<CnDistanceReport, PathologyError> {
    if f.t_end() != g.t_end() {
        return Err(PathologyError::BadDomain(format!(
            "curves live on different domains [0, {}] and [0, {}]",
            f.t_end(),
            g.t_end()
        )));
    }
    let max = f.max_order().min(g.max_order());
    if order > max {
        return Err(PathologyError::OrderBeyondOracle { order, max });
    }
    if samples < 2 {
        return Err(PathologyError::BadSampleCount(samples));
    }
    // The fine grid doubles the coarse per-window subdivision, so the
    // coarse grid is nested and its value can only be smaller.
    let coarse = merged_grid(f, g, samples / 2);
    let fine = merged_grid(f, g, samples);
    let coarse_value = max_over_grid(f, g, order, &coarse)?;
    let value = max_over_grid(f, g, order, &fine)?.max(coarse_value);
    Ok(CnDistanceReport {
        value,
        coarse_value,
        samples,
    })
}

/// Sampled C^order distance between two curves on the same domain.
pub fn cn_distance(
    f: &GraphCurve,
    g: &GraphCurve,
    order: usize,
    samples: usize,
) -> Result<f64, PathologyError> {
    Ok(cn_distance_report(f, g, order, samples)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathology::counterexample::counterexample_family;
    use crate::pathology::curve::DyadicAtom;
    use crate::pathology::profile::BumpProfile;

    fn cascade(scales: &[f64]) -> GraphCurve {
        let atoms = scales
            .iter()
            .enumerate()
            .map(|(i, &s)| DyadicAtom {
                level: i as u32 + 1,
                scale: s,
            })
            .collect();
        GraphCurve::new(BumpProfile::with_default_flatness(), 1.0, atoms).unwrap()
    }

    #[test]
    fn distance_to_self_is_zero() {
        let f = cascade(&[0.5, -0.25, 0.125]);
        for order in 0..=4 {
            assert_eq!(cn_distance(&f, &f, order, 256).unwrap(), 0.0);
        }
    }

    #[test]
    fn distance_is_symmetric() {
        let f = cascade(&[0.5, -0.25]);
        let g = cascade(&[0.3, 0.1, -0.05]);
        for order in 0..=3 {
            assert_eq!(
                cn_distance(&f, &g, order, 300).unwrap(),
                cn_distance(&g, &f, order, 300).unwrap()
            );
        }
    }

    #[test]
    fn triangle_inequality_holds_on_a_shared_grid() {
        let f = cascade(&[0.5, -0.25, 0.1]);
        let g = cascade(&[0.2, 0.2, -0.1]);
        let h = cascade(&[-0.3, 0.05, 0.3]);
        for order in 0..=3 {
            let fg = cn_distance(&f, &g, order, 400).unwrap();
            let gh = cn_distance(&g, &h, order, 400).unwrap();
            let fh = cn_distance(&f, &h, order, 400).unwrap();
            assert!(
                fh <= fg + gh + 1e-12,
                "order {order}: {fh} > {fg} + {gh}"
            );
        }
    }

    #[test]
    fn truncation_gap_matches_the_single_atom_seminorm() {
        // Dropping the deepest level leaves exactly one atom of
        // difference, whose C^n sup is weight * 2^(level n) * a_n.
        let fam = counterexample_family(3).unwrap();
        let f = fam.curve(0);
        let g = f.truncated(2);
        let level = 3u32;
        let weight = fam.level_weight(level).unwrap();
        let order = 3usize;
        let profile = f.profile();
        let mut closed_form = 0.0f64;
        for n in 0..=order {
            let sup = weight
                * 2.0f64.powi((level as usize * n) as i32)
                * profile.sup_constant(n).unwrap();
            closed_form = closed_form.max(sup);
        }
        let sampled = cn_distance(f, &g, order, 2048).unwrap();
        assert!(
            sampled <= closed_form * (1.0 + 1e-9),
            "sampled {sampled} exceeds the exact sup {closed_form}"
        );
        assert!(
            sampled >= 0.97 * closed_form,
            "sampled {sampled} misses the exact sup {closed_form}"
        );
    }

    #[test]
    fn refinement_report_nests_the_coarse_grid() {
        let f = cascade(&[0.4, -0.2, 0.1, -0.05]);
        let g = cascade(&[0.4]);
        let report = cn_distance_report(&f, &g, 2, 512).unwrap();
        assert!(report.coarse_value <= report.value);
        assert!(report.value > 0.0);
        assert_eq!(report.samples, 512);
        // At these densities the two passes agree closely.
        assert!(
            report.value - report.coarse_value < 0.05 * report.value,
            "coarse {} vs fine {}",
            report.coarse_value,
            report.value
        );
    }

    #[test]
    fn mismatched_domains_and_orders_are_rejected() {
        let f = cascade(&[0.5]);
        let short = GraphCurve::new(BumpProfile::with_default_flatness(), 0.5, vec![]).unwrap();
        assert!(matches!(
            cn_distance(&f, &short, 1, 100),
            Err(PathologyError::BadDomain(_))
        ));
        assert!(matches!(
            cn_distance(&f, &f, 99, 100),
            Err(PathologyError::OrderBeyondOracle { .. })
        ));
        assert!(matches!(
            cn_distance(&f, &f, 1, 1),
            Err(PathologyError::BadSampleCount(1))
        ));
    }
}
