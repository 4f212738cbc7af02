//! Principal logarithms for the supported groups. Every result is
//! verified by exponentiating back; SL(2,R) elements outside the
//! exponential image come back as a certified two-factor product
//!
//! ```text
//! g = exp(X1) exp(X2)
//! ```
//!
//! with X1 a rotation generator and X2 symmetric, from the polar
//! decomposition.

use nalgebra::{Matrix2, Rotation3, UnitQuaternion};

use crate::gauge::{AlgebraElement, GroupElement};

use super::SynthError;

/// Inputs must sit on their group to within this residual.
pub const LOG_RESIDUAL_TOL: f64 = 1e-10;

/// A matrix logarithm: one factor when the element is in the
/// exponential image, two factors otherwise.
#[derive(Clone, Debug)]
pub enum LogResult {
    One(AlgebraElement),
    Two(AlgebraElement, AlgebraElement),
}

impl LogResult {
    pub fn factors(&self) -> Vec<AlgebraElement> {
        match self {
            LogResult::One(x) => vec![*x],
            LogResult::Two(a, b) => vec![*a, *b],
        }
    }

    /// Multiplies the exponentials of the factors back together.
    pub fn exp(&self) -> GroupElement {
        match self {
            LogResult::One(x) => x.exp(),
            LogResult::Two(a, b) => a.exp().mul(&b.exp()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.factors().iter().all(|x| x.norm() == 0.0)
    }
}

/// theta/sin(theta) with the removable singularity filled in.
fn angle_over_sin(theta: f64) -> f64 {
    if theta.abs() < 1e-6 {
        1.0 + theta * theta / 6.0
    } else {
        theta / theta.sin()
    }
}

/// s/sinh(s) with the removable singularity filled in.
fn arc_over_sinh(s: f64) -> f64 {
    if s.abs() < 1e-6 {
        1.0 - s * s / 6.0
    } else {
        s / s.sinh()
    }
}

/// Logarithm of a symmetric positive-definite determinant-one matrix,
/// which is always in the exponential image.
fn log_spd_det_one(p: &Matrix2<f64>) -> Matrix2<f64> {
    let d = p.trace() * 0.5;
    let s = if d <= 1.0 { 0.0 } else { (d + (d * d - 1.0).sqrt()).ln() };
    (p - Matrix2::identity() * d) * arc_over_sinh(s)
}

fn log_sl2r(m: &Matrix2<f64>) -> LogResult {
    let d = m.trace() * 0.5;
    let near_minus_identity = (m + Matrix2::identity()).norm() < 1e-12;
    if near_minus_identity {
        // -I is the elliptic half-turn.
        return LogResult::One(AlgebraElement::sl2r_from_components(
            0.0,
            -std::f64::consts::PI,
            std::f64::consts::PI,
        ));
    }
    if d >= 1.0 {
        // Hyperbolic or parabolic: both eigenvalue branches are real
        // and positive, one real logarithm exists.
        let s = (d + (d * d - 1.0).max(0.0).sqrt()).ln();
        let x = (m - Matrix2::identity() * d) * arc_over_sinh(s);
        return LogResult::One(AlgebraElement::sl2r(x).expect("trace cancels exactly"));
    }
    if d > -1.0 + 1e-4 {
        // Elliptic, away from the half-turn where the one-factor
        // formula loses digits.
        let theta = d.acos();
        let x = (m - Matrix2::identity() * d) * angle_over_sin(theta);
        return LogResult::One(AlgebraElement::sl2r(x).expect("trace cancels exactly"));
    }
    // Trace at or below -2 (or just above, too close to the half-turn
    // for the direct formula): outside the exponential image in
    // general, so split off the polar rotation. For symmetric
    // positive-definite s_mat with unit determinant, the square root
    // is (s_mat + I)/sqrt(tr + 2).
    let s_mat = m.transpose() * m;
    let p = (s_mat + Matrix2::identity()) / (s_mat.trace() + 2.0).sqrt();
    let p_inv = p.try_inverse().expect("positive-definite matrices invert");
    let q = m * p_inv;
    let theta = q[(1, 0)].atan2(q[(0, 0)]);
    let x1 = AlgebraElement::sl2r_from_components(0.0, -theta, theta);
    let x2 = AlgebraElement::sl2r(log_spd_det_one(&p)).expect("symmetric log is traceless");
    LogResult::Two(x1, x2)
}

/// Principal-branch logarithm, verified by exponentiating back to
/// within 1e-10 of the input.
pub fn log_map(g: &GroupElement) -> Result<LogResult, SynthError> {
    let residual = g.residual();
    if residual > LOG_RESIDUAL_TOL {
        return Err(SynthError::OffGroup { residual });
    }
    let result = match g {
        GroupElement::U1(z) => LogResult::One(AlgebraElement::u1(z.im.atan2(z.re))),
        GroupElement::Su2(u) => {
            // Quaternion components of the unitary.
            let w = (u[(0, 0)].re + u[(1, 1)].re) * 0.5;
            let qz = (u[(0, 0)].im - u[(1, 1)].im) * 0.5;
            let qy = (u[(0, 1)].re - u[(1, 0)].re) * 0.5;
            let qx = (u[(0, 1)].im + u[(1, 0)].im) * 0.5;
            let v = (qx * qx + qy * qy + qz * qz).sqrt();
            let theta = v.atan2(w);
            let (a, b, c) = if v < 1e-12 {
                if w > 0.0 {
                    (qz, qy, qx)
                } else {
                    // Half turn with an unresolvable axis: any axis
                    // exponentiates to -I.
                    (std::f64::consts::PI, 0.0, 0.0)
                }
            } else {
                (theta * qz / v, theta * qy / v, theta * qx / v)
            };
            LogResult::One(AlgebraElement::su2_from_components(a, b, c))
        }
        GroupElement::So3(r) => {
            let rot = Rotation3::from_matrix_unchecked(*r);
            let q = UnitQuaternion::from_rotation_matrix(&rot);
            let scaled = q.scaled_axis();
            LogResult::One(AlgebraElement::so3_from_axis([
                scaled[0], scaled[1], scaled[2],
            ]))
        }
        GroupElement::Sl2r(m) => log_sl2r(m),
    };
    let check = result.exp().distance(g);
    if check > 1e-10 {
        return Err(SynthError::LogFailed(check));
    }
    Ok(result)
}
