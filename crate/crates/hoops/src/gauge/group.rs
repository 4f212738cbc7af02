//! Matrix Lie groups and algebras: U(1), SU(2), SO(3), SL(2,R).
//! Exponentials are closed-form. For a traceless 2x2 matrix X the
//! identity X^2 = -det(X) I collapses the exponential series to
//!
//! ```text
//! exp X = c(det X) I + s(det X) X
//! ```
//!
//! with c(q) = cos sqrt(q) continued to cosh for q < 0 and s its
//! sine counterpart; SO(3) uses the rotation formula with the same
//! scalar helpers.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix2, Matrix3};
use num_complex::Complex64;

use super::GaugeError;

/// Which structure group a computation runs in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LieGroupSpec {
    U1,
    Su2,
    So3,
    Sl2r,
}

impl LieGroupSpec {
    pub fn matrix_dim(self) -> usize {
        match self {
            LieGroupSpec::U1 => 1,
            LieGroupSpec::Su2 | LieGroupSpec::Sl2r => 2,
            LieGroupSpec::So3 => 3,
        }
    }

    /// True for the groups whose commutators never all vanish; these
    /// admit no nontrivial word identities.
    pub fn is_nonsolvable(self) -> bool {
        !matches!(self, LieGroupSpec::U1)
    }
}

impl fmt::Display for LieGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            LieGroupSpec::U1 => "u1",
            LieGroupSpec::Su2 => "su2",
            LieGroupSpec::So3 => "so3",
            LieGroupSpec::Sl2r => "sl2r",
        };
        write!(f, "{name}")
    }
}

impl FromStr for LieGroupSpec {
    type Err = GaugeError;

    fn from_str(s: &str) -> Result<Self, GaugeError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "u1" => Ok(LieGroupSpec::U1),
            "su2" => Ok(LieGroupSpec::Su2),
            "so3" => Ok(LieGroupSpec::So3),
            "sl2r" => Ok(LieGroupSpec::Sl2r),
            other => Err(GaugeError::UnknownGroup(other.to_string())),
        }
    }
}

/// An element of one of the supported groups.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum GroupElement {
    U1(Complex64),
    Su2(Matrix2<Complex64>),
    So3(Matrix3<f64>),
    Sl2r(Matrix2<f64>),
}

/// An element of the corresponding Lie algebra. The U(1) value t
/// stands for the imaginary matrix (i t).
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum AlgebraElement {
    U1(f64),
    Su2(Matrix2<Complex64>),
    So3(Matrix3<f64>),
    Sl2r(Matrix2<f64>),
}

/// Largest singular value of a 2x2 complex matrix, closed form.
pub(crate) fn operator_norm_2c(m: &Matrix2<Complex64>) -> f64 {
    let g = m.adjoint() * m;
    let tr = g[(0, 0)].re + g[(1, 1)].re;
    let det = (g[(0, 0)] * g[(1, 1)] - g[(0, 1)] * g[(1, 0)]).re;
    let disc = (tr * tr - 4.0 * det).max(0.0);
    (0.5 * (tr + disc.sqrt())).max(0.0).sqrt()
}

/// Largest singular value of a 2x2 real matrix, closed form.
pub(crate) fn operator_norm_2r(m: &Matrix2<f64>) -> f64 {
    let g = m.transpose() * m;
    let tr = g[(0, 0)] + g[(1, 1)];
    let det = g[(0, 0)] * g[(1, 1)] - g[(0, 1)] * g[(1, 0)];
    let disc = (tr * tr - 4.0 * det).max(0.0);
    (0.5 * (tr + disc.sqrt())).max(0.0).sqrt()
}

/// Largest singular value of a 3x3 real matrix.
pub(crate) fn operator_norm_3r(m: &Matrix3<f64>) -> f64 {
    crate::words::witness::operator_norm3(m)
}

/// cos(sqrt q), continued through q = 0 to cosh(sqrt -q).
fn wave_c(q: f64) -> f64 {
    if q.abs() < 1e-6 {
        1.0 - q / 2.0 + q * q / 24.0 - q * q * q / 720.0
    } else if q > 0.0 {
        q.sqrt().cos()
    } else {
        (-q).sqrt().cosh()
    }
}

/// sin(sqrt q)/sqrt q, continued through q = 0 to sinh(sqrt -q)/sqrt -q.
fn wave_s(q: f64) -> f64 {
    if q.abs() < 1e-6 {
        1.0 - q / 6.0 + q * q / 120.0 - q * q * q / 5040.0
    } else if q > 0.0 {
        let t = q.sqrt();
        t.sin() / t
    } else {
        let t = (-q).sqrt();
        t.sinh() / t
    }
}

/// (1 - cos sqrt q)/q, continued through q = 0.
fn wave_v(q: f64) -> f64 {
    if q.abs() < 1e-6 {
        0.5 - q / 24.0 + q * q / 720.0
    } else {
        (1.0 - wave_c(q)) / q
    }
}

impl GroupElement {
    pub fn identity(spec: LieGroupSpec) -> Self {
        match spec {
            LieGroupSpec::U1 => GroupElement::U1(Complex64::new(1.0, 0.0)),
            LieGroupSpec::Su2 => GroupElement::Su2(Matrix2::identity()),
            LieGroupSpec::So3 => GroupElement::So3(Matrix3::identity()),
            LieGroupSpec::Sl2r => GroupElement::Sl2r(Matrix2::identity()),
        }
    }

    pub fn spec(&self) -> LieGroupSpec {
        match self {
            GroupElement::U1(_) => LieGroupSpec::U1,
            GroupElement::Su2(_) => LieGroupSpec::Su2,
            GroupElement::So3(_) => LieGroupSpec::So3,
            GroupElement::Sl2r(_) => LieGroupSpec::Sl2r,
        }
    }

    pub fn mul(&self, rhs: &GroupElement) -> GroupElement {
        match (self, rhs) {
            (GroupElement::U1(a), GroupElement::U1(b)) => GroupElement::U1(a * b),
            (GroupElement::Su2(a), GroupElement::Su2(b)) => GroupElement::Su2(a * b),
            (GroupElement::So3(a), GroupElement::So3(b)) => GroupElement::So3(a * b),
            (GroupElement::Sl2r(a), GroupElement::Sl2r(b)) => GroupElement::Sl2r(a * b),
            _ => panic!("group elements of different specs multiplied"),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        match self {
            GroupElement::U1(z) => GroupElement::U1(z.finv()),
            GroupElement::Su2(u) => GroupElement::Su2(u.adjoint()),
            GroupElement::So3(r) => GroupElement::So3(r.transpose()),
            GroupElement::Sl2r(m) => {
                let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
                let adj = Matrix2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)]);
                GroupElement::Sl2r(adj / det)
            }
        }
    }

    /// Operator-norm distance between two elements of the same group.
    pub fn distance(&self, rhs: &GroupElement) -> f64 {
        match (self, rhs) {
            (GroupElement::U1(a), GroupElement::U1(b)) => (a - b).norm(),
            (GroupElement::Su2(a), GroupElement::Su2(b)) => operator_norm_2c(&(a - b)),
            (GroupElement::So3(a), GroupElement::So3(b)) => operator_norm_3r(&(a - b)),
            (GroupElement::Sl2r(a), GroupElement::Sl2r(b)) => operator_norm_2r(&(a - b)),
            _ => panic!("group elements of different specs compared"),
        }
    }

    pub fn distance_to_identity(&self) -> f64 {
        self.distance(&GroupElement::identity(self.spec()))
    }

    /// Operator norm of the matrix itself; 1 for the compact groups,
    /// possibly large in SL(2,R).
    pub fn operator_norm(&self) -> f64 {
        match self {
            GroupElement::U1(z) => z.norm(),
            GroupElement::Su2(m) => operator_norm_2c(m),
            GroupElement::So3(m) => operator_norm_3r(m),
            GroupElement::Sl2r(m) => operator_norm_2r(m),
        }
    }

    /// Group-membership defect: unitarity or orthogonality residual
    /// combined with the determinant residual, or |det - 1| for SL(2,R).
    pub fn residual(&self) -> f64 {
        match self {
            GroupElement::U1(z) => (z.norm() - 1.0).abs(),
            GroupElement::Su2(u) => {
                let unitary = operator_norm_2c(&(u.adjoint() * u - Matrix2::identity()));
                let det = u.determinant();
                unitary.max((det - Complex64::new(1.0, 0.0)).norm())
            }
            GroupElement::So3(r) => {
                let orth = operator_norm_3r(&(r.transpose() * r - Matrix3::identity()));
                orth.max((r.determinant() - 1.0).abs())
            }
            GroupElement::Sl2r(m) => (m.determinant() - 1.0).abs(),
        }
    }

    /// Nearest group element, for matrices that drifted slightly off
    /// the group during integration.
    pub fn project(&self) -> GroupElement {
        match self {
            GroupElement::U1(z) => {
                let n = z.norm();
                if n > 0.0 {
                    GroupElement::U1(z / n)
                } else {
                    GroupElement::identity(LieGroupSpec::U1)
                }
            }
            GroupElement::Su2(u) => {
                let mut y = *u;
                for _ in 0..3 {
                    match y.adjoint().try_inverse() {
                        Some(inv) => y = (y + inv) * Complex64::new(0.5, 0.0),
                        None => break,
                    }
                }
                let det = y.determinant();
                let root = det.sqrt();
                if root.norm() > 0.0 {
                    y /= root;
                }
                GroupElement::Su2(y)
            }
            GroupElement::So3(r) => {
                let mut y = *r;
                for _ in 0..3 {
                    match y.transpose().try_inverse() {
                        Some(inv) => y = (y + inv) * 0.5,
                        None => break,
                    }
                }
                GroupElement::So3(y)
            }
            GroupElement::Sl2r(m) => {
                let det = m.determinant();
                if det > 0.0 {
                    GroupElement::Sl2r(m / det.sqrt())
                } else {
                    *self
                }
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        self.to_complex_rows()
            .iter()
            .flatten()
            .all(|e| e[0].is_finite() && e[1].is_finite())
    }

    /// The matrix as rows of [re, im] entries, uniformly for all groups.
    pub fn to_complex_rows(&self) -> Vec<Vec<[f64; 2]>> {
        match self {
            GroupElement::U1(z) => vec![vec![[z.re, z.im]]],
            GroupElement::Su2(m) => (0..2)
                .map(|i| (0..2).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                .collect(),
            GroupElement::So3(m) => (0..3)
                .map(|i| (0..3).map(|j| [m[(i, j)], 0.0]).collect())
                .collect(),
            GroupElement::Sl2r(m) => (0..2)
                .map(|i| (0..2).map(|j| [m[(i, j)], 0.0]).collect())
                .collect(),
        }
    }
}

impl AlgebraElement {
    pub fn zero(spec: LieGroupSpec) -> Self {
        match spec {
            LieGroupSpec::U1 => AlgebraElement::U1(0.0),
            LieGroupSpec::Su2 => AlgebraElement::Su2(Matrix2::zeros()),
            LieGroupSpec::So3 => AlgebraElement::So3(Matrix3::zeros()),
            LieGroupSpec::Sl2r => AlgebraElement::Sl2r(Matrix2::zeros()),
        }
    }

    pub fn spec(&self) -> LieGroupSpec {
        match self {
            AlgebraElement::U1(_) => LieGroupSpec::U1,
            AlgebraElement::Su2(_) => LieGroupSpec::Su2,
            AlgebraElement::So3(_) => LieGroupSpec::So3,
            AlgebraElement::Sl2r(_) => LieGroupSpec::Sl2r,
        }
    }

    /// The U(1) algebra element (i t).
    pub fn u1(t: f64) -> Self {
        AlgebraElement::U1(t)
    }

    /// Validates skew-Hermitian tracelessness, then symmetrizes away
    /// rounding so the closed-form exponential is exact on structure.
    pub fn su2(m: Matrix2<Complex64>) -> Result<Self, GaugeError> {
        let defect = operator_norm_2c(&(m + m.adjoint())).max(m.trace().norm());
        if defect > 1e-9 {
            return Err(GaugeError::NotInAlgebra(format!(
                "su2 needs a traceless skew-Hermitian matrix (defect {defect:.2e})"
            )));
        }
        let skew = (m - m.adjoint()) * Complex64::new(0.5, 0.0);
        let trace_part = skew.trace() * Complex64::new(0.5, 0.0);
        Ok(AlgebraElement::Su2(
            skew - Matrix2::identity() * trace_part,
        ))
    }

    pub fn su2_from_components(a: f64, b: f64, c: f64) -> Self {
        AlgebraElement::Su2(Matrix2::new(
            Complex64::new(0.0, a),
            Complex64::new(b, c),
            Complex64::new(-b, c),
            Complex64::new(0.0, -a),
        ))
    }

    pub fn so3(m: Matrix3<f64>) -> Result<Self, GaugeError> {
        let defect = operator_norm_3r(&(m + m.transpose()));
        if defect > 1e-9 {
            return Err(GaugeError::NotInAlgebra(format!(
                "so3 needs a skew-symmetric matrix (defect {defect:.2e})"
            )));
        }
        Ok(AlgebraElement::So3((m - m.transpose()) * 0.5))
    }

    /// The rotation generator with the given axis vector.
    pub fn so3_from_axis(w: [f64; 3]) -> Self {
        AlgebraElement::So3(Matrix3::new(
            0.0, -w[2], w[1], //
            w[2], 0.0, -w[0], //
            -w[1], w[0], 0.0,
        ))
    }

    pub fn sl2r(m: Matrix2<f64>) -> Result<Self, GaugeError> {
        let defect = m.trace().abs();
        if defect > 1e-9 {
            return Err(GaugeError::NotInAlgebra(format!(
                "sl2r needs a traceless matrix (defect {defect:.2e})"
            )));
        }
        let half_trace = m.trace() * 0.5;
        Ok(AlgebraElement::Sl2r(m - Matrix2::identity() * half_trace))
    }

    pub fn sl2r_from_components(a: f64, b: f64, c: f64) -> Self {
        AlgebraElement::Sl2r(Matrix2::new(a, b, c, -a))
    }

    pub fn scale(&self, k: f64) -> AlgebraElement {
        match self {
            AlgebraElement::U1(t) => AlgebraElement::U1(t * k),
            AlgebraElement::Su2(m) => AlgebraElement::Su2(m * Complex64::new(k, 0.0)),
            AlgebraElement::So3(m) => AlgebraElement::So3(m * k),
            AlgebraElement::Sl2r(m) => AlgebraElement::Sl2r(m * k),
        }
    }

    pub fn add(&self, rhs: &AlgebraElement) -> AlgebraElement {
        match (self, rhs) {
            (AlgebraElement::U1(a), AlgebraElement::U1(b)) => AlgebraElement::U1(a + b),
            (AlgebraElement::Su2(a), AlgebraElement::Su2(b)) => AlgebraElement::Su2(a + b),
            (AlgebraElement::So3(a), AlgebraElement::So3(b)) => AlgebraElement::So3(a + b),
            (AlgebraElement::Sl2r(a), AlgebraElement::Sl2r(b)) => AlgebraElement::Sl2r(a + b),
            _ => panic!("algebra elements of different specs added"),
        }
    }

    pub fn norm(&self) -> f64 {
        match self {
            AlgebraElement::U1(t) => t.abs(),
            AlgebraElement::Su2(m) => operator_norm_2c(m),
            AlgebraElement::So3(m) => operator_norm_3r(m),
            AlgebraElement::Sl2r(m) => operator_norm_2r(m),
        }
    }

    /// Closed-form exponential into the group.
    pub fn exp(&self) -> GroupElement {
        match self {
            AlgebraElement::U1(t) => GroupElement::U1(Complex64::new(t.cos(), t.sin())),
            AlgebraElement::Su2(m) => {
                let q = m.determinant().re;
                GroupElement::Su2(
                    Matrix2::identity() * Complex64::new(wave_c(q), 0.0)
                        + m * Complex64::new(wave_s(q), 0.0),
                )
            }
            AlgebraElement::So3(m) => {
                let q = m[(2, 1)] * m[(2, 1)] + m[(0, 2)] * m[(0, 2)] + m[(1, 0)] * m[(1, 0)];
                GroupElement::So3(
                    Matrix3::identity() + m * wave_s(q) + m * m * wave_v(q),
                )
            }
            AlgebraElement::Sl2r(m) => {
                let q = m.determinant();
                GroupElement::Sl2r(Matrix2::identity() * wave_c(q) + m * wave_s(q))
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        self.to_complex_rows()
            .iter()
            .flatten()
            .all(|e| e[0].is_finite() && e[1].is_finite())
    }

    pub fn to_complex_rows(&self) -> Vec<Vec<[f64; 2]>> {
        match self {
            AlgebraElement::U1(t) => vec![vec![[0.0, *t]]],
            AlgebraElement::Su2(m) => (0..2)
                .map(|i| (0..2).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                .collect(),
            AlgebraElement::So3(m) => (0..3)
                .map(|i| (0..3).map(|j| [m[(i, j)], 0.0]).collect())
                .collect(),
            AlgebraElement::Sl2r(m) => (0..2)
                .map(|i| (0..2).map(|j| [m[(i, j)], 0.0]).collect())
                .collect(),
        }
    }
}
