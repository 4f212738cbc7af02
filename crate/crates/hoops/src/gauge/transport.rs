//! Parallel transport along piecewise paths. The frame satisfies
//!
//! ```text
//! U'(t) = U(t) A(x(t))[x'(t)],    U(0) = I
//! ```
//!
//! integrated by classical fourth-order Runge-Kutta with a fixed
//! number of steps per piece. Each call also runs the half-step
//! refinement; the refined matrix is returned and the distance
//! between the two runs is reported as the error estimate, which
//! bounds the coarser run's deviation and is therefore a
//! conservative bound for the returned matrix.

use nalgebra::SMatrix;
use num_complex::Complex64;

use crate::geom::{Decomposition, PolyLoop, PolyPath};

use super::connection::Connection;
use super::group::{AlgebraElement, GroupElement, LieGroupSpec};
use super::GaugeError;

/// Steps per piece used when no explicit count is requested.
pub const DEFAULT_TRANSPORT_STEPS: usize = 64;

/// A piecewise-smooth curve that transport can integrate over. Each
/// piece is parameterized over [0, 1] with its own velocity scale.
pub trait TransportPath {
    fn dim(&self) -> usize;
    fn piece_count(&self) -> usize;
    /// Writes position and velocity at parameter `t` of piece `piece`.
    fn eval_piece(&self, piece: usize, t: f64, pos: &mut [f64], vel: &mut [f64]);
}

/// A polyline as a transport path, one piece per segment.
pub struct PlTransport {
    dim: usize,
    verts: Vec<Vec<f64>>,
}

impl PlTransport {
    pub fn from_path(path: &PolyPath) -> Self {
        PlTransport {
            dim: path.dim(),
            verts: path.vertices().iter().map(|p| p.to_f64()).collect(),
        }
    }

    pub fn from_loop(l: &PolyLoop) -> Self {
        let verts = if l.is_constant() {
            vec![l.basepoint().to_f64()]
        } else {
            l.vertices().iter().map(|p| p.to_f64()).collect()
        };
        PlTransport { dim: l.dim(), verts }
    }
}

impl TransportPath for PlTransport {
    fn dim(&self) -> usize {
        self.dim
    }

    fn piece_count(&self) -> usize {
        self.verts.len().saturating_sub(1)
    }

    fn eval_piece(&self, piece: usize, t: f64, pos: &mut [f64], vel: &mut [f64]) {
        let a = &self.verts[piece];
        let b = &self.verts[piece + 1];
        for j in 0..self.dim {
            vel[j] = b[j] - a[j];
            pos[j] = a[j] + t * vel[j];
        }
    }
}

/// A transported frame: the group element, a step-halving error
/// estimate, and the group-membership residual after projection.
#[derive(Clone, Debug)]
pub struct Holonomy {
    pub matrix: GroupElement,
    pub error: f64,
    pub residual: f64,
}

/// Operator-norm distance between two holonomies of the same group.
pub fn group_distance(a: &Holonomy, b: &Holonomy) -> Result<f64, GaugeError> {
    if a.matrix.spec() != b.matrix.spec() {
        return Err(GaugeError::SpecMismatch {
            expected: a.matrix.spec(),
            got: b.matrix.spec(),
        });
    }
    Ok(a.matrix.distance(&b.matrix))
}

fn rk4_run<T, const D: usize>(
    conn: &Connection,
    path: &(impl TransportPath + ?Sized),
    steps: usize,
    embed: impl Fn(&AlgebraElement) -> SMatrix<T, D, D>,
) -> SMatrix<T, D, D>
where
    T: nalgebra::ComplexField<RealField = f64> + Copy,
{
    let dim = conn.dim();
    let mut pos = vec![0.0; dim];
    let mut vel = vec![0.0; dim];
    let sample = |piece: usize, t: f64, pos: &mut Vec<f64>, vel: &mut Vec<f64>| {
        path.eval_piece(piece, t, pos, vel);
        conn.evaluate(pos, vel)
    };
    let mut u: SMatrix<T, D, D> = SMatrix::identity();
    let h = 1.0 / steps as f64;
    let h_t = T::from_real(h);
    let half_t = T::from_real(0.5 * h);
    let two_t = T::from_real(2.0);
    let sixth_t = T::from_real(h / 6.0);
    for piece in 0..path.piece_count() {
        for k in 0..steps {
            let t0 = k as f64 * h;
            let b0 = embed(&sample(piece, t0, &mut pos, &mut vel));
            let bm = embed(&sample(piece, t0 + 0.5 * h, &mut pos, &mut vel));
            let b1 = embed(&sample(piece, t0 + h, &mut pos, &mut vel));
            let k1 = u * b0;
            let k2 = (u + k1 * half_t) * bm;
            let k3 = (u + k2 * half_t) * bm;
            let k4 = (u + k3 * h_t) * b1;
            u += (k1 + k2 * two_t + k3 * two_t + k4) * sixth_t;
        }
    }
    u
}

fn raw_transport(
    conn: &Connection,
    path: &(impl TransportPath + ?Sized),
    steps: usize,
) -> GroupElement {
    match conn.spec() {
        LieGroupSpec::U1 => {
            let m = rk4_run::<Complex64, 1>(conn, path, steps, |a| match a {
                AlgebraElement::U1(t) => SMatrix::<Complex64, 1, 1>::new(Complex64::new(0.0, *t)),
                _ => unreachable!("connection is validated to one algebra"),
            });
            GroupElement::U1(m[(0, 0)])
        }
        LieGroupSpec::Su2 => {
            let m = rk4_run::<Complex64, 2>(conn, path, steps, |a| match a {
                AlgebraElement::Su2(x) => *x,
                _ => unreachable!("connection is validated to one algebra"),
            });
            GroupElement::Su2(m)
        }
        LieGroupSpec::So3 => {
            let m = rk4_run::<f64, 3>(conn, path, steps, |a| match a {
                AlgebraElement::So3(x) => *x,
                _ => unreachable!("connection is validated to one algebra"),
            });
            GroupElement::So3(m)
        }
        LieGroupSpec::Sl2r => {
            let m = rk4_run::<f64, 2>(conn, path, steps, |a| match a {
                AlgebraElement::Sl2r(x) => *x,
                _ => unreachable!("connection is validated to one algebra"),
            });
            GroupElement::Sl2r(m)
        }
    }
}

/// Transports the identity frame along a path and returns the result
/// with its error estimate and membership residual.
pub fn transport(
    conn: &Connection,
    path: &(impl TransportPath + ?Sized),
    steps: usize,
) -> Result<Holonomy, GaugeError> {
    if steps == 0 {
        return Err(GaugeError::ZeroSteps);
    }
    if path.dim() != conn.dim() {
        return Err(GaugeError::DimensionMismatch {
            expected: conn.dim(),
            got: path.dim(),
        });
    }
    if path.piece_count() == 0 {
        return Ok(Holonomy {
            matrix: GroupElement::identity(conn.spec()),
            error: 0.0,
            residual: 0.0,
        });
    }
    let coarse = raw_transport(conn, path, steps);
    let fine = raw_transport(conn, path, steps * 2);
    if !coarse.is_finite() || !fine.is_finite() {
        return Err(GaugeError::NonFinite("transport result".to_string()));
    }
    let coarse = coarse.project();
    let fine = fine.project();
    let error = coarse.distance(&fine);
    Ok(Holonomy {
        matrix: fine,
        error,
        residual: fine.residual(),
    })
}

/// Transports each generator loop of a decomposition and multiplies
/// the results in word order, inverting the negatively traversed
/// factors. The error bound combines the factor estimates, scaled by
/// the factor norms for the non-compact group.
pub fn holonomy_of_word(
    conn: &Connection,
    dec: &Decomposition,
    steps: usize,
) -> Result<Holonomy, GaugeError> {
    if dec.dim() != conn.dim() {
        return Err(GaugeError::DimensionMismatch {
            expected: conn.dim(),
            got: dec.dim(),
        });
    }
    let mut factors = Vec::with_capacity(dec.generator_count());
    for generator in dec.generators() {
        factors.push(transport(conn, &PlTransport::from_loop(generator), steps)?);
    }
    let mut matrix = GroupElement::identity(conn.spec());
    let mut error = 0.0;
    let mut amplification = 1.0f64;
    for symbol in dec.word().symbols() {
        let factor = &factors[(symbol.index() - 1) as usize];
        let used = if symbol.is_positive() {
            factor.matrix
        } else {
            factor.matrix.inverse()
        };
        matrix = matrix.mul(&used);
        error += factor.error;
        amplification *= used.operator_norm().max(1.0);
    }
    let matrix = matrix.project();
    Ok(Holonomy {
        matrix,
        error: error * amplification,
        residual: matrix.residual(),
    })
}
