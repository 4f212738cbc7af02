//! Lie-algebra valued one-forms built from radial bump terms.
//! Each term contributes X b(|x - c|/r) dx^mu, with the polynomial
//! window b(s) = (1 - s^2)^7 supported on the unit interval. The
//! form is smooth because b has vanishing value and derivatives at
//! the support boundary up to order six.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use nalgebra::{Matrix2, Matrix3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::group::{AlgebraElement, LieGroupSpec};
use super::GaugeError;

/// Window profile b(s) = (1 - s^2)^7 on |s| < 1, zero outside.
pub fn bump_profile(s: f64) -> f64 {
    let s2 = s * s;
    if s2 >= 1.0 {
        0.0
    } else {
        (1.0 - s2).powi(7)
    }
}

/// The exact chord integral of the window over a diameter of its
/// support ball at unit radius: the integral of (1 - u^2)^7 over
/// [-1, 1] equals 2^15 (7!)^2 / 15! = 28672/45045.
pub const BUMP_CHORD_INTEGRAL: f64 = 28672.0 / 45045.0;

/// One radial bump term: coefficient, center, support radius, and
/// the coordinate index whose differential it multiplies.
#[derive(Clone, Debug)]
pub struct BumpTerm {
    pub center: Vec<f64>,
    pub radius: f64,
    pub axis: usize,
    pub coeff: AlgebraElement,
}

/// A connection form on R^d with values in one Lie algebra.
#[derive(Clone, Debug)]
pub struct Connection {
    spec: LieGroupSpec,
    dim: usize,
    terms: Vec<BumpTerm>,
}

impl Connection {
    pub fn new(
        spec: LieGroupSpec,
        dim: usize,
        terms: Vec<BumpTerm>,
    ) -> Result<Self, GaugeError> {
        if dim < 2 {
            return Err(GaugeError::BadTerm(format!(
                "ambient dimension must be at least 2, got {dim}"
            )));
        }
        for (i, term) in terms.iter().enumerate() {
            if term.center.len() != dim {
                return Err(GaugeError::DimensionMismatch {
                    expected: dim,
                    got: term.center.len(),
                });
            }
            if !(term.radius.is_finite() && term.radius > 0.0) {
                return Err(GaugeError::BadTerm(format!(
                    "term {i} has radius {}, which is not a positive finite number",
                    term.radius
                )));
            }
            if term.axis >= dim {
                return Err(GaugeError::BadTerm(format!(
                    "term {i} names axis {} in dimension {dim}",
                    term.axis
                )));
            }
            if !term.center.iter().all(|c| c.is_finite()) {
                return Err(GaugeError::NonFinite(format!("center of term {i}")));
            }
            if !term.coeff.is_finite() {
                return Err(GaugeError::NonFinite(format!("coefficient of term {i}")));
            }
            if term.coeff.spec() != spec {
                return Err(GaugeError::SpecMismatch {
                    expected: spec,
                    got: term.coeff.spec(),
                });
            }
        }
        Ok(Connection { spec, dim, terms })
    }

    /// The zero connection, whose transport is identically identity.
    pub fn zero(spec: LieGroupSpec, dim: usize) -> Result<Self, GaugeError> {
        Connection::new(spec, dim, Vec::new())
    }

    pub fn spec(&self) -> LieGroupSpec {
        self.spec
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[BumpTerm] {
        &self.terms
    }

    /// Evaluates the form at a point on a velocity vector.
    pub fn evaluate(&self, pos: &[f64], vel: &[f64]) -> AlgebraElement {
        debug_assert_eq!(pos.len(), self.dim);
        debug_assert_eq!(vel.len(), self.dim);
        let mut acc = AlgebraElement::zero(self.spec);
        for term in &self.terms {
            let mut s2 = 0.0;
            for j in 0..self.dim {
                let d = pos[j] - term.center[j];
                s2 += d * d;
            }
            s2 /= term.radius * term.radius;
            if s2 >= 1.0 {
                continue;
            }
            let window = (1.0 - s2).powi(7);
            acc = acc.add(&term.coeff.scale(window * vel[term.axis]));
        }
        acc
    }
}

/// Serialized form of one bump term. The axis is one-based in files;
/// coefficient entries are [re, im] pairs for every group, with the
/// imaginary part required to vanish for so3 and sl2r.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct BumpTermRecord {
    pub center: Vec<f64>,
    pub radius: f64,
    pub axis: usize,
    pub coeff_matrix: Vec<Vec<[f64; 2]>>,
}

/// Serialized form of a connection.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ConnectionRecord {
    pub group: String,
    pub dim: usize,
    pub terms: Vec<BumpTermRecord>,
}

fn coeff_from_rows(
    spec: LieGroupSpec,
    rows: &[Vec<[f64; 2]>],
) -> Result<AlgebraElement, GaugeError> {
    let n = spec.matrix_dim();
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(GaugeError::BadRecord(format!(
            "coefficient matrix for {spec} must be {n}x{n}"
        )));
    }
    let real_only = |rows: &[Vec<[f64; 2]>]| -> Result<(), GaugeError> {
        for row in rows {
            for e in row {
                if e[1] != 0.0 {
                    return Err(GaugeError::BadRecord(format!(
                        "{spec} coefficients must have zero imaginary part"
                    )));
                }
            }
        }
        Ok(())
    };
    match spec {
        LieGroupSpec::U1 => {
            if rows[0][0][0] != 0.0 {
                return Err(GaugeError::BadRecord(
                    "u1 coefficients must be purely imaginary".to_string(),
                ));
            }
            Ok(AlgebraElement::u1(rows[0][0][1]))
        }
        LieGroupSpec::Su2 => {
            let m = Matrix2::new(
                Complex64::new(rows[0][0][0], rows[0][0][1]),
                Complex64::new(rows[0][1][0], rows[0][1][1]),
                Complex64::new(rows[1][0][0], rows[1][0][1]),
                Complex64::new(rows[1][1][0], rows[1][1][1]),
            );
            AlgebraElement::su2(m)
        }
        LieGroupSpec::So3 => {
            real_only(rows)?;
            let m = Matrix3::from_fn(|i, j| rows[i][j][0]);
            AlgebraElement::so3(m)
        }
        LieGroupSpec::Sl2r => {
            real_only(rows)?;
            let m = Matrix2::new(rows[0][0][0], rows[0][1][0], rows[1][0][0], rows[1][1][0]);
            AlgebraElement::sl2r(m)
        }
    }
}

impl Connection {
    pub fn to_record(&self) -> ConnectionRecord {
        ConnectionRecord {
            group: self.spec.to_string(),
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|t| BumpTermRecord {
                    center: t.center.clone(),
                    radius: t.radius,
                    axis: t.axis + 1,
                    coeff_matrix: t.coeff.to_complex_rows(),
                })
                .collect(),
        }
    }

    pub fn from_record(record: &ConnectionRecord) -> Result<Self, GaugeError> {
        let spec = LieGroupSpec::from_str(&record.group)?;
        let mut terms = Vec::with_capacity(record.terms.len());
        for (i, t) in record.terms.iter().enumerate() {
            if t.axis == 0 {
                return Err(GaugeError::BadRecord(format!(
                    "term {i}: axes are one-based in files"
                )));
            }
            terms.push(BumpTerm {
                center: t.center.clone(),
                radius: t.radius,
                axis: t.axis - 1,
                coeff: coeff_from_rows(spec, &t.coeff_matrix)?,
            });
        }
        Connection::new(spec, record.dim, terms)
    }
}

/// Writes a connection as pretty-printed structured text.
pub fn write_connection(path: &Path, conn: &Connection) -> Result<(), GaugeError> {
    let text = serde_json::to_string_pretty(&conn.to_record())
        .map_err(|e| GaugeError::BadRecord(e.to_string()))?;
    fs::write(path, text + "\n").map_err(|e| GaugeError::BadRecord(e.to_string()))
}

/// Reads a connection written by `write_connection`.
pub fn read_connection(path: &Path) -> Result<Connection, GaugeError> {
    let text = fs::read_to_string(path).map_err(|e| GaugeError::BadRecord(e.to_string()))?;
    let record: ConnectionRecord =
        serde_json::from_str(&text).map_err(|e| GaugeError::BadRecord(e.to_string()))?;
    Connection::from_record(&record)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
        // n must be even; composite Simpson rule.
        let h = (b - a) / n as f64;
        let mut sum = f(a) + f(b);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            sum += w * f(a + i as f64 * h);
        }
        sum * h / 3.0
    }

    #[test]
    fn chord_integral_constant_matches_quadrature() {
        let num = simpson(|u| bump_profile(u), -1.0, 1.0, 4096);
        assert!(
            (num - BUMP_CHORD_INTEGRAL).abs() < 1e-12,
            "got {num}, want {BUMP_CHORD_INTEGRAL}"
        );
    }

    #[test]
    fn bump_profile_is_smoothly_supported() {
        assert_eq!(bump_profile(1.0), 0.0);
        assert_eq!(bump_profile(-1.3), 0.0);
        assert_eq!(bump_profile(0.0), 1.0);
        // Vanishing at the boundary to high order: value near the
        // edge scales like (1 - s)^7.
        let eps = 1e-3;
        assert!(bump_profile(1.0 - eps) < 2.0 * (2.0 * eps).powi(7));
    }

    #[test]
    fn evaluate_sums_terms_on_the_named_axis() {
        let conn = Connection::new(
            LieGroupSpec::U1,
            2,
            vec![
                BumpTerm {
                    center: vec![0.0, 0.0],
                    radius: 1.0,
                    axis: 0,
                    coeff: AlgebraElement::u1(2.0),
                },
                BumpTerm {
                    center: vec![0.0, 0.0],
                    radius: 1.0,
                    axis: 1,
                    coeff: AlgebraElement::u1(5.0),
                },
            ],
        )
        .unwrap();
        let at_center = conn.evaluate(&[0.0, 0.0], &[1.0, 1.0]);
        match at_center {
            AlgebraElement::U1(t) => assert!((t - 7.0).abs() < 1e-15),
            _ => panic!("wrong algebra"),
        }
        let outside = conn.evaluate(&[3.0, 0.0], &[1.0, 1.0]);
        match outside {
            AlgebraElement::U1(t) => assert_eq!(t, 0.0),
            _ => panic!("wrong algebra"),
        }
    }

    #[test]
    fn validation_rejects_malformed_terms() {
        let coeff = AlgebraElement::u1(1.0);
        let bad_radius = Connection::new(
            LieGroupSpec::U1,
            2,
            vec![BumpTerm {
                center: vec![0.0, 0.0],
                radius: 0.0,
                axis: 0,
                coeff,
            }],
        );
        assert!(matches!(bad_radius, Err(GaugeError::BadTerm(_))));
        let bad_axis = Connection::new(
            LieGroupSpec::U1,
            2,
            vec![BumpTerm {
                center: vec![0.0, 0.0],
                radius: 1.0,
                axis: 2,
                coeff,
            }],
        );
        assert!(matches!(bad_axis, Err(GaugeError::BadTerm(_))));
        let bad_center = Connection::new(
            LieGroupSpec::U1,
            2,
            vec![BumpTerm {
                center: vec![0.0],
                radius: 1.0,
                axis: 0,
                coeff,
            }],
        );
        assert!(matches!(
            bad_center,
            Err(GaugeError::DimensionMismatch { .. })
        ));
        let bad_spec = Connection::new(
            LieGroupSpec::So3,
            2,
            vec![BumpTerm {
                center: vec![0.0, 0.0],
                radius: 1.0,
                axis: 0,
                coeff,
            }],
        );
        assert!(matches!(bad_spec, Err(GaugeError::SpecMismatch { .. })));
    }

    #[test]
    fn connection_file_round_trips_with_one_based_axes() {
        let dir = std::env::temp_dir().join("hoops_connection_roundtrip");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("conn.json");
        let conn = Connection::new(
            LieGroupSpec::So3,
            3,
            vec![BumpTerm {
                center: vec![0.5, -1.0, 2.0],
                radius: 1.25,
                axis: 2,
                coeff: AlgebraElement::so3_from_axis([0.1, 0.0, -0.3]),
            }],
        )
        .unwrap();
        write_connection(&path, &conn).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.contains("\"axis\": 3"), "file stores one-based axis");
        assert!(text.contains("\"group\": \"so3\""));
        let back = read_connection(&path).unwrap();
        assert_eq!(back.spec(), LieGroupSpec::So3);
        assert_eq!(back.dim(), 3);
        assert_eq!(back.terms().len(), 1);
        let t = &back.terms()[0];
        assert_eq!(t.axis, 2);
        assert_eq!(t.center, vec![0.5, -1.0, 2.0]);
        let diff = t.coeff.add(&conn.terms()[0].coeff.scale(-1.0));
        assert!(diff.norm() < 1e-15);
    }

    #[test]
    fn record_parsing_rejects_bad_coefficients() {
        let mut record = ConnectionRecord {
            group: "so3".to_string(),
            dim: 3,
            terms: vec![BumpTermRecord {
                center: vec![0.0, 0.0, 0.0],
                radius: 1.0,
                axis: 1,
                coeff_matrix: vec![
                    vec![[0.0, 0.0], [1.0, 0.5], [0.0, 0.0]],
                    vec![[-1.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
                    vec![[0.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
                ],
            }],
        };
        assert!(matches!(
            Connection::from_record(&record),
            Err(GaugeError::BadRecord(_))
        ));
        // Real but not skew-symmetric.
        record.terms[0].coeff_matrix = vec![
            vec![[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]],
            vec![[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
            vec![[0.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
        ];
        assert!(matches!(
            Connection::from_record(&record),
            Err(GaugeError::NotInAlgebra(_))
        ));
        // Zero-based axis in a file.
        record.terms[0].coeff_matrix = vec![
            vec![[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]],
            vec![[-1.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
            vec![[0.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
        ];
        record.terms[0].axis = 0;
        assert!(matches!(
            Connection::from_record(&record),
            Err(GaugeError::BadRecord(_))
        ));
        let unknown = ConnectionRecord {
            group: "e8".to_string(),
            dim: 2,
            terms: vec![],
        };
        assert!(matches!(
            Connection::from_record(&unknown),
            Err(GaugeError::UnknownGroup(_))
        ));
    }
}
