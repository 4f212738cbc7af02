//! Seeded random connections and group samplers. Randomness always
//! flows from a caller-supplied seed through one counter-based
//! stream, so every artifact is reproducible bit for bit.

use nalgebra::{Quaternion, UnitQuaternion};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::words::{WitnessSampler, WordGroup};

use super::connection::{BumpTerm, Connection};
use super::group::{AlgebraElement, GroupElement, LieGroupSpec};
use super::GaugeError;

/// Support radii are drawn from this fraction band of the region
/// extent, keeping bumps wide enough for the default step count to
/// resolve them.
const RADIUS_BAND: (f64, f64) = (0.25, 0.5);

/// Coefficient operator norms are drawn from this band, keeping the
/// integrand mild enough for fourth-order accuracy at default steps.
const COEFF_BAND: (f64, f64) = (0.05, 0.25);

fn random_coeff(spec: LieGroupSpec, rng: &mut ChaCha8Rng, target_norm: f64) -> AlgebraElement {
    loop {
        let raw = match spec {
            LieGroupSpec::U1 => AlgebraElement::u1(rng.gen_range(-1.0..1.0)),
            LieGroupSpec::Su2 => AlgebraElement::su2_from_components(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ),
            LieGroupSpec::So3 => AlgebraElement::so3_from_axis([
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ]),
            LieGroupSpec::Sl2r => AlgebraElement::sl2r_from_components(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ),
        };
        let norm = raw.norm();
        if norm > 1e-3 {
            return raw.scale(target_norm / norm);
        }
    }
}

/// Draws a connection with `n_terms` bump terms whose centers lie in
/// the given per-axis region. The same seed always yields the same
/// connection; zero terms yield the zero connection.
pub fn random_connection(
    spec: LieGroupSpec,
    region: &[(f64, f64)],
    n_terms: usize,
    seed: u64,
) -> Result<Connection, GaugeError> {
    let dim = region.len();
    if dim < 2 {
        return Err(GaugeError::BadTerm(format!(
            "region must cover at least 2 axes, got {dim}"
        )));
    }
    let mut extent = 0.0f64;
    for (i, &(lo, hi)) in region.iter().enumerate() {
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(GaugeError::BadTerm(format!(
                "region axis {i} has bounds ({lo}, {hi})"
            )));
        }
        extent = extent.max(hi - lo);
    }
    if extent == 0.0 {
        extent = 1.0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut terms = Vec::with_capacity(n_terms);
    for _ in 0..n_terms {
        let center = region
            .iter()
            .map(|&(lo, hi)| if lo < hi { rng.gen_range(lo..hi) } else { lo })
            .collect();
        let radius = extent * rng.gen_range(RADIUS_BAND.0..RADIUS_BAND.1);
        let axis = rng.gen_range(0..dim);
        let norm = rng.gen_range(COEFF_BAND.0..COEFF_BAND.1);
        terms.push(BumpTerm {
            center,
            radius,
            axis,
            coeff: random_coeff(spec, &mut rng, norm),
        });
    }
    Connection::new(spec, dim, terms)
}

/// Haar-style sampler over any of the supported groups, usable for
/// witness searches against word identities.
pub struct GroupSampler {
    pub spec: LieGroupSpec,
}

impl GroupSampler {
    pub fn new(spec: LieGroupSpec) -> Self {
        GroupSampler { spec }
    }
}

impl WordGroup for GroupSampler {
    type Elem = GroupElement;

    fn identity(&self) -> GroupElement {
        GroupElement::identity(self.spec)
    }

    fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        a.mul(b)
    }

    fn inv(&self, a: &GroupElement) -> GroupElement {
        a.inverse()
    }
}

impl WitnessSampler for GroupSampler {
    fn sample(&self, rng: &mut ChaCha8Rng) -> GroupElement {
        match self.spec {
            LieGroupSpec::U1 => {
                AlgebraElement::u1(rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
                    .exp()
            }
            LieGroupSpec::Su2 | LieGroupSpec::So3 => {
                // Uniform unit quaternion from three uniform variates.
                use std::f64::consts::TAU;
                let u: f64 = rng.gen();
                let theta1 = TAU * rng.gen::<f64>();
                let theta2 = TAU * rng.gen::<f64>();
                let r1 = (1.0 - u).sqrt();
                let r2 = u.sqrt();
                let (x, y) = (r1 * theta1.sin(), r1 * theta1.cos());
                let (z, w) = (r2 * theta2.sin(), r2 * theta2.cos());
                if self.spec == LieGroupSpec::Su2 {
                    GroupElement::Su2(nalgebra::Matrix2::new(
                        Complex64::new(w, z),
                        Complex64::new(y, x),
                        Complex64::new(-y, x),
                        Complex64::new(w, -z),
                    ))
                } else {
                    let q = UnitQuaternion::from_quaternion(Quaternion::new(w, x, y, z));
                    GroupElement::So3(*q.to_rotation_matrix().matrix())
                }
            }
            LieGroupSpec::Sl2r => {
                // Exponential of a random traceless matrix mixes the
                // elliptic and hyperbolic conjugacy classes.
                let scale = rng.gen_range(0.2..1.5);
                random_coeff(LieGroupSpec::Sl2r, rng, scale).exp()
            }
        }
    }

    fn distance_to_identity(&self, e: &GroupElement) -> f64 {
        e.distance_to_identity()
    }
}
