//! A homotopy that walks a staged sequence of curves into its limit.
//! On the dyadic band 2^-n < s <= 2^-n+1 the curve is a ramp blend of
//! stages n and n-1; as s drops to zero the stages converge and the
//! homotopy lands exactly on the limit curve. When each stage n sits
//! within 2^(-n^2-n-1)/a_n of the limit in C^n, every mixed partial
//! of order k+l < n stays below 2^-n on band n. The evaluator computes
//! those partials exactly and the report measures them on a grid.

use super::curve::GraphCurve;
use super::distance::cn_distance;
use super::PathologyError;

/// Evaluator for the staged blend phi(s, t) and its mixed partials.
#[derive(Clone, Debug)]
pub struct InterpolatingHomotopy {
    gamma: GraphCurve,
    /// stages[n] is the curve shown at s = 2^-n; beyond the last
    /// provided stage the limit curve itself continues the sequence.
    stages: Vec<GraphCurve>,
}

/// Measured sup of the mixed partials of phi - gamma on one band.
#[derive(Clone, Copy, Debug)]
pub struct BandBound {
    pub level: u32,
    pub measured: f64,
    pub bound: f64,
}

/// Per-band maxima of |d^k_s d^l_t (phi - gamma)| over k + l < level.
#[derive(Clone, Debug)]
pub struct HomotopyReport {
    pub bands: Vec<BandBound>,
}

impl HomotopyReport {
    /// True when every measured band max sits within its bound.
    pub fn all_within(&self) -> bool {
        self.bands.iter().all(|b| b.measured <= b.bound)
    }
}

/// The closeness radius stage n must satisfy: 2^(-n^2-n-1)/a_n.
pub fn stage_radius(gamma: &GraphCurve, n: usize) -> Result<f64, PathologyError> {
    let a_n = gamma.profile().sup_constant(n)?;
    Ok(2.0f64.powi(-((n * n + n) as i32) - 1) / a_n)
}

/// Builds the homotopy after checking each stage's closeness
/// precondition with a sampled C^n distance.
pub fn interpolating_homotopy(
    gamma: GraphCurve,
    stages: Vec<GraphCurve>,
    samples: usize,
) -> Result<InterpolatingHomotopy, PathologyError> {
    if stages.is_empty() {
        return Err(PathologyError::BadDomain(
            "need at least one stage curve".into(),
        ));
    }
    for (n, stage) in stages.iter().enumerate() {
        if stage.t_end() != gamma.t_end() {
            return Err(PathologyError::BadDomain(format!(
                "stage {n} lives on [0, {}], limit on [0, {}]",
                stage.t_end(),
                gamma.t_end()
            )));
        }
        if stage.max_order() != gamma.max_order() {
            return Err(PathologyError::BadDomain(format!(
                "stage {n} has flatness {}, limit has {}",
                stage.max_order(),
                gamma.max_order()
            )));
        }
        let bound = stage_radius(&gamma, n)?;
        let distance = cn_distance(stage, &gamma, n, samples)?;
        if distance > bound {
            return Err(PathologyError::ClosenessViolated {
                level: n as u32,
                distance,
                bound,
            });
        }
    }
    Ok(InterpolatingHomotopy { gamma, stages })
}

impl InterpolatingHomotopy {
    pub fn gamma(&self) -> &GraphCurve {
        &self.gamma
    }

    pub fn stage_count(&self) -> usize {
        self.stages.len()
    }

    /// Stage n of the sequence; the limit curve past the provided end.
    fn stage(&self, n: usize) -> &GraphCurve {
        self.stages.get(n).unwrap_or(&self.gamma)
    }

    /// Band index n with 2^-n < s <= 2^-n+1, or None when s is at or
    /// below every provided stage (where phi is the limit exactly).
    fn band(&self, s: f64) -> Option<u32> {
        if s <= 0.0 {
            return None;
        }
        let mut n = 1u32;
        while s <= 2.0f64.powi(-(n as i32)) {
            n += 1;
            if n as usize > self.stages.len() + 1 {
                return None;
            }
        }
        Some(n)
    }

    /// Mixed partial d^k_s d^l_t phi at (s, t). The s direction only
    /// passes through the ramp, so k-derivatives are chain powers of
    /// the band width times ramp derivatives; t-derivatives go to the
    /// stage curves' oracles.
    pub fn eval(&self, s: f64, t: f64, k: usize, l: usize) -> Result<f64, PathologyError> {
        if s > 1.0 {
            return Err(PathologyError::BadDomain(format!(
                "homotopy parameter {s} is above 1"
            )));
        }
        let Some(n) = self.band(s) else {
            // At and below the last band the homotopy is the limit.
            return if k == 0 {
                self.gamma.derivative(l, t)
            } else {
                Ok(0.0)
            };
        };
        let near = self.stage(n as usize);
        let far = self.stage(n as usize - 1);
        let u = 2.0f64.powi(n as i32) * s - 1.0;
        let profile = self.gamma.profile();
        if k == 0 {
            let w = profile.ramp(u);
            Ok((1.0 - w) * near.derivative(l, t)? + w * far.derivative(l, t)?)
        } else {
            let chain = 2.0f64.powi((n as usize * k) as i32);
            let ramp_k = profile.ramp_deriv(k, u)?;
            Ok(chain * ramp_k * (far.derivative(l, t)? - near.derivative(l, t)?))
        }
    }

    /// Measures max |d^k_s d^l_t (phi - gamma)| for k + l < n (capped
    /// at max_order) on each band n = 1..=max_level, against the
    /// band's 2^-n bound.
    pub fn verify_bounds(
        &self,
        max_level: u32,
        max_order: usize,
        s_samples: usize,
        t_samples: usize,
    ) -> Result<HomotopyReport, PathologyError> {
        if s_samples < 2 || t_samples < 2 {
            return Err(PathologyError::BadSampleCount(s_samples.min(t_samples)));
        }
        let t_end = self.gamma.t_end();
        let mut bands = Vec::new();
        for n in 1..=max_level {
            let lo = 2.0f64.powi(-(n as i32));
            let hi = 2.0 * lo;
            let mut measured = 0.0f64;
            for i in 1..=s_samples {
                let s = lo + (hi - lo) * i as f64 / s_samples as f64;
                for j in 0..=t_samples {
                    let t = t_end * j as f64 / t_samples as f64;
                    for k in 0..=max_order.min(n as usize - 1) {
                        for l in 0..=(max_order.min(n as usize - 1) - k) {
                            let v = self.eval(s, t, k, l)?;
                            let dev = if k == 0 {
                                v - self.gamma.derivative(l, t)?
                            } else {
                                v
                            };
                            measured = measured.max(dev.abs());
                        }
                    }
                }
            }
            bands.push(BandBound {
                level: n,
                measured,
                bound: 2.0f64.powi(-(n as i32)),
            });
        }
        Ok(HomotopyReport { bands })
    }
}
