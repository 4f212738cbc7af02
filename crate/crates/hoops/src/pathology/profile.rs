//! Polynomial bump, ramp, and cutoff profiles with exact derivative
//! oracles. The bump is
//!
//! ```text
//! beta(x) = 4^(N+1) (x(1-x))^(N+1)
//! ```
//!
//! normalized to sup 1, vanishing at 0 and 1 together with its first
//! N derivatives. The ramp is its normalized antiderivative and the
//! cutoff is the ramp run outward from a flat core, so every profile
//! shares one derivative oracle and one table of sup constants.

use super::PathologyError;

/// Default endpoint flatness order.
pub const DEFAULT_FLATNESS: usize = 8;

/// Falling factorial m(m-1)...(m-j+1) as f64.
fn falling(m: usize, j: usize) -> f64 {
    let mut r = 1.0;
    for k in 0..j {
        r *= (m - k) as f64;
    }
    r
}

fn binomial(n: usize, j: usize) -> f64 {
    let j = j.min(n - j);
    let mut r = 1.0;
    for k in 0..j {
        r *= (n - k) as f64 / (k + 1) as f64;
    }
    r
}

/// Densely samples |g| and refines the best bracket by golden-section
/// search.
fn sup_abs(g: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    const SAMPLES: usize = 4096;
    let step = (hi - lo) / SAMPLES as f64;
    let mut best_x = lo;
    let mut best = 0.0f64;
    for i in 0..=SAMPLES {
        let x = lo + step * i as f64;
        let v = g(x).abs();
        if v > best {
            best = v;
            best_x = x;
        }
    }
    let mut a = (best_x - step).max(lo);
    let mut b = (best_x + step).min(hi);
    let phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let mut f1 = g(x1).abs();
    let mut f2 = g(x2).abs();
    for _ in 0..80 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = g(x2).abs();
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = g(x1).abs();
        }
    }
    best.max(f1).max(f2)
}

/// The bump profile and its precomputed sup constants.
#[derive(Clone, Debug)]
pub struct BumpProfile {
    flatness: usize,
    /// a[n] = sup |beta^(n)| over [0, 1], for n up to the flatness.
    sup_constants: Vec<f64>,
    /// Integral of beta over [0, 1].
    mass: f64,
}

impl BumpProfile {
    pub fn new(flatness: usize) -> Result<Self, PathologyError> {
        if flatness == 0 || flatness > 40 {
            return Err(PathologyError::BadFlatness(flatness));
        }
        // 4^(N+1) (N+1)!^2 / (2N+3)! by telescoping products.
        let mut mass = 1.0f64;
        for k in 1..=flatness + 1 {
            mass *= 4.0 * k as f64 / (flatness + 1 + k) as f64;
        }
        mass /= (2 * flatness + 3) as f64;
        let mut profile = BumpProfile {
            flatness,
            sup_constants: Vec::new(),
            mass,
        };
        let sups = (0..=flatness)
            .map(|n| sup_abs(|x| profile.bump_deriv_raw(n, x), 0.0, 1.0))
            .collect();
        profile.sup_constants = sups;
        Ok(profile)
    }

    pub fn with_default_flatness() -> Self {
        Self::new(DEFAULT_FLATNESS).expect("default flatness is valid")
    }

    /// Endpoint flatness order N: derivatives through order N vanish
    /// at 0 and 1.
    pub fn flatness(&self) -> usize {
        self.flatness
    }

    /// Integral of the bump over [0, 1].
    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// sup |beta^(n)|; the scale constants of the dyadic cascades.
    pub fn sup_constant(&self, n: usize) -> Result<f64, PathologyError> {
        self.sup_constants
            .get(n)
            .copied()
            .ok_or(PathologyError::OrderBeyondOracle {
                order: n,
                max: self.flatness,
            })
    }

    /// n-th derivative of the bump, zero outside [0, 1]. Computed from
    /// the product rule on x^(N+1) (1-x)^(N+1), whose terms are
    /// sign-alternating in one index only, keeping cancellation mild.
    fn bump_deriv_raw(&self, n: usize, x: f64) -> f64 {
        if !(0.0..=1.0).contains(&x) {
            return 0.0;
        }
        let m = self.flatness + 1;
        let scale = 4.0f64.powi(m as i32);
        let mut acc = 0.0;
        for j in 0..=n.min(m) {
            if n - j > m {
                continue;
            }
            let term = binomial(n, j)
                * falling(m, j)
                * falling(m, n - j)
                * x.powi((m - j) as i32)
                * (1.0 - x).powi((m - (n - j)) as i32);
            if (n - j) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        scale * acc
    }

    /// n-th derivative of the bump; order capped by the flatness.
    pub fn bump_deriv(&self, n: usize, x: f64) -> Result<f64, PathologyError> {
        if n > self.flatness {
            return Err(PathologyError::OrderBeyondOracle {
                order: n,
                max: self.flatness,
            });
        }
        Ok(self.bump_deriv_raw(n, x))
    }

    pub fn bump(&self, x: f64) -> f64 {
        self.bump_deriv_raw(0, x)
    }

    /// Monotone ramp: 0 before 0, 1 after 1, flat to order N at both
    /// ends; the normalized antiderivative of the bump.
    pub fn ramp(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if x >= 1.0 {
            return 1.0;
        }
        // Integrate the bump by composite Simpson on [0, x]; the
        // integrand is polynomial so a fixed fine grid is plenty.
        const PANELS: usize = 1024;
        let h = x / PANELS as f64;
        let mut acc = self.bump(0.0) + self.bump(x);
        for i in 1..PANELS {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * self.bump(h * i as f64);
        }
        (acc * h / 3.0) / self.mass
    }

    /// n-th derivative of the ramp: beta^(n-1) / mass for n >= 1.
    pub fn ramp_deriv(&self, n: usize, x: f64) -> Result<f64, PathologyError> {
        if n == 0 {
            return Ok(self.ramp(x));
        }
        if !(0.0..=1.0).contains(&x) {
            return Ok(0.0);
        }
        Ok(self.bump_deriv(n - 1, x)? / self.mass)
    }

    /// sup |ramp^(n)| for n >= 1.
    pub fn ramp_sup(&self, n: usize) -> Result<f64, PathologyError> {
        if n == 0 {
            return Ok(1.0);
        }
        Ok(self.sup_constant(n - 1)? / self.mass)
    }

    /// Radial cutoff: 0 on the core |x| <= 1/2, 1 outside |x| >= 1,
    /// ramped in between, flat to order N at both junctions.
    pub fn cutoff(&self, x: f64) -> f64 {
        let r = x.abs();
        if r <= 0.5 {
            0.0
        } else if r >= 1.0 {
            1.0
        } else {
            self.ramp(2.0 * r - 1.0)
        }
    }

    /// n-th derivative of the cutoff.
    pub fn cutoff_deriv(&self, n: usize, x: f64) -> Result<f64, PathologyError> {
        if n == 0 {
            return Ok(self.cutoff(x));
        }
        let r = x.abs();
        if !(0.5..=1.0).contains(&r) {
            return Ok(0.0);
        }
        // cutoff(x) = ramp(2|x| - 1); the chain factor is +-2 per order.
        let inner = self.ramp_deriv(n, 2.0 * r - 1.0)?;
        let chain = 2.0f64.powi(n as i32);
        let mirror = if x < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
        Ok(mirror * chain * inner)
    }

    /// sup |cutoff^(n)|: the ramp bound times the chain factor 2^n.
    pub fn cutoff_sup(&self, n: usize) -> Result<f64, PathologyError> {
        Ok(2.0f64.powi(n as i32) * self.ramp_sup(n)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bump_is_normalized_and_flat_at_the_ends() {
        let p = BumpProfile::with_default_flatness();
        assert!((p.bump(0.5) - 1.0).abs() < 1e-12, "sup sits at the middle");
        for n in 0..=p.flatness() {
            assert_eq!(p.bump_deriv(n, 0.0).unwrap(), 0.0);
            assert_eq!(p.bump_deriv(n, 1.0).unwrap(), 0.0);
            assert_eq!(p.bump_deriv(n, -0.25).unwrap(), 0.0);
            assert_eq!(p.bump_deriv(n, 1.25).unwrap(), 0.0);
        }
    }

    #[test]
    fn bump_derivatives_match_finite_differences() {
        let p = BumpProfile::with_default_flatness();
        let h = 1e-6;
        for n in 1..=6usize {
            for &x in &[0.13, 0.37, 0.5, 0.71, 0.93] {
                let fd = (p.bump_deriv(n - 1, x + h).unwrap()
                    - p.bump_deriv(n - 1, x - h).unwrap())
                    / (2.0 * h);
                let exact = p.bump_deriv(n, x).unwrap();
                let scale = p.sup_constant(n).unwrap();
                assert!(
                    (fd - exact).abs() / scale < 1e-6,
                    "order {n} at {x}: fd {fd} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn sup_constants_start_at_one_and_grow() {
        let p = BumpProfile::with_default_flatness();
        let a0 = p.sup_constant(0).unwrap();
        assert!((a0 - 1.0).abs() < 1e-9);
        for n in 1..=p.flatness() {
            let prev = p.sup_constant(n - 1).unwrap();
            let here = p.sup_constant(n).unwrap();
            assert!(here > prev, "sup constants grow with the order");
        }
    }

    #[test]
    fn bump_mass_matches_direct_quadrature() {
        let p = BumpProfile::with_default_flatness();
        // Composite Simpson over [0, 1] with many panels.
        const PANELS: usize = 2048;
        let h = 1.0 / PANELS as f64;
        let mut acc = p.bump(0.0) + p.bump(1.0);
        for i in 1..PANELS {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * p.bump(h * i as f64);
        }
        let simpson = acc * h / 3.0;
        assert!(
            (simpson - p.mass()).abs() < 1e-12,
            "closed form {} vs quadrature {simpson}",
            p.mass()
        );
    }

    #[test]
    fn ramp_rises_from_zero_to_one() {
        let p = BumpProfile::with_default_flatness();
        assert_eq!(p.ramp(-0.5), 0.0);
        assert_eq!(p.ramp(1.5), 1.0);
        assert!((p.ramp(0.5) - 0.5).abs() < 1e-9, "odd symmetry about 1/2");
        let quarter = p.ramp(0.25);
        let three_quarter = p.ramp(0.75);
        assert!((quarter + three_quarter - 1.0).abs() < 1e-9);
        assert!(quarter > 0.0 && quarter < 0.5);
        for n in 1..=4usize {
            let h = 1e-6;
            for &x in &[0.21, 0.5, 0.84] {
                let fd =
                    (p.ramp_deriv(n - 1, x + h).unwrap() - p.ramp_deriv(n - 1, x - h).unwrap())
                        / (2.0 * h);
                let exact = p.ramp_deriv(n, x).unwrap();
                assert!(
                    (fd - exact).abs() / p.ramp_sup(n).unwrap() < 1e-5,
                    "ramp order {n} at {x}"
                );
            }
        }
    }

    #[test]
    fn cutoff_is_zero_on_the_core_and_one_outside() {
        let p = BumpProfile::with_default_flatness();
        for &x in &[-0.5, -0.3, 0.0, 0.25, 0.5] {
            assert_eq!(p.cutoff(x), 0.0);
        }
        for &x in &[-2.0, -1.0, 1.0, 3.7] {
            assert_eq!(p.cutoff(x), 1.0);
        }
        let v = p.cutoff(0.75);
        assert!(v > 0.0 && v < 1.0);
        assert_eq!(p.cutoff(-0.75), v, "cutoff is even");
        // Mirror derivative flips sign at odd orders.
        let d = p.cutoff_deriv(1, 0.75).unwrap();
        let dm = p.cutoff_deriv(1, -0.75).unwrap();
        assert!((d + dm).abs() < 1e-12);
        assert!(p.cutoff_sup(1).unwrap() >= d.abs());
    }

    #[test]
    fn flatness_bounds_are_enforced() {
        assert!(BumpProfile::new(0).is_err());
        assert!(BumpProfile::new(41).is_err());
        let p = BumpProfile::new(3).unwrap();
        assert!(matches!(
            p.bump_deriv(4, 0.5),
            Err(PathologyError::OrderBeyondOracle { order: 4, max: 3 })
        ));
    }
}
