//! Exact rational points and segment predicates. Everything here is
//! decided in rational arithmetic; nothing rounds.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::GeomError;

pub type Rat = BigRational;

/// A point of rational d-space. Ordering is lexicographic on
/// coordinates, which fixes deterministic node numbering downstream.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Point(Vec<Rat>);

impl Point {
    pub fn new(coords: Vec<Rat>) -> Self {
        Point(coords)
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| Rat::from(BigInt::from(c))).collect())
    }

    /// Coordinates given as `(numerator, denominator)` pairs.
    pub fn from_fractions(coords: &[(i64, i64)]) -> Self {
        Point(
            coords
                .iter()
                .map(|&(n, d)| Rat::new(BigInt::from(n), BigInt::from(d)))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0
            .iter()
            .map(|c| c.to_f64().expect("rational fits in f64 range"))
            .collect()
    }

    pub fn sub(&self, other: &Point) -> Vec<Rat> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a - b)
            .collect()
    }

    pub fn add_scaled(&self, direction: &[Rat], t: &Rat) -> Point {
        Point(
            self.0
                .iter()
                .zip(direction)
                .map(|(a, d)| a + d * t)
                .collect(),
        )
    }

    /// Midpoint of `self` and `other`.
    pub fn midpoint(&self, other: &Point) -> Point {
        let half = Rat::new(BigInt::one(), BigInt::from(2));
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| (a + b) * &half)
                .collect(),
        )
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub fn vec_is_zero(v: &[Rat]) -> bool {
    v.iter().all(|c| c.is_zero())
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// True when all 2x2 minors of the pair vanish, i.e. the vectors are
/// linearly dependent.
pub fn parallel(u: &[Rat], v: &[Rat]) -> bool {
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            if &u[i] * &v[j] != &u[j] * &v[i] {
                return false;
            }
        }
    }
    true
}

/// Parameter of `x` on the segment `[a, b]` if it lies there, with
/// `t = 0` at `a` and `t = 1` at `b`.
pub fn point_on_segment(x: &Point, a: &Point, b: &Point) -> Option<Rat> {
    let u = b.sub(a);
    let w = x.sub(a);
    if !parallel(&u, &w) {
        return None;
    }
    let k = u.iter().position(|c| !c.is_zero())?;
    let t = &w[k] / &u[k];
    if t.is_negative() || t > Rat::one() {
        return None;
    }
    // Parallel plus one matching coordinate pins every coordinate.
    for i in 0..u.len() {
        if &u[i] * &t != w[i] {
            return None;
        }
    }
    Some(t)
}

/// Intersection point of two non-parallel segments, endpoints included.
/// Returns the point together with both parameters.
pub fn nonparallel_intersection(
    a: &Point,
    b: &Point,
    c: &Point,
    d: &Point,
) -> Option<(Point, Rat, Rat)> {
    let u = b.sub(a);
    let v = d.sub(c);
    let w = c.sub(a);
    // Solve t*u - s*v = w from one invertible coordinate pair, then
    // validate every remaining coordinate exactly.
    let n = u.len();
    let mut pivot = None;
    'outer: for i in 0..n {
        for j in i + 1..n {
            let det = &u[i] * &(-&v[j]) - &u[j] * &(-&v[i]);
            if !det.is_zero() {
                pivot = Some((i, j, det));
                break 'outer;
            }
        }
    }
    let (i, j, det) = pivot?;
    let t = (&w[i] * &(-&v[j]) - &w[j] * &(-&v[i])) / &det;
    let s = (&u[i] * &w[j] - &u[j] * &w[i]) / &det;
    if t.is_negative() || t > Rat::one() || s.is_negative() || s > Rat::one() {
        return None;
    }
    for k in 0..n {
        if &u[k] * &t - &v[k] * &s != w[k] {
            return None;
        }
    }
    Some((a.add_scaled(&u, &t), t, s))
}

/// How two segments meet, decided exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentMeet {
    Empty,
    AtPoint(Point),
    /// A shared sub-segment of positive length, endpoints in segment
    /// order of the first argument.
    Overlap(Point, Point),
}

pub fn segment_meet(a: &Point, b: &Point, c: &Point, d: &Point) -> SegmentMeet {
    let u = b.sub(a);
    let v = d.sub(c);
    if !parallel(&u, &v) {
        return match nonparallel_intersection(a, b, c, d) {
            Some((p, _, _)) => SegmentMeet::AtPoint(p),
            None => SegmentMeet::Empty,
        };
    }
    // Parallel: either disjoint lines or a collinear interval.
    if !parallel(&u, &c.sub(a)) {
        return SegmentMeet::Empty;
    }
    let k = u
        .iter()
        .position(|x| !x.is_zero())
        .expect("segments have distinct endpoints");
    let tc = &c.sub(a)[k] / &u[k];
    let td = &d.sub(a)[k] / &u[k];
    let (lo, hi) = if tc <= td { (tc, td) } else { (td, tc) };
    let lo = lo.max(Rat::zero());
    let hi = hi.min(Rat::one());
    if lo > hi {
        SegmentMeet::Empty
    } else if lo == hi {
        SegmentMeet::AtPoint(a.add_scaled(&u, &lo))
    } else {
        SegmentMeet::Overlap(a.add_scaled(&u, &lo), a.add_scaled(&u, &hi))
    }
}

/// True when `[p, q]` is contained in `[a, b]`.
pub fn segment_contains(a: &Point, b: &Point, p: &Point, q: &Point) -> bool {
    point_on_segment(p, a, b).is_some() && point_on_segment(q, a, b).is_some()
}

/// Exact squared distance from a point to a segment.
pub fn squared_distance_point_segment(x: &Point, a: &Point, b: &Point) -> Rat {
    let u = b.sub(a);
    let w = x.sub(a);
    let denom = dot(&u, &u);
    if denom.is_zero() {
        return dot(&w, &w);
    }
    let mut t = dot(&w, &u) / &denom;
    if t.is_negative() {
        t = Rat::zero();
    } else if t > Rat::one() {
        t = Rat::one();
    }
    let diff: Vec<Rat> = w.iter().zip(&u).map(|(wi, ui)| wi - ui * &t).collect();
    dot(&diff, &diff)
}

/// A positive rational strictly below `sqrt(x)`, tight to better than
/// one part in 1e12; requires `x > 0`. Downstream radii scale with
/// this bound, so looseness here shrinks usable clearance.
pub fn rational_sqrt_lower_bound(x: &Rat) -> Rat {
    assert!(x.is_positive(), "square root bound needs a positive input");
    // Integer floor square roots give a certified upper seed, then
    // Newton iterations square the accuracy; x / y flips any upper
    // bound y into a lower bound.
    let num = x.numer().abs();
    let den = x.denom().abs();
    let mut y = Rat::new(num.sqrt() + BigInt::one(), den.sqrt().max(BigInt::one()));
    for _ in 0..48 {
        let next = (&y + x / &y) / Rat::from_integer(2.into());
        let gap = (&next * &next - x) / x;
        y = next;
        if gap < Rat::new(1.into(), BigInt::from(10).pow(30)) {
            break;
        }
    }
    let lower = x / &y;
    // Snap to a 2^-64 grid so later exact arithmetic stays cheap.
    let scale = BigInt::from(2).pow(64);
    let mut snapped = Rat::new((lower * &scale).floor().to_integer(), scale.clone());
    while !snapped.is_positive() || &snapped * &snapped >= *x {
        if !snapped.is_positive() {
            // Below the grid resolution; back off instead of snapping.
            return x / (y * Rat::new(3.into(), 2.into()));
        }
        snapped -= Rat::new(BigInt::one(), scale.clone());
    }
    snapped
}

/// Parses a rational coordinate given as `p/q` or a plain integer.
pub fn parse_rational(text: &str) -> Result<Rat, GeomError> {
    text.trim()
        .parse::<Rat>()
        .map_err(|e| GeomError::BadRational(format!("'{text}': {e}")))
}
