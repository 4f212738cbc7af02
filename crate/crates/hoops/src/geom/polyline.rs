//! Piecewise-linear paths and based loops with exact vertices.

use num_traits::Signed;

use super::point::{dot, parallel, vec_is_zero, Point, Rat};
use super::GeomError;

/// An open polyline; consecutive vertices are distinct.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyPath {
    verts: Vec<Point>,
}

impl PolyPath {
    pub fn new(verts: Vec<Point>) -> Result<Self, GeomError> {
        if verts.len() < 2 {
            return Err(GeomError::TooFewVertices);
        }
        let dim = verts[0].dim();
        if dim < 2 {
            return Err(GeomError::DimensionTooLow(dim));
        }
        for (i, v) in verts.iter().enumerate() {
            if v.dim() != dim {
                return Err(GeomError::DimensionMismatch {
                    expected: dim,
                    got: v.dim(),
                });
            }
            if i > 0 && verts[i - 1] == *v {
                return Err(GeomError::RepeatedVertex(i));
            }
        }
        Ok(PolyPath { verts })
    }

    pub fn dim(&self) -> usize {
        self.verts[0].dim()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.verts
    }

    pub fn segment_count(&self) -> usize {
        self.verts.len() - 1
    }

    pub fn segments(&self) -> impl Iterator<Item = (&Point, &Point)> {
        self.verts.windows(2).map(|w| (&w[0], &w[1]))
    }
}

/// A based closed PL curve. The cycle stores the basepoint at both ends;
/// the constant loop stores no cycle at all, which keeps the
/// consecutive-vertices-distinct invariant unconditional.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyLoop {
    basepoint: Point,
    cycle: Vec<Point>,
}

impl PolyLoop {
    /// Builds from a full closed vertex list `o, ..., o`. A singleton
    /// list, or the degenerate pair `o, o`, is the constant loop at o.
    pub fn new(verts: Vec<Point>) -> Result<Self, GeomError> {
        if verts.is_empty() {
            return Err(GeomError::TooFewVertices);
        }
        let dim = verts[0].dim();
        if dim < 2 {
            return Err(GeomError::DimensionTooLow(dim));
        }
        if verts.len() == 1 || (verts.len() == 2 && verts[0] == verts[1]) {
            return Ok(PolyLoop::constant(verts.into_iter().next().expect("len 1")));
        }
        if verts.len() == 2 || verts.first() != verts.last() {
            return Err(GeomError::NotClosed);
        }
        for (i, v) in verts.iter().enumerate() {
            if v.dim() != dim {
                return Err(GeomError::DimensionMismatch {
                    expected: dim,
                    got: v.dim(),
                });
            }
            if i > 0 && verts[i - 1] == *v {
                return Err(GeomError::RepeatedVertex(i));
            }
        }
        Ok(PolyLoop {
            basepoint: verts[0].clone(),
            cycle: verts,
        })
    }

    pub fn constant(basepoint: Point) -> Self {
        PolyLoop {
            basepoint,
            cycle: Vec::new(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.cycle.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.basepoint.dim()
    }

    pub fn basepoint(&self) -> &Point {
        &self.basepoint
    }

    /// Full closed vertex list; empty exactly for the constant loop.
    pub fn vertices(&self) -> &[Point] {
        &self.cycle
    }

    pub fn edge_count(&self) -> usize {
        self.cycle.len().saturating_sub(1)
    }

    pub fn segments(&self) -> impl Iterator<Item = (&Point, &Point)> {
        self.cycle.windows(2).map(|w| (&w[0], &w[1]))
    }

    /// The loop's edges as an open path, for arrangement building.
    pub fn as_path(&self) -> Option<PolyPath> {
        if self.is_constant() {
            None
        } else {
            Some(PolyPath {
                verts: self.cycle.clone(),
            })
        }
    }
}

/// Concatenates two loops based at the same point.
pub fn compose(a: &PolyLoop, b: &PolyLoop) -> Result<PolyLoop, GeomError> {
    if a.basepoint != b.basepoint {
        return Err(GeomError::BasepointMismatch);
    }
    if a.is_constant() {
        return Ok(b.clone());
    }
    if b.is_constant() {
        return Ok(a.clone());
    }
    let mut cycle = a.cycle.clone();
    cycle.extend_from_slice(&b.cycle[1..]);
    Ok(PolyLoop {
        basepoint: a.basepoint.clone(),
        cycle,
    })
}

/// The same curve traversed backwards.
#[must_use]
pub fn invert_loop(a: &PolyLoop) -> PolyLoop {
    let mut cycle = a.cycle.clone();
    cycle.reverse();
    PolyLoop {
        basepoint: a.basepoint.clone(),
        cycle,
    }
}

/// Removes immediately retraced sub-segments until none remain,
/// including backtracks that cover only part of the preceding edge.
/// The result has no adjacent edge pair in exactly opposite directions,
/// so it is the tight representative of the loop's retracing class.
#[must_use]
pub fn spur_reduce(a: &PolyLoop) -> PolyLoop {
    if a.is_constant() {
        return a.clone();
    }
    let mut c = a.cycle.clone();
    let mut i = 0;
    while c.len() >= 3 && i + 2 < c.len() {
        let d1 = c[i + 1].sub(&c[i]);
        let d2 = c[i + 2].sub(&c[i + 1]);
        if parallel(&d1, &d2) && dot(&d1, &d2).is_negative() {
            if c[i] == c[i + 2] {
                // Full backtrack: drop the middle vertex and the return.
                c.drain(i + 1..i + 3);
            } else {
                // Partial backtrack: jump straight to where it ends up.
                c.remove(i + 1);
            }
            i = i.saturating_sub(1);
        } else {
            i += 1;
        }
    }
    debug_assert!(vec_is_zero(&c.last().expect("nonempty").sub(&c[0])) || c.len() >= 3);
    if c.len() == 1 {
        return PolyLoop::constant(a.basepoint.clone());
    }
    PolyLoop {
        basepoint: a.basepoint.clone(),
        cycle: c,
    }
}

/// Total squared edge length, a cheap size measure used by tests.
pub fn squared_length(a: &PolyLoop) -> Rat {
    a.segments()
        .map(|(p, q)| {
            let d = q.sub(p);
            dot(&d, &d)
        })
        .sum()
}
