//! Structured records for loops and decompositions. Coordinates are
//! written as exact rational strings like `"3/4"` or `"-2"`, so a
//! record round-trips without any loss.

use serde::{Deserialize, Serialize};

use crate::words::Word;

use super::decompose::{Decomposition, MarkedSegment};
use super::point::{parse_rational, Point};
use super::polyline::PolyLoop;
use super::GeomError;

/// A based loop on disk: the full closed vertex list, first and last
/// equal to the basepoint. The constant loop stores no vertices.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct LoopRecord {
    pub dim: usize,
    pub basepoint: Vec<String>,
    pub vertices: Vec<Vec<String>>,
}

/// A decomposition on disk: generator vertex lists, the word, marked
/// segments with exact clearance, and the spanning-tree edges.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct DecompositionRecord {
    pub dim: usize,
    pub basepoint: Vec<String>,
    pub generators: Vec<Vec<Vec<String>>>,
    pub word: Word,
    pub marked_segments: Vec<MarkedRecord>,
    pub tree_edges: Vec<(Vec<String>, Vec<String>)>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct MarkedRecord {
    pub start: Vec<String>,
    pub end: Vec<String>,
    pub clearance_sq: String,
}

fn point_strings(p: &Point) -> Vec<String> {
    p.coords().iter().map(|c| c.to_string()).collect()
}

fn point_from_strings(dim: usize, coords: &[String]) -> Result<Point, GeomError> {
    if coords.len() != dim {
        return Err(GeomError::DimensionMismatch {
            expected: dim,
            got: coords.len(),
        });
    }
    let parsed: Result<Vec<_>, _> = coords.iter().map(|c| parse_rational(c)).collect();
    Ok(Point::new(parsed?))
}

fn loop_to_lists(lp: &PolyLoop) -> Vec<Vec<String>> {
    lp.vertices().iter().map(point_strings).collect()
}

fn loop_from_lists(
    dim: usize,
    basepoint: &Point,
    lists: &[Vec<String>],
) -> Result<PolyLoop, GeomError> {
    if lists.is_empty() {
        return Ok(PolyLoop::constant(basepoint.clone()));
    }
    let verts: Result<Vec<_>, _> = lists
        .iter()
        .map(|c| point_from_strings(dim, c))
        .collect();
    let verts = verts?;
    if verts.first() != Some(basepoint) {
        return Err(GeomError::BadRecord(
            "vertex list does not start at the basepoint".into(),
        ));
    }
    PolyLoop::new(verts)
}

pub fn loop_to_record(lp: &PolyLoop) -> LoopRecord {
    LoopRecord {
        dim: lp.dim(),
        basepoint: point_strings(lp.basepoint()),
        vertices: loop_to_lists(lp),
    }
}

pub fn loop_from_record(rec: &LoopRecord) -> Result<PolyLoop, GeomError> {
    let basepoint = point_from_strings(rec.dim, &rec.basepoint)?;
    loop_from_lists(rec.dim, &basepoint, &rec.vertices)
}

pub fn write_loop(lp: &PolyLoop) -> String {
    serde_json::to_string_pretty(&loop_to_record(lp)).expect("loop records serialize")
}

pub fn read_loop(text: &str) -> Result<PolyLoop, GeomError> {
    let rec: LoopRecord =
        serde_json::from_str(text).map_err(|e| GeomError::BadRecord(e.to_string()))?;
    loop_from_record(&rec)
}

pub fn decomposition_to_record(dec: &Decomposition) -> DecompositionRecord {
    DecompositionRecord {
        dim: dec.dim(),
        basepoint: point_strings(dec.basepoint()),
        generators: dec.generators().iter().map(loop_to_lists).collect(),
        word: dec.word().clone(),
        marked_segments: dec
            .marked_segments()
            .iter()
            .map(|m| MarkedRecord {
                start: point_strings(&m.start),
                end: point_strings(&m.end),
                clearance_sq: m.clearance_sq.to_string(),
            })
            .collect(),
        tree_edges: dec
            .tree_edges()
            .iter()
            .map(|(a, b)| (point_strings(a), point_strings(b)))
            .collect(),
    }
}

pub fn decomposition_from_record(
    rec: &DecompositionRecord,
) -> Result<Decomposition, GeomError> {
    let basepoint = point_from_strings(rec.dim, &rec.basepoint)?;
    let generators: Result<Vec<_>, _> = rec
        .generators
        .iter()
        .map(|lists| loop_from_lists(rec.dim, &basepoint, lists))
        .collect();
    let marked: Result<Vec<_>, _> = rec
        .marked_segments
        .iter()
        .map(|m| {
            Ok(MarkedSegment {
                start: point_from_strings(rec.dim, &m.start)?,
                end: point_from_strings(rec.dim, &m.end)?,
                clearance_sq: parse_rational(&m.clearance_sq)?,
            })
        })
        .collect();
    let tree_edges: Result<Vec<_>, _> = rec
        .tree_edges
        .iter()
        .map(|(a, b)| {
            Ok((
                point_from_strings(rec.dim, a)?,
                point_from_strings(rec.dim, b)?,
            ))
        })
        .collect();
    Decomposition::from_parts(basepoint, generators?, rec.word.clone(), marked?, tree_edges?)
}

pub fn write_decomposition(dec: &Decomposition) -> String {
    serde_json::to_string_pretty(&decomposition_to_record(dec))
        .expect("decomposition records serialize")
}

pub fn read_decomposition(text: &str) -> Result<Decomposition, GeomError> {
    let rec: DecompositionRecord =
        serde_json::from_str(text).map_err(|e| GeomError::BadRecord(e.to_string()))?;
    decomposition_from_record(&rec)
}

#[cfg(test)]
mod tests {
    use super::super::decompose::{decompose, is_independent};
    use super::*;

    fn triangle() -> PolyLoop {
        PolyLoop::new(vec![
            Point::from_integers(&[0, 0]),
            Point::from_integers(&[2, 0]),
            Point::from_integers(&[1, 2]),
            Point::from_integers(&[0, 0]),
        ])
        .unwrap()
    }

    #[test]
    fn loop_record_round_trips_rational_coordinates() {
        let lp = PolyLoop::new(vec![
            Point::from_fractions(&[(1, 2), (3, 4)]),
            Point::from_fractions(&[(5, 2), (3, 4)]),
            Point::from_fractions(&[(1, 2), (7, 3)]),
            Point::from_fractions(&[(1, 2), (3, 4)]),
        ])
        .unwrap();
        let text = write_loop(&lp);
        assert!(text.contains("\"1/2\""), "rationals written as p/q");
        assert_eq!(read_loop(&text).unwrap(), lp);
    }

    #[test]
    fn constant_loop_writes_empty_vertex_list() {
        let c = PolyLoop::constant(Point::from_integers(&[3, -1]));
        let text = write_loop(&c);
        let back = read_loop(&text).unwrap();
        assert!(back.is_constant());
        assert_eq!(back, c);
    }

    #[test]
    fn frozen_loop_record_parses() {
        let text = r#"{
            "dim": 2,
            "basepoint": ["0", "0"],
            "vertices": [["0","0"], ["2","0"], ["1","2"], ["0","0"]]
        }"#;
        assert_eq!(read_loop(text).unwrap(), triangle());
    }

    #[test]
    fn bad_loop_records_are_rejected() {
        let wrong_dim = r#"{"dim": 3, "basepoint": ["0","0"], "vertices": []}"#;
        assert!(read_loop(wrong_dim).is_err());
        let bad_rational = r#"{"dim": 2, "basepoint": ["0","x"], "vertices": []}"#;
        assert!(matches!(
            read_loop(bad_rational),
            Err(GeomError::BadRational(_))
        ));
        let off_base = r#"{
            "dim": 2,
            "basepoint": ["0","0"],
            "vertices": [["1","0"], ["2","1"], ["1","0"]]
        }"#;
        assert!(matches!(read_loop(off_base), Err(GeomError::BadRecord(_))));
        let open = r#"{
            "dim": 2,
            "basepoint": ["0","0"],
            "vertices": [["0","0"], ["2","1"], ["3","0"]]
        }"#;
        assert!(matches!(read_loop(open), Err(GeomError::NotClosed)));
    }

    #[test]
    fn decomposition_record_round_trips() {
        let eight = PolyLoop::new(vec![
            Point::from_integers(&[0, 0]),
            Point::from_integers(&[2, 0]),
            Point::from_integers(&[1, 2]),
            Point::from_integers(&[0, 0]),
            Point::from_integers(&[-2, 0]),
            Point::from_integers(&[-1, -2]),
            Point::from_integers(&[0, 0]),
        ])
        .unwrap();
        let dec = decompose(&eight);
        let text = write_decomposition(&dec);
        let back = read_decomposition(&text).unwrap();
        assert_eq!(back.word(), dec.word());
        assert_eq!(back.generators(), dec.generators());
        assert_eq!(back.marked_segments(), dec.marked_segments());
        assert_eq!(back.tree_edges(), dec.tree_edges());
        assert!(is_independent(&back));
    }
}
