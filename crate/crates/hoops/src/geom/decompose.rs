//! Decomposition of a based loop into a word in independent generator
//! loops. A spanning tree of the loop's arrangement is chosen; every
//! non-tree edge alpha yields the generator
//!
//! ```text
//! gamma = (tree path to start of alpha) alpha (tree path back)
//! ```
//!
//! and the loop's walk transcribes to a word by recording non-tree
//! edges with signs. Tree paths never use non-tree edges, so each
//! generator traces its own non-tree edge exactly once; a centered
//! sub-segment of that edge, kept strictly inside the edge's clearance
//! ball, certifies independence.

use std::collections::BTreeMap;

use num_traits::One;

use crate::words::{GenSymbol, Word};

use super::arrangement::{
    build_arrangement, Arrangement, DirectedEdge, EdgeId, NodeId,
};
use super::point::{
    rational_sqrt_lower_bound, segment_contains, segment_meet, Point, Rat, SegmentMeet,
};
use super::polyline::{compose, invert_loop, PolyLoop};
use super::GeomError;

/// Deterministic spanning-tree construction orders. All choices give
/// the same reduced-word triviality; they differ in generator choice.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TreeHeuristic {
    /// Breadth-first from the root, lowest edge first.
    BfsLex,
    /// Depth-first from the root, lowest edge first.
    DfsLex,
    /// Breadth-first from the root, highest edge first.
    BfsLexReverse,
}

/// A spanning forest rooted at a chosen node, with the non-tree edges
/// in ascending order.
#[derive(Clone, Debug)]
pub struct SpanningTree {
    root: NodeId,
    parent: Vec<Option<(NodeId, EdgeId)>>,
    tree_edge: Vec<bool>,
    cotree: Vec<EdgeId>,
}

/// Grows a spanning tree of the arrangement graph from `root`. Nodes
/// outside the root's component get their own trees, smallest node
/// first, so the parent map is total.
pub fn spanning_tree(arr: &Arrangement, root: NodeId, heuristic: TreeHeuristic) -> SpanningTree {
    let n = arr.node_count();
    let mut parent: Vec<Option<(NodeId, EdgeId)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut tree_edge = vec![false; arr.edge_count()];
    let mut roots: Vec<NodeId> = vec![root];
    roots.extend((0..n).map(NodeId));
    for start in roots {
        if seen[start.0] {
            continue;
        }
        seen[start.0] = true;
        grow_component(arr, start, heuristic, &mut parent, &mut seen, &mut tree_edge);
    }
    let cotree = (0..arr.edge_count())
        .map(EdgeId)
        .filter(|e| !tree_edge[e.0])
        .collect();
    SpanningTree {
        root,
        parent,
        tree_edge,
        cotree,
    }
}

fn grow_component(
    arr: &Arrangement,
    start: NodeId,
    heuristic: TreeHeuristic,
    parent: &mut [Option<(NodeId, EdgeId)>],
    seen: &mut [bool],
    tree_edge: &mut [bool],
) {
    // The frontier doubles as queue (pop front) or stack (pop back).
    let mut frontier = std::collections::VecDeque::from([start]);
    while let Some(node) = match heuristic {
        TreeHeuristic::BfsLex | TreeHeuristic::BfsLexReverse => frontier.pop_front(),
        TreeHeuristic::DfsLex => frontier.pop_back(),
    } {
        let mut incident: Vec<EdgeId> = arr.edges_at(node).to_vec();
        match heuristic {
            TreeHeuristic::BfsLex => {}
            TreeHeuristic::BfsLexReverse => incident.reverse(),
            // Reversed pushes make the stack pop lowest edges first.
            TreeHeuristic::DfsLex => incident.reverse(),
        }
        for e in incident {
            let next = arr.other_end(e, node);
            if !seen[next.0] {
                seen[next.0] = true;
                parent[next.0] = Some((node, e));
                tree_edge[e.0] = true;
                frontier.push_back(next);
            }
        }
    }
}

impl SpanningTree {
    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn is_tree_edge(&self, e: EdgeId) -> bool {
        self.tree_edge[e.0]
    }

    /// Non-tree edges, ascending; their positions are canonical labels.
    pub fn cotree(&self) -> &[EdgeId] {
        &self.cotree
    }

    /// Directed walk from this tree's root down to `n`.
    pub fn path_from_root(&self, arr: &Arrangement, n: NodeId) -> Vec<DirectedEdge> {
        let mut steps = Vec::new();
        let mut cur = n;
        while let Some((par, edge)) = self.parent[cur.0] {
            let (lo, _) = arr.edge_endpoints(edge);
            steps.push(DirectedEdge {
                edge,
                forward: par == lo,
            });
            cur = par;
        }
        steps.reverse();
        steps
    }
}

/// Transcribes a walk to a word using canonical labels: non-tree edges
/// numbered in ascending order, positive in their forward direction.
/// Shared labels let transcriptions of different loops over one
/// arrangement be compared and multiplied.
pub fn transcribe_over(tree: &SpanningTree, walk: &[DirectedEdge]) -> Word {
    let mut symbols = Vec::new();
    for step in walk {
        if tree.is_tree_edge(step.edge) {
            continue;
        }
        let pos = tree
            .cotree
            .binary_search(&step.edge)
            .expect("non-tree edge is in the cotree");
        let index = u32::try_from(pos + 1).expect("generator count fits in u32");
        let symbol = GenSymbol::new(index, step.forward).expect("index is positive");
        symbols.push(symbol);
    }
    Word::from_symbols(symbols).reduce()
}

/// A once-traced sub-segment of a generator's non-tree edge, centered
/// at the edge midpoint, given in the generator's traversal order. A
/// ball of squared radius `clearance_sq` around the midpoint meets the
/// arrangement only in that edge, and the sub-segment stays strictly
/// inside both the ball and the open edge.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MarkedSegment {
    pub start: Point,
    pub end: Point,
    pub clearance_sq: Rat,
}

impl MarkedSegment {
    pub fn midpoint(&self) -> Point {
        self.start.midpoint(&self.end)
    }
}

/// A loop rewritten as a word in independent generator loops.
#[derive(Clone, Debug)]
pub struct Decomposition {
    dim: usize,
    basepoint: Point,
    generators: Vec<PolyLoop>,
    word: Word,
    marked: Vec<MarkedSegment>,
    tree_edges: Vec<(Point, Point)>,
}

impl Decomposition {
    /// Reassembles a decomposition from its exported parts.
    pub fn from_parts(
        basepoint: Point,
        generators: Vec<PolyLoop>,
        word: Word,
        marked: Vec<MarkedSegment>,
        tree_edges: Vec<(Point, Point)>,
    ) -> Result<Self, GeomError> {
        let dim = basepoint.dim();
        if generators.len() != marked.len() {
            return Err(GeomError::BadRecord(format!(
                "{} generators but {} marked segments",
                generators.len(),
                marked.len()
            )));
        }
        for g in &generators {
            if g.dim() != dim {
                return Err(GeomError::DimensionMismatch {
                    expected: dim,
                    got: g.dim(),
                });
            }
            if g.basepoint() != &basepoint {
                return Err(GeomError::BasepointMismatch);
            }
        }
        for s in &marked {
            if s.start.dim() != dim || s.end.dim() != dim {
                return Err(GeomError::DimensionMismatch {
                    expected: dim,
                    got: s.start.dim(),
                });
            }
        }
        if let Some(max) = word.generator_indices().into_iter().next_back() {
            if max as usize > generators.len() {
                return Err(GeomError::BadRecord(format!(
                    "word uses generator {max} but only {} exist",
                    generators.len()
                )));
            }
        }
        Ok(Decomposition {
            dim,
            basepoint,
            generators,
            word,
            marked,
            tree_edges,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basepoint(&self) -> &Point {
        &self.basepoint
    }

    pub fn generators(&self) -> &[PolyLoop] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn marked_segments(&self) -> &[MarkedSegment] {
        &self.marked
    }

    pub fn tree_edges(&self) -> &[(Point, Point)] {
        &self.tree_edges
    }

    /// Substitutes the generators into a word and composes the curves.
    pub fn evaluate(&self, word: &Word) -> Result<PolyLoop, GeomError> {
        let mut out = PolyLoop::constant(self.basepoint.clone());
        for &symbol in word.symbols() {
            let i = symbol.index() as usize;
            if i == 0 || i > self.generators.len() {
                return Err(GeomError::BadRecord(format!(
                    "word uses generator {i} but only {} exist",
                    self.generators.len()
                )));
            }
            let g = &self.generators[i - 1];
            let factor = if symbol.is_positive() {
                g.clone()
            } else {
                invert_loop(g)
            };
            out = compose(&out, &factor)?;
        }
        Ok(out)
    }
}

/// Decomposes a based loop using breadth-first lexicographic trees.
pub fn decompose(lp: &PolyLoop) -> Decomposition {
    decompose_with(lp, TreeHeuristic::BfsLex)
}

/// Decomposition with an explicit spanning-tree heuristic. Generators
/// are numbered in order of first traversal, positive in the direction
/// first traversed.
pub fn decompose_with(lp: &PolyLoop, heuristic: TreeHeuristic) -> Decomposition {
    let basepoint = lp.basepoint().clone();
    let path = match lp.as_path() {
        Some(p) => p,
        None => {
            return Decomposition {
                dim: basepoint.dim(),
                basepoint,
                generators: Vec::new(),
                word: Word::empty(),
                marked: Vec::new(),
                tree_edges: Vec::new(),
            }
        }
    };
    let arr = build_arrangement(std::slice::from_ref(&path)).expect("one path, one dimension");
    let root = arr.node_id(&basepoint).expect("basepoint is a vertex");
    let tree = spanning_tree(&arr, root, heuristic);
    let walk = arr.path_walk(0);

    // Label non-tree edges in first-traversal order; the direction of
    // the first traversal is the positive one.
    let mut label: BTreeMap<EdgeId, (u32, bool)> = BTreeMap::new();
    let mut first_steps: Vec<DirectedEdge> = Vec::new();
    let mut symbols = Vec::new();
    for &step in walk {
        if tree.is_tree_edge(step.edge) {
            continue;
        }
        let next_index = label.len() as u32 + 1;
        let &mut (index, positive_dir) = label
            .entry(step.edge)
            .or_insert_with(|| {
                first_steps.push(step);
                (next_index, step.forward)
            });
        let symbol =
            GenSymbol::new(index, step.forward == positive_dir).expect("index is positive");
        symbols.push(symbol);
    }
    let word = Word::from_symbols(symbols).reduce();

    let mut generators = Vec::new();
    let mut marked = Vec::new();
    for &step in &first_steps {
        let (from, to) = arr.traversal_endpoints(step);
        let mut gen_walk = tree.path_from_root(&arr, from);
        gen_walk.push(step);
        let back = tree.path_from_root(&arr, to);
        gen_walk.extend(back.iter().rev().map(|s| s.reversed()));
        generators.push(walk_to_loop(&arr, root, &gen_walk));
        marked.push(mark_segment(&arr, step));
    }

    let tree_edges = (0..arr.edge_count())
        .map(EdgeId)
        .filter(|&e| tree.is_tree_edge(e))
        .map(|e| {
            let (u, v) = arr.edge_endpoints(e);
            (arr.node_point(u).clone(), arr.node_point(v).clone())
        })
        .collect();

    Decomposition {
        dim: basepoint.dim(),
        basepoint,
        generators,
        word,
        marked,
        tree_edges,
    }
}

/// Turns a directed edge walk starting at `root` into a based loop.
fn walk_to_loop(arr: &Arrangement, root: NodeId, walk: &[DirectedEdge]) -> PolyLoop {
    let mut verts = vec![arr.node_point(root).clone()];
    let mut cur = root;
    for &step in walk {
        let (from, to) = arr.traversal_endpoints(step);
        debug_assert_eq!(from, cur, "walk steps chain end to start");
        verts.push(arr.node_point(to).clone());
        cur = to;
    }
    debug_assert_eq!(cur, root, "generator walks return to the root");
    PolyLoop::new(verts).expect("edge walk is a valid closed cycle")
}

/// Centers a marked sub-segment on the edge midpoint, scaled to stay
/// strictly inside the clearance ball and the open edge.
fn mark_segment(arr: &Arrangement, step: DirectedEdge) -> MarkedSegment {
    let (from, to) = arr.traversal_endpoints(step);
    let clearance_sq = arr.clearance_sq(step.edge);
    let m = arr.edge_midpoint(step.edge);
    let half: Vec<Rat> = arr
        .node_point(to)
        .sub(arr.node_point(from))
        .into_iter()
        .map(|c| c / Rat::from_integer(2.into()))
        .collect();
    let half_sq = super::point::dot(&half, &half);
    let ratio = &clearance_sq / &half_sq;
    let shrink = if ratio >= Rat::one() {
        Rat::one()
    } else {
        rational_sqrt_lower_bound(&ratio)
    };
    let s = shrink * Rat::new(3.into(), 4.into());
    let start = m.add_scaled(&half, &(-&s));
    let end = m.add_scaled(&half, &s);
    MarkedSegment {
        start,
        end,
        clearance_sq,
    }
}

/// Exact independence check: every marked segment is contained in
/// exactly one segment of its own generator and meets no other segment
/// of any generator, and marked segments are pairwise disjoint.
pub fn is_independent(dec: &Decomposition) -> bool {
    for (i, mark) in dec.marked.iter().enumerate() {
        let mut containments = 0usize;
        for (j, gen) in dec.generators.iter().enumerate() {
            for (a, b) in gen.segments() {
                if i == j && segment_contains(a, b, &mark.start, &mark.end) {
                    containments += 1;
                    continue;
                }
                if segment_meet(a, b, &mark.start, &mark.end) != SegmentMeet::Empty {
                    return false;
                }
            }
        }
        if containments != 1 {
            return false;
        }
    }
    for i in 0..dec.marked.len() {
        for j in i + 1..dec.marked.len() {
            let (a, b) = (&dec.marked[i], &dec.marked[j]);
            if segment_meet(&a.start, &a.end, &b.start, &b.end) != SegmentMeet::Empty {
                return false;
            }
        }
    }
    true
}

/// Equality in the group of loops: transcribe both loops over their
/// joint arrangement and compare; the product with one side inverted
/// reduces to the empty word exactly when the loops agree up to
/// retracings and reparameterization.
pub fn loop_equal(a: &PolyLoop, b: &PolyLoop) -> Result<bool, GeomError> {
    if a.basepoint() != b.basepoint() {
        return Err(GeomError::BasepointMismatch);
    }
    let mut paths = Vec::new();
    if let Some(p) = a.as_path() {
        paths.push(p);
    }
    if let Some(p) = b.as_path() {
        paths.push(p);
    }
    if paths.is_empty() {
        return Ok(true);
    }
    let arr = build_arrangement(&paths)?;
    let root = arr
        .node_id(a.basepoint())
        .expect("shared basepoint is a vertex of the joint arrangement");
    let tree = spanning_tree(&arr, root, TreeHeuristic::BfsLex);
    let wa = transcribe_over(&tree, &arr.walk_of_loop(a)?);
    let wb = transcribe_over(&tree, &arr.walk_of_loop(b)?);
    Ok(wa.multiply(&wb.inverse()).is_empty())
}

#[cfg(test)]
mod tests {
    use num_traits::Zero;

    use super::super::arrangement::reduced_walk;
    use super::super::point::squared_distance_point_segment;
    use super::*;

    fn pt(coords: &[i64]) -> Point {
        Point::from_integers(coords)
    }

    fn lp(coords: &[&[i64]]) -> PolyLoop {
        PolyLoop::new(coords.iter().map(|c| pt(c)).collect()).unwrap()
    }

    fn figure_eight() -> PolyLoop {
        lp(&[
            &[0, 0],
            &[2, 0],
            &[1, 2],
            &[0, 0],
            &[-2, 0],
            &[-1, -2],
            &[0, 0],
        ])
    }

    #[test]
    fn triangle_decomposes_to_single_generator() {
        let t = lp(&[&[0, 0], &[2, 0], &[1, 2], &[0, 0]]);
        let dec = decompose(&t);
        assert_eq!(dec.word().to_signed(), vec![1]);
        assert_eq!(dec.generator_count(), 1);
        let g = &dec.generators()[0];
        assert_eq!(g.basepoint(), t.basepoint());
        assert!(loop_equal(g, &t).unwrap(), "generator is the triangle");
    }

    #[test]
    fn figure_eight_decomposes_to_two_generators() {
        let dec = decompose(&figure_eight());
        assert_eq!(dec.word().to_signed(), vec![1, 2]);
        assert_eq!(dec.generator_count(), 2);
        assert!(is_independent(&dec));
    }

    #[test]
    fn spur_decomposes_to_empty_word() {
        let spur = lp(&[&[0, 0], &[3, 1], &[0, 0]]);
        let dec = decompose(&spur);
        assert!(dec.word().is_empty());
        assert_eq!(dec.generator_count(), 0);
        assert!(is_independent(&dec), "vacuously independent");
    }

    #[test]
    fn doubled_triangle_decomposes_to_squared_generator() {
        let twice = lp(&[
            &[0, 0],
            &[2, 0],
            &[1, 2],
            &[0, 0],
            &[2, 0],
            &[1, 2],
            &[0, 0],
        ]);
        let dec = decompose(&twice);
        assert_eq!(dec.word().to_signed(), vec![1, 1]);
        assert_eq!(dec.generator_count(), 1);
    }

    #[test]
    fn commutator_traversal_transcribes_to_commutator_word() {
        let w = lp(&[
            &[0, 0],
            &[2, 0],
            &[1, 2],
            &[0, 0],
            &[-2, 0],
            &[-1, -2],
            &[0, 0],
            &[1, 2],
            &[2, 0],
            &[0, 0],
            &[-1, -2],
            &[-2, 0],
            &[0, 0],
        ]);
        let dec = decompose(&w);
        assert_eq!(dec.word().to_signed(), vec![1, 2, -1, -2]);
        assert!(dec.word().exponent_vector().is_zero());
    }

    #[test]
    fn evaluating_the_word_reproduces_the_loop() {
        for input in [
            lp(&[&[0, 0], &[2, 0], &[1, 2], &[0, 0]]),
            figure_eight(),
            lp(&[&[0, 0], &[4, 0], &[4, 4], &[0, 4], &[0, 0], &[4, 4], &[0, 0]]),
        ] {
            let dec = decompose(&input);
            let rebuilt = dec.evaluate(dec.word()).unwrap();
            let arr =
                build_arrangement(std::slice::from_ref(&input.as_path().unwrap())).unwrap();
            let wa = reduced_walk(&arr.walk_of_loop(&input).unwrap());
            let wb = reduced_walk(&arr.walk_of_loop(&rebuilt).unwrap());
            assert_eq!(wa, wb, "reduced edge walks agree");
        }
    }

    #[test]
    fn marked_segments_sit_inside_clearance_balls() {
        let dec = decompose(&figure_eight());
        for mark in dec.marked_segments() {
            assert!(mark.clearance_sq > Rat::zero());
            let m = mark.midpoint();
            for p in [&mark.start, &mark.end] {
                let d = p.sub(&m);
                let d_sq = super::super::point::dot(&d, &d);
                assert!(d_sq < mark.clearance_sq, "marked end inside the ball");
                assert!(d_sq > Rat::zero(), "marked segment has positive length");
            }
        }
    }

    #[test]
    fn clearance_balls_miss_the_rest_of_the_arrangement() {
        let input = figure_eight();
        let dec = decompose(&input);
        let arr = build_arrangement(std::slice::from_ref(&input.as_path().unwrap())).unwrap();
        for mark in dec.marked_segments() {
            let m = mark.midpoint();
            let mut containing = 0usize;
            for &(u, v) in arr.edges() {
                let d = squared_distance_point_segment(&m, arr.node_point(u), arr.node_point(v));
                if d < mark.clearance_sq {
                    containing += 1;
                    assert!(
                        segment_contains(arr.node_point(u), arr.node_point(v), &mark.start, &mark.end),
                        "only the marked edge enters its own ball"
                    );
                }
            }
            assert_eq!(containing, 1, "ball meets exactly one edge");
        }
    }

    #[test]
    fn shared_marked_segments_fail_independence() {
        let dec = decompose(&figure_eight());
        let mut marked = dec.marked_segments().to_vec();
        marked[1] = marked[0].clone();
        let mut generators = dec.generators().to_vec();
        generators[1] = generators[0].clone();
        let broken = Decomposition::from_parts(
            dec.basepoint().clone(),
            generators,
            dec.word().clone(),
            marked,
            dec.tree_edges().to_vec(),
        )
        .unwrap();
        assert!(!is_independent(&broken));
    }

    #[test]
    fn word_triviality_is_tree_invariant() {
        let trivial = lp(&[
            &[0, 0],
            &[2, 0],
            &[1, 2],
            &[0, 0],
            &[1, 2],
            &[2, 0],
            &[0, 0],
        ]);
        let nontrivial = figure_eight();
        for h in [
            TreeHeuristic::BfsLex,
            TreeHeuristic::DfsLex,
            TreeHeuristic::BfsLexReverse,
        ] {
            assert!(decompose_with(&trivial, h).word().is_empty(), "{h:?}");
            assert!(!decompose_with(&nontrivial, h).word().is_empty(), "{h:?}");
        }
    }

    #[test]
    fn generator_exponents_match_net_edge_traversals() {
        // The exponent of each generator must equal the net signed
        // traversal count of its non-tree edge, read off the raw walk.
        let inputs = [
            figure_eight(),
            lp(&[
                &[0, 0],
                &[4, 0],
                &[4, 4],
                &[0, 4],
                &[0, 0],
                &[4, 4],
                &[0, 0],
            ]),
        ];
        for input in inputs {
            for h in [
                TreeHeuristic::BfsLex,
                TreeHeuristic::DfsLex,
                TreeHeuristic::BfsLexReverse,
            ] {
                let dec = decompose_with(&input, h);
                let arr =
                    build_arrangement(std::slice::from_ref(&input.as_path().unwrap())).unwrap();
                let walk = arr.path_walk(0);
                let exps = dec.word().exponent_vector();
                for (i, mark) in dec.marked_segments().iter().enumerate() {
                    let mid = mark.midpoint();
                    let dir = mark.end.sub(&mark.start);
                    let mut net = 0i64;
                    for &step in walk {
                        if arr.edge_midpoint(step.edge) != mid {
                            continue;
                        }
                        let (u, v) = arr.edge_endpoints(step.edge);
                        let edge_dir = arr.node_point(v).sub(arr.node_point(u));
                        let same = super::super::point::dot(&dir, &edge_dir)
                            > Rat::zero();
                        let traversal_positive = step.forward == same;
                        net += if traversal_positive { 1 } else { -1 };
                    }
                    assert_eq!(
                        exps.get(i as u32 + 1),
                        net,
                        "generator {i} under {h:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn loop_equal_accepts_retracing_and_reparameterization() {
        let t = lp(&[&[0, 0], &[2, 0], &[1, 2], &[0, 0]]);
        let with_spur = lp(&[
            &[0, 0],
            &[2, 0],
            &[3, 3],
            &[2, 0],
            &[1, 2],
            &[0, 0],
        ]);
        assert!(loop_equal(&t, &with_spur).unwrap());
        let with_vertex = lp(&[&[0, 0], &[1, 0], &[2, 0], &[1, 2], &[0, 0]]);
        assert!(loop_equal(&t, &with_vertex).unwrap());
    }

    #[test]
    fn loop_equal_rejects_reversal_and_mismatch() {
        let t = lp(&[&[0, 0], &[2, 0], &[1, 2], &[0, 0]]);
        assert!(!loop_equal(&t, &invert_loop(&t)).unwrap());
        let elsewhere = lp(&[&[1, 2], &[0, 0], &[2, 0], &[1, 2]]);
        assert!(matches!(
            loop_equal(&t, &elsewhere),
            Err(GeomError::BasepointMismatch)
        ));
        let constant = PolyLoop::constant(pt(&[0, 0]));
        assert!(!loop_equal(&t, &constant).unwrap());
        assert!(loop_equal(&constant, &constant).unwrap());
    }

    #[test]
    fn transcription_is_a_homomorphism_over_a_joint_arrangement() {
        let a = lp(&[&[0, 0], &[2, 0], &[1, 2], &[0, 0]]);
        let b = figure_eight();
        let ab = compose(&a, &b).unwrap();
        let paths = [a.as_path().unwrap(), b.as_path().unwrap()];
        let arr = build_arrangement(&paths).unwrap();
        let root = arr.node_id(&pt(&[0, 0])).unwrap();
        let tree = spanning_tree(&arr, root, TreeHeuristic::BfsLex);
        let wa = transcribe_over(&tree, &arr.walk_of_loop(&a).unwrap());
        let wb = transcribe_over(&tree, &arr.walk_of_loop(&b).unwrap());
        let wab = transcribe_over(&tree, &arr.walk_of_loop(&ab).unwrap());
        assert_eq!(wa.multiply(&wb), wab);
        let winv = transcribe_over(&tree, &arr.walk_of_loop(&invert_loop(&a)).unwrap());
        assert_eq!(wa.inverse(), winv);
    }
}
