//! Arrangements of rational segments. Input paths are cut at every
//! pairwise meeting point, so the resulting edges meet only at nodes
//! and coincident sub-segments become one shared edge. Each input path
//! is then a walk along whole edges.

use std::collections::{BTreeMap, BTreeSet};

use super::point::{
    point_on_segment, segment_meet, squared_distance_point_segment, Point, Rat, SegmentMeet,
};
use super::polyline::{PolyLoop, PolyPath};
use super::GeomError;

/// Index of a node; nodes are numbered in lexicographic point order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NodeId(pub usize);

/// Index of an edge; edges are numbered in sorted endpoint-pair order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeId(pub usize);

/// One edge traversal; `forward` runs from the lower node to the higher.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DirectedEdge {
    pub edge: EdgeId,
    pub forward: bool,
}

impl DirectedEdge {
    pub fn reversed(self) -> Self {
        DirectedEdge {
            edge: self.edge,
            forward: !self.forward,
        }
    }

    /// True when the two traversals retrace each other.
    pub fn cancels(self, other: Self) -> bool {
        self.edge == other.edge && self.forward != other.forward
    }
}

/// A segment arrangement: nodes, edges between them, and the walks the
/// input paths take along those edges. Immutable once built.
#[derive(Clone, Debug)]
pub struct Arrangement {
    dim: usize,
    nodes: Vec<Point>,
    edges: Vec<(NodeId, NodeId)>,
    edge_index: BTreeMap<(NodeId, NodeId), EdgeId>,
    adjacency: Vec<Vec<EdgeId>>,
    walks: Vec<Vec<DirectedEdge>>,
}

/// Cuts the given paths at all pairwise intersections and overlaps.
pub fn build_arrangement(paths: &[PolyPath]) -> Result<Arrangement, GeomError> {
    let dim = match paths.first() {
        Some(p) => p.dim(),
        None => {
            return Ok(Arrangement {
                dim: 0,
                nodes: Vec::new(),
                edges: Vec::new(),
                edge_index: BTreeMap::new(),
                adjacency: Vec::new(),
                walks: Vec::new(),
            })
        }
    };
    for p in paths {
        if p.dim() != dim {
            return Err(GeomError::DimensionMismatch {
                expected: dim,
                got: p.dim(),
            });
        }
    }

    // Nodes: every vertex plus every pairwise meeting point. A shared
    // sub-segment contributes its two endpoints; the interior needs no
    // new nodes because segment splitting identifies the overlap.
    let segments: Vec<(&Point, &Point)> = paths.iter().flat_map(|p| p.segments()).collect();
    let mut points: BTreeSet<Point> = BTreeSet::new();
    for p in paths {
        points.extend(p.vertices().iter().cloned());
    }
    for i in 0..segments.len() {
        for j in i + 1..segments.len() {
            match segment_meet(segments[i].0, segments[i].1, segments[j].0, segments[j].1) {
                SegmentMeet::Empty => {}
                SegmentMeet::AtPoint(p) => {
                    points.insert(p);
                }
                SegmentMeet::Overlap(p, q) => {
                    points.insert(p);
                    points.insert(q);
                }
            }
        }
    }
    let nodes: Vec<Point> = points.into_iter().collect();

    // Edges: split every segment at the nodes it passes through; the
    // unordered pair of consecutive nodes is the edge's identity.
    let mut pairs: BTreeSet<(NodeId, NodeId)> = BTreeSet::new();
    for &(a, b) in &segments {
        let hits = nodes_on_segment(&nodes, a, b);
        debug_assert!(hits.len() >= 2, "segment endpoints are nodes");
        for w in hits.windows(2) {
            pairs.insert(ordered_pair(w[0].1, w[1].1));
        }
    }
    let edges: Vec<(NodeId, NodeId)> = pairs.into_iter().collect();
    let edge_index: BTreeMap<(NodeId, NodeId), EdgeId> = edges
        .iter()
        .enumerate()
        .map(|(i, &pair)| (pair, EdgeId(i)))
        .collect();
    let mut adjacency = vec![Vec::new(); nodes.len()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        adjacency[u.0].push(EdgeId(i));
        adjacency[v.0].push(EdgeId(i));
    }

    let mut arr = Arrangement {
        dim,
        nodes,
        edges,
        edge_index,
        adjacency,
        walks: Vec::new(),
    };
    for p in paths {
        let walk = arr
            .walk_of_path(p)
            .expect("input path lies on its own arrangement");
        arr.walks.push(walk);
    }
    Ok(arr)
}

/// All nodes lying on `[a, b]`, sorted by segment parameter.
fn nodes_on_segment(nodes: &[Point], a: &Point, b: &Point) -> Vec<(Rat, NodeId)> {
    let mut hits: Vec<(Rat, NodeId)> = nodes
        .iter()
        .enumerate()
        .filter_map(|(i, p)| point_on_segment(p, a, b).map(|t| (t, NodeId(i))))
        .collect();
    hits.sort();
    hits
}

fn ordered_pair(u: NodeId, v: NodeId) -> (NodeId, NodeId) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Arrangement {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> &[Point] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn node_point(&self, n: NodeId) -> &Point {
        &self.nodes[n.0]
    }

    pub fn node_id(&self, p: &Point) -> Option<NodeId> {
        self.nodes.binary_search(p).ok().map(NodeId)
    }

    pub fn edge_endpoints(&self, e: EdgeId) -> (NodeId, NodeId) {
        self.edges[e.0]
    }

    pub fn edge_between(&self, u: NodeId, v: NodeId) -> Option<EdgeId> {
        self.edge_index.get(&ordered_pair(u, v)).copied()
    }

    /// Edges incident with a node, ascending.
    pub fn edges_at(&self, n: NodeId) -> &[EdgeId] {
        &self.adjacency[n.0]
    }

    pub fn other_end(&self, e: EdgeId, n: NodeId) -> NodeId {
        let (u, v) = self.edges[e.0];
        if n == u {
            v
        } else {
            u
        }
    }

    /// Where a directed traversal of the edge starts and ends.
    pub fn traversal_endpoints(&self, d: DirectedEdge) -> (NodeId, NodeId) {
        let (u, v) = self.edges[d.edge.0];
        if d.forward {
            (u, v)
        } else {
            (v, u)
        }
    }

    pub fn edge_midpoint(&self, e: EdgeId) -> Point {
        let (u, v) = self.edges[e.0];
        self.nodes[u.0].midpoint(&self.nodes[v.0])
    }

    /// The walk the i-th input path takes along the edges.
    pub fn path_walk(&self, i: usize) -> &[DirectedEdge] {
        &self.walks[i]
    }

    /// Translates a path into directed edges, splitting its segments at
    /// the nodes they pass through. Fails if any piece between
    /// consecutive nodes is not an arrangement edge.
    pub fn walk_of_path(&self, path: &PolyPath) -> Result<Vec<DirectedEdge>, GeomError> {
        let mut walk = Vec::new();
        for (a, b) in path.segments() {
            let hits = nodes_on_segment(&self.nodes, a, b);
            let endpoints_hit = hits.first().map(|h| self.nodes[h.1 .0] == *a).unwrap_or(false)
                && self.nodes[hits.last().expect("nonempty").1 .0] == *b;
            if !endpoints_hit {
                return Err(GeomError::NotOnArrangement(format!(
                    "segment {a} to {b} has a non-node endpoint"
                )));
            }
            for w in hits.windows(2) {
                let (u, v) = (w[0].1, w[1].1);
                let edge = self.edge_between(u, v).ok_or_else(|| {
                    GeomError::NotOnArrangement(format!(
                        "no edge between {} and {}",
                        self.nodes[u.0], self.nodes[v.0]
                    ))
                })?;
                walk.push(DirectedEdge {
                    edge,
                    forward: u < v,
                });
            }
        }
        Ok(walk)
    }

    /// Directed edge walk of a based loop; the constant loop walks nowhere.
    pub fn walk_of_loop(&self, lp: &PolyLoop) -> Result<Vec<DirectedEdge>, GeomError> {
        match lp.as_path() {
            None => Ok(Vec::new()),
            Some(path) => self.walk_of_path(&path),
        }
    }

    /// Exact squared clearance of an edge: the squared distance from its
    /// midpoint to the nearest point of any other edge. Positive, since
    /// edge interiors are disjoint and contain no nodes. An arrangement
    /// with a single edge falls back to the squared half-length.
    pub fn clearance_sq(&self, e: EdgeId) -> Rat {
        let m = self.edge_midpoint(e);
        let mut best: Option<Rat> = None;
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if i == e.0 {
                continue;
            }
            let d = squared_distance_point_segment(&m, &self.nodes[u.0], &self.nodes[v.0]);
            best = Some(match best {
                None => d,
                Some(cur) => cur.min(d),
            });
        }
        best.unwrap_or_else(|| {
            let (u, _) = self.edges[e.0];
            let h = m.sub(&self.nodes[u.0]);
            super::point::dot(&h, &h)
        })
    }
}

/// Removes adjacent retraced traversals until none remain; the graph
/// counterpart of retracing reduction on curves.
pub fn reduced_walk(walk: &[DirectedEdge]) -> Vec<DirectedEdge> {
    let mut out: Vec<DirectedEdge> = Vec::with_capacity(walk.len());
    for &step in walk {
        if out.last().is_some_and(|&last| last.cancels(step)) {
            out.pop();
        } else {
            out.push(step);
        }
    }
    out
}
