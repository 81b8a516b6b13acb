//! Grid drawings and their JSON interchange format.
//!
//! Coordinates follow the screen convention: `y` grows downward, so row 0
//! is the topmost row and a parent drawn "above" its child has the smaller
//! `y`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tree::{NodeId, OrderedTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

/// An edge from `from` (the parent) to `to`, with at most one bend.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: NodeId,
    pub to: NodeId,
    pub bend: Option<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridDrawing {
    /// Position of node `v` at index `v`.
    pub positions: Vec<Point>,
    /// Edges sorted by child id; the edge into node `v` (v > 0) is
    /// `edges[v - 1]`.
    pub edges: Vec<Edge>,
    /// Vertically drawn path per recursion level, keyed by its first node.
    pub spines: BTreeMap<NodeId, Vec<NodeId>>,
    /// Optional embedded tree, as its parenthesis encoding.
    pub tree: Option<String>,
}

#[derive(Debug, Error)]
pub enum DrawingError {
    #[error("malformed drawing: {0}")]
    Malformed(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

/// Bounding box, inclusive on both ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BBox {
    pub x0: i64,
    pub x1: i64,
    pub y0: i64,
    pub y1: i64,
}

impl BBox {
    pub fn point(p: Point) -> Self {
        BBox { x0: p.x, x1: p.x, y0: p.y, y1: p.y }
    }

    pub fn include(&mut self, p: Point) {
        self.x0 = self.x0.min(p.x);
        self.x1 = self.x1.max(p.x);
        self.y0 = self.y0.min(p.y);
        self.y1 = self.y1.max(p.y);
    }

    pub fn union(&mut self, other: &BBox) {
        self.x0 = self.x0.min(other.x0);
        self.x1 = self.x1.max(other.x1);
        self.y0 = self.y0.min(other.y0);
        self.y1 = self.y1.max(other.y1);
    }

    pub fn width(&self) -> i64 {
        self.x1 - self.x0 + 1
    }

    pub fn height(&self) -> i64 {
        self.y1 - self.y0 + 1
    }

    pub fn shifted(&self, dx: i64, dy: i64) -> BBox {
        BBox { x0: self.x0 + dx, x1: self.x1 + dx, y0: self.y0 + dy, y1: self.y1 + dy }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metrics {
    pub width: i64,
    pub height: i64,
    pub area: i64,
    pub bends: usize,
}

impl GridDrawing {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn position(&self, v: NodeId) -> Point {
        self.positions[v]
    }

    /// The edge entering `v`, if `v` is not the root.
    pub fn edge_into(&self, v: NodeId) -> Option<&Edge> {
        if v == 0 {
            None
        } else {
            self.edges.get(v - 1)
        }
    }

    pub fn bend_count(&self) -> usize {
        self.edges.iter().filter(|e| e.bend.is_some()).count()
    }

    /// All node and bend points.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.positions.iter().copied().chain(self.edges.iter().filter_map(|e| e.bend))
    }

    pub fn bbox(&self) -> BBox {
        let mut it = self.points();
        let first = it.next().expect("drawing has at least one node");
        let mut b = BBox::point(first);
        for p in it {
            b.include(p);
        }
        b
    }

    /// Recovers the tree from the edges. Node ids are preorder, so child
    /// order is id order.
    pub fn to_tree(&self) -> Result<OrderedTree, DrawingError> {
        let n = self.len();
        let mut parent = vec![None; n];
        for e in &self.edges {
            if e.to >= n || e.from >= n {
                return Err(DrawingError::Malformed(format!("edge {}->{} out of range", e.from, e.to)));
            }
            if parent[e.to].replace(e.from).is_some() {
                return Err(DrawingError::Malformed(format!("node {} has two parents", e.to)));
            }
        }
        OrderedTree::from_preorder_parents(&parent).map_err(|e| DrawingError::Malformed(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let doc = JsonDrawing::from(self);
        serde_json::to_string_pretty(&doc).expect("drawing serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, DrawingError> {
        let doc: JsonDrawing = serde_json::from_str(text)?;
        GridDrawing::try_from(doc)
    }
}

pub fn measure(d: &GridDrawing) -> Metrics {
    let b = d.bbox();
    Metrics {
        width: b.width(),
        height: b.height(),
        area: b.width() * b.height(),
        bends: d.bend_count(),
    }
}

#[derive(Serialize, Deserialize)]
struct JsonNode {
    id: NodeId,
    x: i64,
    y: i64,
}

#[derive(Serialize, Deserialize)]
struct JsonEdge {
    from: NodeId,
    to: NodeId,
    bends: Vec<[i64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct JsonDrawing {
    n: usize,
    nodes: Vec<JsonNode>,
    edges: Vec<JsonEdge>,
    spines: BTreeMap<String, Vec<NodeId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tree: Option<String>,
}

impl From<&GridDrawing> for JsonDrawing {
    fn from(d: &GridDrawing) -> Self {
        // numeric key order, not lexicographic
        let spines = d.spines.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        JsonDrawing {
            n: d.len(),
            nodes: d
                .positions
                .iter()
                .enumerate()
                .map(|(id, p)| JsonNode { id, x: p.x, y: p.y })
                .collect(),
            edges: d
                .edges
                .iter()
                .map(|e| JsonEdge { from: e.from, to: e.to, bends: e.bend.iter().map(|b| [b.x, b.y]).collect() })
                .collect(),
            spines,
            tree: d.tree.clone(),
        }
    }
}

impl TryFrom<JsonDrawing> for GridDrawing {
    type Error = DrawingError;

    fn try_from(doc: JsonDrawing) -> Result<Self, Self::Error> {
        let bad = |m: String| Err(DrawingError::Malformed(m));
        if doc.n == 0 {
            return bad("drawing has no nodes".into());
        }
        if doc.nodes.len() != doc.n {
            return bad(format!("n = {} but {} nodes listed", doc.n, doc.nodes.len()));
        }
        let mut positions: Vec<Option<Point>> = vec![None; doc.n];
        for node in &doc.nodes {
            match positions.get_mut(node.id) {
                Some(slot @ None) => *slot = Some(Point::new(node.x, node.y)),
                Some(Some(_)) => return bad(format!("node {} listed twice", node.id)),
                None => return bad(format!("node id {} out of range", node.id)),
            }
        }
        let positions: Vec<Point> = positions.into_iter().map(|p| p.expect("all ids filled")).collect();
        if doc.edges.len() != doc.n - 1 {
            return bad(format!("expected {} edges, found {}", doc.n - 1, doc.edges.len()));
        }
        let mut edges: Vec<Option<Edge>> = vec![None; doc.n - 1];
        for e in &doc.edges {
            if e.to == 0 || e.to >= doc.n || e.from >= doc.n {
                return bad(format!("edge {}->{} out of range", e.from, e.to));
            }
            if e.bends.len() > 1 {
                return bad(format!("edge {}->{} has {} bends", e.from, e.to, e.bends.len()));
            }
            let slot = &mut edges[e.to - 1];
            if slot.is_some() {
                return bad(format!("node {} has two incoming edges", e.to));
            }
            *slot = Some(Edge { from: e.from, to: e.to, bend: e.bends.first().map(|b| Point::new(b[0], b[1])) });
        }
        let edges = edges.into_iter().map(|e| e.expect("all edges filled")).collect();
        let mut spines = BTreeMap::new();
        for (k, v) in doc.spines {
            let key: NodeId = k.parse().map_err(|_| DrawingError::Malformed(format!("bad spine key {k:?}")))?;
            spines.insert(key, v);
        }
        Ok(GridDrawing { positions, edges, spines, tree: doc.tree })
    }
}
