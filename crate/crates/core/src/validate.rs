//! Geometric verification of drawings.
//!
//! Every check works from the tree and the drawing alone, with exact
//! integer arithmetic. Spine-based conditions (P1, P2, P4, P5, P8 and the
//! width recurrence) read the spine certificate stored in the drawing.
//! Strips for P3 to P5 are closed y-intervals over node rows; bends do not
//! count as nodes.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::drawing::{GridDrawing, Point};
use crate::geom::{cross, dir, dot, intersection_point, orient, segments_intersect};
use crate::tree::{NodeId, OrderedTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    Planar,
    Order,
    Upward,
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    P7,
    P8,
}

impl Condition {
    pub const ALL: [Condition; 11] = [
        Condition::Planar,
        Condition::Order,
        Condition::Upward,
        Condition::P1,
        Condition::P2,
        Condition::P3,
        Condition::P4,
        Condition::P5,
        Condition::P6,
        Condition::P7,
        Condition::P8,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Condition::Planar => "planar",
            Condition::Order => "order",
            Condition::Upward => "upward",
            Condition::P1 => "p1",
            Condition::P2 => "p2",
            Condition::P3 => "p3",
            Condition::P4 => "p4",
            Condition::P5 => "p5",
            Condition::P6 => "p6",
            Condition::P7 => "p7",
            Condition::P8 => "p8",
        }
    }

    /// Parses a comma separated list such as `planar,order,p1,p2`.
    pub fn parse_list(text: &str) -> Result<Vec<Condition>, ValidateError> {
        let mut out: Vec<Condition> = Vec::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let c: Condition = part.parse()?;
            if !out.contains(&c) {
                out.push(c);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Condition {
    type Err = ValidateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Condition::ALL
            .iter()
            .copied()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| ValidateError::UnknownCondition(s.to_string()))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ValidateError {
    #[error("drawing does not match tree: {0}")]
    Mismatch(String),
    #[error("zero-length segment on edge into node {0}")]
    ZeroLength(NodeId),
    #[error("spine certificate: {0}")]
    Certificate(String),
    #[error("unknown condition {0:?}")]
    UnknownCondition(String),
}

/// One segment of a drawn edge, named by the child the edge enters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SegmentRef {
    pub edge_to: NodeId,
    pub from: Point,
    pub to: Point,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    SharedPoint { what: String, at: Point },
    Crossing { a: SegmentRef, b: SegmentRef, at: [f64; 2] },
    ChildOrder { node: NodeId, expected: Vec<NodeId>, found: Vec<NodeId> },
    NotUpward { parent: NodeId, child: NodeId },
    SpineNotVertical { spine: NodeId, node: NodeId },
    ColumnUsed { spine: NodeId, subtree: NodeId, column: i64 },
    Strip { anchor: NodeId, y0: i64, y1: i64, intruders: usize },
    Bend { edge_to: NodeId, at: Point },
    Distance { spine: NodeId, subtree: NodeId, gap: i64 },
    EmptyRow { y: i64 },
    Width { spine: NodeId, width: i64, bound: i64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail(Witness),
}

impl Outcome {
    pub fn passed(&self) -> bool {
        matches!(self, Outcome::Pass)
    }

    fn from_witness(w: Option<Witness>) -> Self {
        w.map_or(Outcome::Pass, Outcome::Fail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub results: BTreeMap<Condition, Outcome>,
}

impl ValidationReport {
    pub fn passed(&self, c: Condition) -> bool {
        self.results.get(&c).is_some_and(Outcome::passed)
    }

    pub fn all_passed(&self) -> bool {
        self.results.values().all(Outcome::passed)
    }

    pub fn failures(&self) -> Vec<Condition> {
        self.results.iter().filter(|(_, o)| !o.passed()).map(|(c, _)| *c).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, o) in &self.results {
            match o {
                Outcome::Pass => writeln!(f, "{c:<7} PASS")?,
                Outcome::Fail(w) => writeln!(
                    f,
                    "{c:<7} FAIL  {}",
                    serde_json::to_string(w).unwrap_or_else(|_| format!("{w:?}"))
                )?,
            }
        }
        Ok(())
    }
}

/// Runs the requested checks.
pub fn validate(t: &OrderedTree, d: &GridDrawing, which: &[Condition]) -> Result<ValidationReport, ValidateError> {
    check_consistency(t, d)?;
    let needs_spines = which
        .iter()
        .any(|c| matches!(c, Condition::P1 | Condition::P2 | Condition::P4 | Condition::P5 | Condition::P8));
    let ctx = if needs_spines { Some(Context::new(t, d)?) } else { None };
    let extents = Extents::new(t, d);
    let mut report = ValidationReport::default();
    for &c in which {
        let outcome = match c {
            Condition::Planar => check_planar(t, d)?,
            Condition::Order => check_order_preserving(t, d)?,
            Condition::Upward | Condition::P7 => check_upward(t, d, true)?,
            Condition::P1 => Outcome::from_witness(ctx.as_ref().unwrap().p1(d)),
            Condition::P2 => Outcome::from_witness(ctx.as_ref().unwrap().p2(&extents)),
            Condition::P3 => Outcome::from_witness(p3(t, d, &extents)),
            Condition::P4 => Outcome::from_witness(ctx.as_ref().unwrap().p4(d, &extents)),
            Condition::P5 => Outcome::from_witness(ctx.as_ref().unwrap().p5(d, &extents)),
            Condition::P6 => Outcome::from_witness(p6(d)),
            Condition::P8 => Outcome::from_witness(ctx.as_ref().unwrap().p8(d, &extents)),
        };
        report.results.insert(c, outcome);
    }
    Ok(report)
}

/// P3 to P8 only, as a report.
pub fn check_conditions(t: &OrderedTree, d: &GridDrawing, which: &[Condition]) -> Result<ValidationReport, ValidateError> {
    if let Some(c) = which.iter().find(|c| matches!(c, Condition::Planar | Condition::Order | Condition::Upward | Condition::P1 | Condition::P2)) {
        return Err(ValidateError::UnknownCondition(format!("{c} is not one of p3..p8")));
    }
    validate(t, d, which)
}

/// P1 and P2 over every certified spine.
pub fn check_glr(t: &OrderedTree, d: &GridDrawing) -> Result<Outcome, ValidateError> {
    check_consistency(t, d)?;
    let ctx = Context::new(t, d)?;
    let extents = Extents::new(t, d);
    Ok(Outcome::from_witness(ctx.p1(d).or_else(|| ctx.p2(&extents))))
}

fn check_consistency(t: &OrderedTree, d: &GridDrawing) -> Result<(), ValidateError> {
    if t.len() != d.len() {
        return Err(ValidateError::Mismatch(format!("tree has {} nodes, drawing {}", t.len(), d.len())));
    }
    if d.edges.len() + 1 != t.len() {
        return Err(ValidateError::Mismatch(format!("drawing has {} edges", d.edges.len())));
    }
    for v in 1..t.len() {
        let e = d.edge_into(v).expect("edge count checked");
        if e.to != v || Some(e.from) != t.parent(v) {
            return Err(ValidateError::Mismatch(format!("edge {}->{} is not a tree edge", e.from, e.to)));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug)]
struct Seg {
    a: Point,
    b: Point,
    /// Tree node at `a`, if `a` is a node and not a bend.
    node_a: Option<NodeId>,
    node_b: Option<NodeId>,
    edge_to: NodeId,
}

impl Seg {
    fn as_ref(&self) -> SegmentRef {
        SegmentRef { edge_to: self.edge_to, from: self.a, to: self.b }
    }
}

fn segments(d: &GridDrawing) -> Vec<Seg> {
    let mut out = Vec::with_capacity(d.edges.len() * 2);
    for e in &d.edges {
        let (pa, pb) = (d.positions[e.from], d.positions[e.to]);
        match e.bend {
            None => out.push(Seg { a: pa, b: pb, node_a: Some(e.from), node_b: Some(e.to), edge_to: e.to }),
            Some(m) => {
                out.push(Seg { a: pa, b: m, node_a: Some(e.from), node_b: None, edge_to: e.to });
                out.push(Seg { a: m, b: pb, node_a: None, node_b: Some(e.to), edge_to: e.to });
            }
        }
    }
    out
}

/// Point shared legitimately by two segments, if any.
fn shared_endpoint(s: &Seg, t: &Seg) -> Option<(Point, Point, Point)> {
    if s.edge_to == t.edge_to {
        // two legs of one bent edge meet at the bend
        let shared = if s.b == t.a { s.b } else { s.a };
        let other_s = if s.a == shared { s.b } else { s.a };
        let other_t = if t.a == shared { t.b } else { t.a };
        return Some((shared, other_s, other_t));
    }
    for (ns, ps, os) in [(s.node_a, s.a, s.b), (s.node_b, s.b, s.a)] {
        for (nt, pt, ot) in [(t.node_a, t.a, t.b), (t.node_b, t.b, t.a)] {
            if ns.is_some() && ns == nt {
                debug_assert_eq!(ps, pt);
                return Some((ps, os, ot));
            }
        }
    }
    None
}

fn segment_conflict(s: &Seg, t: &Seg) -> Option<Witness> {
    let clash = match shared_endpoint(s, t) {
        // adjacent segments may only meet at the shared point: they clash
        // when collinear and pointing the same way
        Some((p, os, ot)) => orient(p, os, ot) == 0 && dot(dir(p, os), dir(p, ot)) > 0,
        None => segments_intersect(s.a, s.b, t.a, t.b),
    };
    clash.then(|| Witness::Crossing { a: s.as_ref(), b: t.as_ref(), at: intersection_point(s.a, s.b, t.a, t.b) })
}

fn point_clash(d: &GridDrawing) -> Option<Witness> {
    let mut seen: HashMap<Point, String> = HashMap::with_capacity(d.len() * 2);
    for (v, &p) in d.positions.iter().enumerate() {
        if let Some(prev) = seen.insert(p, format!("node {v}")) {
            return Some(Witness::SharedPoint { what: format!("{prev} and node {v}"), at: p });
        }
    }
    for e in &d.edges {
        if let Some(b) = e.bend {
            if let Some(prev) = seen.insert(b, format!("bend of edge into {}", e.to)) {
                return Some(Witness::SharedPoint { what: format!("{prev} and bend of edge into {}", e.to), at: b });
            }
        }
    }
    None
}

/// Planarity by a y-sweep over segment extents.
pub fn check_planar(t: &OrderedTree, d: &GridDrawing) -> Result<Outcome, ValidateError> {
    check_consistency(t, d)?;
    if let Some(w) = point_clash(d) {
        return Ok(Outcome::Fail(w));
    }
    let mut segs = segments(d);
    segs.sort_by_key(|s| (s.a.y.min(s.b.y), s.a.x.min(s.b.x), s.edge_to));
    let mut active: Vec<Seg> = Vec::new();
    for s in &segs {
        let (sy0, sy1) = (s.a.y.min(s.b.y), s.a.y.max(s.b.y));
        let (sx0, sx1) = (s.a.x.min(s.b.x), s.a.x.max(s.b.x));
        active.retain(|t| t.a.y.max(t.b.y) >= sy0);
        for t in &active {
            let (tx0, tx1) = (t.a.x.min(t.b.x), t.a.x.max(t.b.x));
            if tx1 < sx0 || sx1 < tx0 {
                continue;
            }
            if let Some(w) = segment_conflict(t, s) {
                return Ok(Outcome::Fail(w));
            }
        }
        let _ = sy1;
        active.push(*s);
    }
    Ok(Outcome::Pass)
}

/// All-pairs planarity test, for cross-checking the sweep.
pub fn check_planar_brute(t: &OrderedTree, d: &GridDrawing) -> Result<Outcome, ValidateError> {
    check_consistency(t, d)?;
    if let Some(w) = point_clash(d) {
        return Ok(Outcome::Fail(w));
    }
    let segs = segments(d);
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            if let Some(w) = segment_conflict(&segs[i], &segs[j]) {
                return Ok(Outcome::Fail(w));
            }
        }
    }
    Ok(Outcome::Pass)
}

/// Direction in a y-up frame, so counterclockwise is the usual sense.
fn math_dir(from: Point, to: Point) -> (i128, i128) {
    let (dx, dy) = dir(from, to);
    (dx, -dy)
}

/// Rank of `a` by counterclockwise angle from `r`, strictly after `r`.
/// `None` when `a` points the same way as `r`.
fn half(r: (i128, i128), a: (i128, i128)) -> Option<u8> {
    let c = cross(r, a);
    if c > 0 {
        Some(0)
    } else if c < 0 || dot(r, a) < 0 {
        Some(1)
    } else {
        None
    }
}

/// At every node, the children must appear in their given order when
/// sweeping counterclockwise (as seen on screen) from the direction of the
/// parent; straight up at the root. With the parent above, this puts the
/// first child to the lower left and the last to the lower right.
pub fn check_order_preserving(t: &OrderedTree, d: &GridDrawing) -> Result<Outcome, ValidateError> {
    check_consistency(t, d)?;
    for v in 0..t.len() {
        let kids = t.children(v);
        if kids.is_empty() {
            continue;
        }
        let here = d.positions[v];
        let reference = match d.edge_into(v) {
            None => (0, 1),
            Some(e) => {
                let toward = e.bend.unwrap_or(d.positions[e.from]);
                if toward == here {
                    return Err(ValidateError::ZeroLength(v));
                }
                math_dir(here, toward)
            }
        };
        let mut dirs = Vec::with_capacity(kids.len());
        for &c in kids {
            let e = d.edge_into(c).expect("child has an edge");
            let toward = e.bend.unwrap_or(d.positions[c]);
            if toward == here {
                return Err(ValidateError::ZeroLength(c));
            }
            let a = math_dir(here, toward);
            let Some(h) = half(reference, a) else {
                return Ok(Outcome::Fail(Witness::ChildOrder { node: v, expected: kids.to_vec(), found: vec![c] }));
            };
            dirs.push((c, h, a));
        }
        let mut sorted = dirs.clone();
        sorted.sort_by(|x, y| x.1.cmp(&y.1).then_with(|| 0.cmp(&cross(x.2, y.2))));
        let found: Vec<NodeId> = sorted.iter().map(|x| x.0).collect();
        let ties = sorted.windows(2).any(|w| w[0].1 == w[1].1 && cross(w[0].2, w[1].2) == 0);
        if found != kids || ties {
            return Ok(Outcome::Fail(Witness::ChildOrder { node: v, expected: kids.to_vec(), found }));
        }
    }
    Ok(Outcome::Pass)
}

/// Parents above children (smaller y). Strict forbids equal rows.
pub fn check_upward(t: &OrderedTree, d: &GridDrawing, strict: bool) -> Result<Outcome, ValidateError> {
    check_consistency(t, d)?;
    for v in 1..t.len() {
        let p = t.parent(v).expect("non-root");
        let (yp, yc) = (d.positions[p].y, d.positions[v].y);
        let ok = if strict { yp < yc } else { yp <= yc };
        if !ok {
            return Ok(Outcome::Fail(Witness::NotUpward { parent: p, child: v }));
        }
    }
    Ok(Outcome::Pass)
}

/// Per-subtree extents: x over nodes and internal bends, y over nodes.
struct Extents {
    x0: Vec<i64>,
    x1: Vec<i64>,
    y0: Vec<i64>,
    y1: Vec<i64>,
    /// Node rows, sorted, for strip counting.
    rows: Vec<i64>,
}

impl Extents {
    fn new(t: &OrderedTree, d: &GridDrawing) -> Self {
        let n = t.len();
        let mut x0: Vec<i64> = d.positions.iter().map(|p| p.x).collect();
        let mut x1 = x0.clone();
        let mut y0: Vec<i64> = d.positions.iter().map(|p| p.y).collect();
        let mut y1 = y0.clone();
        for v in (1..n).rev() {
            let p = t.parent(v).expect("non-root");
            x0[p] = x0[p].min(x0[v]);
            x1[p] = x1[p].max(x1[v]);
            y0[p] = y0[p].min(y0[v]);
            y1[p] = y1[p].max(y1[v]);
            if let Some(b) = d.edge_into(v).and_then(|e| e.bend) {
                x0[p] = x0[p].min(b.x);
                x1[p] = x1[p].max(b.x);
            }
        }
        let mut rows: Vec<i64> = d.positions.iter().map(|p| p.y).collect();
        rows.sort_unstable();
        Extents { x0, x1, y0, y1, rows }
    }

    /// Nodes of the whole drawing with `y0 <= y <= y1`.
    fn count_rows(&self, y0: i64, y1: i64) -> usize {
        self.rows.partition_point(|&y| y <= y1) - self.rows.partition_point(|&y| y < y0)
    }

    fn width(&self, v: NodeId) -> i64 {
        self.x1[v] - self.x0[v] + 1
    }
}

/// Spine certificate, checked for shape and coverage.
struct Context<'a> {
    t: &'a OrderedTree,
    spines: Vec<(NodeId, &'a [NodeId])>,
}

impl<'a> Context<'a> {
    fn new(t: &'a OrderedTree, d: &'a GridDrawing) -> Result<Self, ValidateError> {
        let mut covered = vec![false; t.len()];
        let mut spines = Vec::with_capacity(d.spines.len());
        for (&key, nodes) in &d.spines {
            if nodes.first() != Some(&key) {
                return Err(ValidateError::Certificate(format!("spine {key} does not start at its key")));
            }
            if key >= t.len() {
                return Err(ValidateError::Certificate(format!("spine key {key} out of range")));
            }
            for w in nodes.windows(2) {
                if w[1] >= t.len() || t.parent(w[1]) != Some(w[0]) {
                    return Err(ValidateError::Certificate(format!("spine {key}: {} is not a child of {}", w[1], w[0])));
                }
            }
            let last = *nodes.last().expect("nonempty");
            if !t.is_leaf(last) {
                return Err(ValidateError::Certificate(format!("spine {key} ends at inner node {last}")));
            }
            for &u in nodes.iter() {
                covered[u] = true;
            }
            spines.push((key, nodes.as_slice()));
        }
        if let Some(v) = covered.iter().position(|c| !c) {
            return Err(ValidateError::Certificate(format!("no spine covers the subtree rooted at {v}")));
        }
        Ok(Context { t, spines })
    }

    /// Children of spine node `path[i]` before and after the path child.
    fn sides(&self, path: &[NodeId], i: usize) -> (&'a [NodeId], &'a [NodeId]) {
        let kids = self.t.children(path[i]);
        match path.get(i + 1) {
            None => (&kids[..0], &kids[..0]),
            Some(&c) => {
                let at = kids.iter().position(|&k| k == c).expect("certificate checked");
                (&kids[..at], &kids[at + 1..])
            }
        }
    }

    fn p1(&self, d: &GridDrawing) -> Option<Witness> {
        for &(key, path) in &self.spines {
            let x = d.positions[key].x;
            for w in path.windows(2) {
                let (a, b) = (d.positions[w[0]], d.positions[w[1]]);
                if b.x != x || b.y <= a.y {
                    return Some(Witness::SpineNotVertical { spine: key, node: w[1] });
                }
            }
        }
        None
    }

    fn p2(&self, ext: &Extents) -> Option<Witness> {
        for &(key, path) in &self.spines {
            let column = ext.x0[path[path.len() - 1]];
            for i in 0..path.len() {
                let (left, right) = self.sides(path, i);
                for &c in left.iter().chain(right) {
                    if ext.x0[c] <= column && column <= ext.x1[c] {
                        return Some(Witness::ColumnUsed { spine: key, subtree: c, column });
                    }
                }
            }
        }
        None
    }

    fn p4(&self, d: &GridDrawing, ext: &Extents) -> Option<Witness> {
        for &(_, path) in &self.spines {
            for i in 0..path.len() {
                let u = path[i];
                let (left, right) = self.sides(path, i);
                let (mut y0, mut y1) = (d.positions[u].y, d.positions[u].y);
                let mut count = 1;
                for &c in left.iter().chain(right) {
                    y0 = y0.min(ext.y0[c]);
                    y1 = y1.max(ext.y1[c]);
                    count += self.t.size(c);
                }
                let inside = ext.count_rows(y0, y1);
                if inside != count {
                    return Some(Witness::Strip { anchor: u, y0, y1, intruders: inside - count });
                }
            }
        }
        None
    }

    fn p5(&self, _d: &GridDrawing, ext: &Extents) -> Option<Witness> {
        for &(_, path) in &self.spines {
            for i in 0..path.len() {
                let (left, right) = self.sides(path, i);
                for group in [left, right] {
                    let Some(&first) = group.first() else { continue };
                    let (mut y0, mut y1, mut count) = (ext.y0[first], ext.y1[first], 0);
                    for &c in group {
                        y0 = y0.min(ext.y0[c]);
                        y1 = y1.max(ext.y1[c]);
                        count += self.t.size(c);
                    }
                    let inside = ext.count_rows(y0, y1);
                    if inside != count {
                        return Some(Witness::Strip { anchor: path[i], y0, y1, intruders: inside - count });
                    }
                }
            }
        }
        None
    }

    fn p8(&self, d: &GridDrawing, ext: &Extents) -> Option<Witness> {
        for &(key, path) in &self.spines {
            let column = d.positions[key].x;
            for i in 0..path.len() {
                let (left, right) = self.sides(path, i);
                for &c in left {
                    if ext.x1[c] != column - 1 {
                        return Some(Witness::Distance { spine: key, subtree: c, gap: column - ext.x1[c] });
                    }
                }
                for &c in right {
                    if ext.x0[c] != column + 1 {
                        return Some(Witness::Distance { spine: key, subtree: c, gap: ext.x0[c] - column });
                    }
                }
            }
        }
        let bb = d.bbox();
        let mut rows = ext.rows.clone();
        rows.dedup();
        let mut expect = bb.y0;
        for y in rows {
            if y != expect {
                return Some(Witness::EmptyRow { y: expect });
            }
            expect = y + 1;
        }
        (expect != bb.y1 + 1).then_some(Witness::EmptyRow { y: expect })
    }

    fn width_recurrence(&self, ext: &Extents) -> Option<Witness> {
        for &(key, path) in &self.spines {
            let (mut wl, mut wr) = (0, 0);
            for i in 0..path.len() {
                let (left, right) = self.sides(path, i);
                wl = left.iter().map(|&c| ext.width(c)).fold(wl, i64::max);
                wr = right.iter().map(|&c| ext.width(c)).fold(wr, i64::max);
            }
            let bound = 1 + wl + wr;
            if ext.width(key) > bound {
                return Some(Witness::Width { spine: key, width: ext.width(key), bound });
            }
        }
        None
    }
}

fn p3(t: &OrderedTree, _d: &GridDrawing, ext: &Extents) -> Option<Witness> {
    (0..t.len()).find_map(|v| {
        let inside = ext.count_rows(ext.y0[v], ext.y1[v]);
        (inside != t.size(v)).then(|| Witness::Strip { anchor: v, y0: ext.y0[v], y1: ext.y1[v], intruders: inside - t.size(v) })
    })
}

fn p6(d: &GridDrawing) -> Option<Witness> {
    d.edges.iter().find_map(|e| e.bend.map(|at| Witness::Bend { edge_to: e.to, at }))
}

/// For every certified spine: the width of its sub-drawing is at most one
/// plus the widest left subtree plus the widest right subtree.
pub fn check_width_recurrence(t: &OrderedTree, d: &GridDrawing) -> Result<Outcome, ValidateError> {
    check_consistency(t, d)?;
    let ctx = Context::new(t, d)?;
    Ok(Outcome::from_witness(ctx.width_recurrence(&Extents::new(t, d))))
}
