//! Recursive construction shared by all layout engines.
//!
//! Every `draw_*` routine lays out the subtree of one node with that node
//! at the origin and returns the bounding box of the sub-drawing (nodes
//! plus bends of internal edges). The caller then moves the whole
//! preorder id range in one pass. Mirror-image shapes are produced by
//! drawing the opposite shape on the reversed child order and negating x.

use std::collections::BTreeMap;

use crate::drawing::{BBox, Edge, GridDrawing, Point};
use crate::path::{select_path_at, PathError, PathParams};
use crate::tree::{NodeId, OrderedTree};

use super::Shape;

/// Spine-based stacking flavours.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Style {
    OneBend,
    NonUpward,
    Upward,
}

impl Style {
    fn side_shape(self, index: usize, left: bool) -> Shape {
        match (self, index, left) {
            (Style::OneBend, _, _) => Shape::OneBend,
            (Style::NonUpward, 0, _) => Shape::TypeI { upward: false },
            (Style::NonUpward, _, true) => Shape::TypeIIr,
            (Style::NonUpward, _, false) => Shape::TypeIIl,
            (Style::Upward, 0, _) => Shape::TypeI { upward: true },
            (Style::Upward, _, true) => Shape::TypeIIIr,
            (Style::Upward, _, false) => Shape::TypeIIIl,
        }
    }
}

pub(crate) struct Builder<'a> {
    tree: &'a OrderedTree,
    params: PathParams,
    pos: Vec<Point>,
    bend: Vec<Option<Point>>,
    spines: BTreeMap<NodeId, Vec<NodeId>>,
}

impl<'a> Builder<'a> {
    pub(crate) fn new(tree: &'a OrderedTree, params: PathParams) -> Self {
        let n = tree.len();
        Builder {
            tree,
            params,
            pos: vec![Point::new(0, 0); n],
            bend: vec![None; n],
            spines: BTreeMap::new(),
        }
    }

    pub(crate) fn run(mut self, shape: Shape) -> Result<GridDrawing, PathError> {
        let b = self.draw(0, shape, false)?;
        self.translate(0, -b.x0, -b.y0);
        let edges = (1..self.tree.len())
            .map(|v| Edge {
                from: self.tree.parent(v).expect("non-root"),
                to: v,
                bend: self.bend[v],
            })
            .collect();
        Ok(GridDrawing {
            positions: self.pos,
            edges,
            spines: self.spines,
            tree: None,
        })
    }

    /// Children of `v` in drawing order; reversed in a mirrored view.
    fn kids(&self, v: NodeId, mirrored: bool) -> Vec<NodeId> {
        let mut k = self.tree.children(v).to_vec();
        if mirrored {
            k.reverse();
        }
        k
    }

    /// Moves the sub-drawing of `v` and its internal bends.
    fn translate(&mut self, v: NodeId, dx: i64, dy: i64) {
        if dx == 0 && dy == 0 {
            return;
        }
        for u in self.tree.subtree(v) {
            let p = &mut self.pos[u];
            p.x += dx;
            p.y += dy;
            if u != v {
                if let Some(b) = &mut self.bend[u] {
                    b.x += dx;
                    b.y += dy;
                }
            }
        }
    }

    fn flip(&mut self, v: NodeId) {
        for u in self.tree.subtree(v) {
            self.pos[u].x = -self.pos[u].x;
            if u != v {
                if let Some(b) = &mut self.bend[u] {
                    b.x = -b.x;
                }
            }
        }
    }

    /// Draws the subtree of `c` and moves it so that its box has the given
    /// left (or right) side and top row. Returns the placed box.
    fn place(&mut self, c: NodeId, shape: Shape, mirrored: bool, side: Side, top: i64) -> Result<BBox, PathError> {
        let b = self.draw(c, shape, mirrored)?;
        let dx = match side {
            Side::LeftAt(x) => x - b.x0,
            Side::RightAt(x) => x - b.x1,
        };
        let dy = top - b.y0;
        self.translate(c, dx, dy);
        Ok(b.shifted(dx, dy))
    }

    fn draw(&mut self, v: NodeId, shape: Shape, mirrored: bool) -> Result<BBox, PathError> {
        if self.tree.is_leaf(v) {
            self.pos[v] = Point::new(0, 0);
            self.spines.insert(v, vec![v]);
            return Ok(BBox::point(Point::new(0, 0)));
        }
        match shape {
            Shape::Quadratic => Ok(self.draw_quadratic(v, mirrored)),
            Shape::OneBend => self.draw_spine(v, mirrored, Style::OneBend),
            Shape::TypeI { upward: false } => self.draw_spine(v, mirrored, Style::NonUpward),
            Shape::TypeI { upward: true } => self.draw_spine(v, mirrored, Style::Upward),
            Shape::TypeIIl => self.draw_type_two(v, mirrored),
            Shape::TypeIIIl => self.draw_type_three(v, mirrored),
            Shape::TypeIIr => {
                let b = self.draw(v, Shape::TypeIIl, !mirrored)?;
                self.flip(v);
                Ok(BBox { x0: -b.x1, x1: -b.x0, y0: b.y0, y1: b.y1 })
            }
            Shape::TypeIIIr => {
                let b = self.draw(v, Shape::TypeIIIl, !mirrored)?;
                self.flip(v);
                Ok(BBox { x0: -b.x1, x1: -b.x0, y0: b.y0, y1: b.y1 })
            }
        }
    }

    /// Leftmost path vertical; the remaining children of each path node
    /// are stacked right to left below it, one column to the right.
    fn draw_quadratic(&mut self, v: NodeId, mirrored: bool) -> BBox {
        let mut bb = BBox::point(Point::new(0, 0));
        let mut spine = Vec::new();
        let mut u = v;
        let mut y = 0;
        loop {
            self.pos[u] = Point::new(0, y);
            bb.include(self.pos[u]);
            spine.push(u);
            let kids = self.kids(u, mirrored);
            let Some((&first, rest)) = kids.split_first() else { break };
            let mut cursor = y + 1;
            for &c in rest.iter().rev() {
                let b = self
                    .place(c, Shape::Quadratic, mirrored, Side::LeftAt(1), cursor)
                    .expect("quadratic layout selects no path");
                bb.union(&b);
                cursor = b.y1 + 1;
            }
            y = cursor;
            u = first;
        }
        self.spines.insert(v, spine);
        bb
    }

    /// Selected spine drawn in column 0. At each spine node its left
    /// subtrees, then its right subtrees (outermost first), are stacked
    /// below it against the spine column; the next spine node follows.
    fn draw_spine(&mut self, v: NodeId, mirrored: bool, style: Style) -> Result<BBox, PathError> {
        let path = select_path_at(self.tree, v, &self.params)?.nodes;
        self.assert_side_sizes(v, &path);
        let mut bb = BBox::point(Point::new(0, 0));
        let mut y = 0;
        for (i, &u) in path.iter().enumerate() {
            self.pos[u] = Point::new(0, y);
            bb.include(self.pos[u]);
            let (left, right) = self.split_at_path(u, path.get(i + 1).copied(), mirrored);
            y = self.stack_sides(&left, &right, y + 1, mirrored, style, &mut bb)?;
        }
        self.spines.insert(v, path);
        Ok(bb)
    }

    /// Stacks left subtrees (first to last) and then right subtrees
    /// (last to first) from row `cursor` down. Returns the next free row.
    fn stack_sides(
        &mut self,
        left: &[NodeId],
        right: &[NodeId],
        mut cursor: i64,
        mirrored: bool,
        style: Style,
        bb: &mut BBox,
    ) -> Result<i64, PathError> {
        for (j, &c) in left.iter().enumerate() {
            if style == Style::OneBend && j > 0 {
                self.bend[c] = Some(Point::new(-1, cursor));
                cursor += 1;
            }
            let b = self.place(c, style.side_shape(j, true), mirrored, Side::RightAt(-1), cursor)?;
            bb.union(&b);
            cursor = b.y1 + 1;
        }
        for (j, &c) in right.iter().rev().enumerate() {
            if style == Style::OneBend && j > 0 {
                self.bend[c] = Some(Point::new(1, cursor));
                cursor += 1;
            }
            let b = self.place(c, style.side_shape(j, false), mirrored, Side::LeftAt(1), cursor)?;
            bb.union(&b);
            cursor = b.y1 + 1;
        }
        Ok(cursor)
    }

    /// Children of `u` before and after `next` in drawing order.
    fn split_at_path(&self, u: NodeId, next: Option<NodeId>, mirrored: bool) -> (Vec<NodeId>, Vec<NodeId>) {
        let kids = self.kids(u, mirrored);
        match next {
            None => (Vec::new(), Vec::new()),
            Some(c) => {
                let at = kids.iter().position(|&k| k == c).expect("path descends to a child");
                (kids[..at].to_vec(), kids[at + 1..].to_vec())
            }
        }
    }

    fn assert_side_sizes(&self, v: NodeId, path: &[NodeId]) {
        if cfg!(debug_assertions) {
            let n = self.tree.size(v) as f64;
            let cap = (1.0 - self.params.delta).powf(1.0 / self.params.p) * n * (1.0 + 1e-12);
            for w in path.windows(2) {
                for &c in self.tree.children(w[0]) {
                    if c != w[1] {
                        debug_assert!(self.tree.size(c) as f64 <= cap, "side subtree larger than the size claim");
                    }
                }
            }
        }
    }

    /// Root in the leftmost column with nothing above it there.
    ///
    /// With `k` the first spine node that has a left subtree, `v_1..v_k`
    /// stay in column 0. The right subtrees of `v_k` go above it, the rest
    /// of the spine (drawn with the root in its top row) right below it,
    /// then the left subtrees from last to second, and finally the first
    /// left subtree in column 0, whose own vertical path continues the
    /// drawn spine.
    fn draw_type_two(&mut self, v: NodeId, mirrored: bool) -> Result<BBox, PathError> {
        let path = select_path_at(self.tree, v, &self.params)?.nodes;
        let turn = path.iter().enumerate().position(|(i, &u)| {
            let (left, _) = self.split_at_path(u, path.get(i + 1).copied(), mirrored);
            !left.is_empty()
        });
        let Some(k) = turn else {
            return self.draw_spine(v, mirrored, Style::NonUpward);
        };
        self.assert_side_sizes(v, &path);

        let mut bb = BBox::point(Point::new(0, 0));
        let mut y = 0;
        for i in 0..k {
            let u = path[i];
            self.pos[u] = Point::new(0, y);
            bb.include(self.pos[u]);
            let (_, right) = self.split_at_path(u, Some(path[i + 1]), mirrored);
            y = self.stack_sides(&[], &right, y + 1, mirrored, Style::NonUpward, &mut bb)?;
        }

        let vk = path[k];
        let (left, right) = self.split_at_path(vk, Some(path[k + 1]), mirrored);
        let mut cursor = y;
        for &c in right.iter().rev() {
            let b = self.place(c, Shape::TypeIIl, mirrored, Side::LeftAt(1), cursor)?;
            bb.union(&b);
            cursor = b.y1 + 1;
        }
        self.pos[vk] = Point::new(0, cursor);
        bb.include(self.pos[vk]);
        cursor += 1;
        let b = self.place(path[k + 1], Shape::TypeI { upward: false }, mirrored, Side::LeftAt(1), cursor)?;
        bb.union(&b);
        cursor = b.y1 + 1;
        for &c in left[1..].iter().rev() {
            let b = self.place(c, Shape::TypeIIl, mirrored, Side::LeftAt(1), cursor)?;
            bb.union(&b);
            cursor = b.y1 + 1;
        }
        let first = left[0];
        let b = self.place(first, Shape::TypeIIl, mirrored, Side::LeftAt(0), cursor)?;
        bb.union(&b);

        let tail = self.spines.remove(&first).expect("sub-drawing recorded its spine");
        let mut spine = path[..=k].to_vec();
        spine.extend(tail);
        self.spines.insert(v, spine);

        let root_y = self.pos[v].y;
        self.translate(v, 0, -root_y);
        Ok(bb.shifted(0, -root_y))
    }

    /// Root in the top-left corner; the spine is the leftmost path.
    ///
    /// At each spine node with `d` subtrees of total size `n`: if some
    /// interior subtree `S_k` (0 < k < d-1) holds at least `n - A` nodes,
    /// `A = n / 2^(1/p)`, the later subtrees go into a block to the right
    /// of the node, `S_k` below a gap tall enough that the edge to its
    /// root passes left of that block, and `S_{k-1}..S_1` below `S_k`.
    /// Otherwise all subtrees after the first are stacked below the node,
    /// last one first. The first subtree continues the spine.
    fn draw_type_three(&mut self, v: NodeId, mirrored: bool) -> Result<BBox, PathError> {
        let mut bb = BBox::point(Point::new(0, 0));
        let mut spine = Vec::new();
        let mut u = v;
        let mut y = 0;
        loop {
            self.pos[u] = Point::new(0, y);
            bb.include(self.pos[u]);
            spine.push(u);
            let kids = self.kids(u, mirrored);
            let d = kids.len();
            if d == 0 {
                break;
            }
            let big = super::heavy_middle(self.tree, &kids, self.tree.size(u), self.params.p);
            let mut cursor = y + 1;
            match big {
                None => {
                    for j in (1..d).rev() {
                        let shape = if j == d - 1 { Shape::TypeI { upward: true } } else { Shape::TypeIIIl };
                        let b = self.place(kids[j], shape, mirrored, Side::LeftAt(1), cursor)?;
                        bb.union(&b);
                        cursor = b.y1 + 1;
                    }
                }
                Some(k) => {
                    // later subtrees, top to bottom: S_d, S_{d-1}, .., S_{k+1}
                    let mut block = Vec::new();
                    for j in (k + 1..d).rev() {
                        let shape = if j == d - 1 { Shape::TypeI { upward: true } } else { Shape::TypeIIIl };
                        block.push((kids[j], self.draw(kids[j], shape, mirrored)?));
                    }
                    let big_box = self.draw(kids[k], Shape::TypeI { upward: true }, mirrored)?;
                    let block_width = block.iter().map(|(_, b)| b.width()).max().unwrap_or(0);
                    let block_height: i64 = block.iter().map(|(_, b)| b.height()).sum();
                    let big_width = big_box.width();
                    // column offset of S_k's root once its box starts at x = 1
                    let reach = 1 - big_box.x0;
                    let offset = big_width.max(block_width) - block_width + 1;
                    let gap = (2 * block_height + 1).max(reach * block_height / offset + 1);

                    for (c, b) in block {
                        let (dx, dy) = (offset - b.x0, cursor - b.y0);
                        self.translate(c, dx, dy);
                        let placed = b.shifted(dx, dy);
                        bb.union(&placed);
                        cursor = placed.y1 + 1;
                    }
                    let (dx, dy) = (1 - big_box.x0, y + gap - big_box.y0);
                    self.translate(kids[k], dx, dy);
                    let placed = big_box.shifted(dx, dy);
                    bb.union(&placed);
                    cursor = placed.y1 + 1;
                    for j in (1..k).rev() {
                        let b = self.place(kids[j], Shape::TypeIIIl, mirrored, Side::LeftAt(1), cursor)?;
                        bb.union(&b);
                        cursor = b.y1 + 1;
                    }
                }
            }
            y = cursor;
            u = kids[0];
        }
        self.spines.insert(v, spine);
        Ok(bb)
    }
}

#[derive(Clone, Copy, Debug)]
enum Side {
    LeftAt(i64),
    RightAt(i64),
}
