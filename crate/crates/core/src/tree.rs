//! Ordered rooted trees.
//!
//! Nodes are numbered in preorder with the root at `0`, so the subtree of
//! `v` always occupies the contiguous id range `v..v + size(v)`. Layout code
//! relies on this to translate whole sub-drawings in one pass.

use std::fmt;
use std::ops::Range;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type NodeId = usize;

/// Largest tree the generators will build.
pub const MAX_GENERATED_NODES: usize = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedTree {
    parent: Vec<Option<NodeId>>,
    children: Vec<Vec<NodeId>>,
    size: Vec<usize>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: &'static str },
    #[error("invalid tree family parameters: {0}")]
    Family(String),
    #[error("invalid parent structure: {0}")]
    Structure(String),
}

impl OrderedTree {
    /// A single node.
    pub fn singleton() -> Self {
        OrderedTree {
            parent: vec![None],
            children: vec![Vec::new()],
            size: vec![1],
        }
    }

    /// Builds a tree from arbitrary child lists, renumbering nodes into
    /// preorder. `children[v]` lists the children of `v` left to right.
    pub fn from_child_lists(children: &[Vec<usize>], root: usize) -> Result<Self, TreeError> {
        let n = children.len();
        if root >= n {
            return Err(TreeError::Structure(format!("root {root} out of range")));
        }
        let mut new_id = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            if new_id[v] != usize::MAX {
                return Err(TreeError::Structure(format!("node {v} reached twice")));
            }
            new_id[v] = order.len();
            order.push(v);
            for &c in children[v].iter().rev() {
                if c >= n {
                    return Err(TreeError::Structure(format!("child {c} out of range")));
                }
                stack.push(c);
            }
        }
        if order.len() != n {
            return Err(TreeError::Structure(format!(
                "{} of {n} nodes unreachable from the root",
                n - order.len()
            )));
        }
        let mut parent = vec![None; n];
        let mut kids = vec![Vec::new(); n];
        for &old in &order {
            let v = new_id[old];
            kids[v] = children[old].iter().map(|&c| new_id[c]).collect();
            for &c in &kids[v] {
                parent[c] = Some(v);
            }
        }
        Ok(Self::with_sizes(parent, kids))
    }

    /// Builds a tree whose ids are already preorder: `parent[0]` is `None`
    /// and the children of each node are its id-sorted successors.
    pub fn from_preorder_parents(parent: &[Option<NodeId>]) -> Result<Self, TreeError> {
        let n = parent.len();
        if n == 0 {
            return Err(TreeError::Structure("empty tree".into()));
        }
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            match (v, p) {
                (0, None) => {}
                (0, Some(_)) => return Err(TreeError::Structure("node 0 has a parent".into())),
                (_, None) => return Err(TreeError::Structure(format!("node {v} has no parent"))),
                (_, Some(p)) if *p >= v => {
                    return Err(TreeError::Structure(format!("parent of {v} is not earlier in preorder")))
                }
                (_, Some(p)) => children[*p].push(v),
            }
        }
        let tree = Self::with_sizes(parent.to_vec(), children);
        // preorder check: the first child of v is v + 1 and siblings are
        // separated exactly by subtree sizes
        for v in 0..n {
            let mut next = v + 1;
            for &c in tree.children(v) {
                if c != next {
                    return Err(TreeError::Structure(format!("ids are not a preorder at node {v}")));
                }
                next += tree.size(c);
            }
        }
        Ok(tree)
    }

    fn with_sizes(parent: Vec<Option<NodeId>>, children: Vec<Vec<NodeId>>) -> Self {
        let n = parent.len();
        let mut size = vec![1usize; n];
        // preorder ids: children always have larger ids than their parent
        for v in (1..n).rev() {
            if let Some(p) = parent[v] {
                size[p] += size[v];
            }
        }
        OrderedTree {
            parent,
            children,
            size,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> NodeId {
        0
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        self.parent[v]
    }

    pub fn children(&self, v: NodeId) -> &[NodeId] {
        &self.children[v]
    }

    pub fn is_leaf(&self, v: NodeId) -> bool {
        self.children[v].is_empty()
    }

    /// Node count of the subtree rooted at `v`, including `v`.
    pub fn size(&self, v: NodeId) -> usize {
        self.size[v]
    }

    /// Ids of the subtree rooted at `v`.
    pub fn subtree(&self, v: NodeId) -> Range<NodeId> {
        v..v + self.size[v]
    }

    /// Maximum number of children over all nodes.
    pub fn arity(&self) -> usize {
        self.children.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Number of edges on a longest root-to-leaf path.
    pub fn height(&self) -> usize {
        let mut depth = vec![0usize; self.len()];
        let mut best = 0;
        for v in 1..self.len() {
            let p = self.parent[v].expect("non-root has a parent");
            depth[v] = depth[p] + 1;
            best = best.max(depth[v]);
        }
        best
    }

    pub fn depth(&self, mut v: NodeId) -> usize {
        let mut d = 0;
        while let Some(p) = self.parent[v] {
            v = p;
            d += 1;
        }
        d
    }

    /// Recomputes every subtree size from the child lists alone.
    pub fn recomputed_sizes(&self) -> Vec<usize> {
        fn walk(t: &OrderedTree, v: NodeId, out: &mut [usize]) -> usize {
            let s = 1 + t.children(v).iter().map(|&c| walk(t, c, out)).sum::<usize>();
            out[v] = s;
            s
        }
        let mut out = vec![0; self.len()];
        walk(self, 0, &mut out);
        out
    }

    /// The path that always descends into the first child.
    pub fn leftmost_path(&self, from: NodeId) -> Vec<NodeId> {
        let mut path = vec![from];
        let mut v = from;
        while let Some(&c) = self.children[v].first() {
            path.push(c);
            v = c;
        }
        path
    }

    /// The path that always descends into the last child.
    pub fn rightmost_path(&self, from: NodeId) -> Vec<NodeId> {
        let mut path = vec![from];
        let mut v = from;
        while let Some(&c) = self.children[v].last() {
            path.push(c);
            v = c;
        }
        path
    }

    /// Nested-parentheses encoding, `()` for a leaf.
    pub fn serialize(&self) -> String {
        let mut out = String::with_capacity(2 * self.len());
        // explicit stack so deep chains do not overflow
        let mut stack: Vec<(NodeId, usize)> = vec![(0, 0)];
        out.push('(');
        while let Some((v, i)) = stack.pop() {
            if let Some(&c) = self.children[v].get(i) {
                stack.push((v, i + 1));
                out.push('(');
                stack.push((c, 0));
            } else {
                out.push(')');
            }
        }
        out
    }
}

impl fmt::Display for OrderedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl std::str::FromStr for OrderedTree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_tree(s)
    }
}

/// Parses `tree := '(' tree* ')'`, whitespace allowed anywhere.
pub fn parse_tree(text: &str) -> Result<OrderedTree, TreeError> {
    let err = |offset, message| TreeError::Parse { offset, message };
    let mut parent: Vec<Option<NodeId>> = Vec::new();
    let mut open: Vec<NodeId> = Vec::new();
    let mut closed = false;
    for (offset, b) in text.bytes().enumerate() {
        match b {
            b'(' => {
                if closed {
                    return Err(err(offset, "content after the root was closed"));
                }
                if parent.is_empty() || !open.is_empty() {
                    parent.push(open.last().copied());
                    open.push(parent.len() - 1);
                } else {
                    return Err(err(offset, "content after the root was closed"));
                }
            }
            b')' => {
                if open.pop().is_none() {
                    return Err(err(offset, "unbalanced ')'"));
                }
                if open.is_empty() {
                    closed = true;
                }
            }
            b if b.is_ascii_whitespace() => {}
            _ => return Err(err(offset, "unexpected character")),
        }
    }
    if parent.is_empty() {
        return Err(err(text.len(), "empty input"));
    }
    if !open.is_empty() {
        return Err(err(text.len(), "unclosed '('"));
    }
    OrderedTree::from_preorder_parents(&parent)
}

/// Parameters for the tree generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TreeFamily {
    /// Repeated uniform attachment capped at `max_arity` children per node.
    Random { n: usize, max_arity: usize, seed: u64 },
    /// Perfect `arity`-ary tree with `height` edges from root to every leaf.
    Complete { arity: usize, height: usize },
    Path { n: usize },
    Star { n: usize },
    /// Quadratic-area family with `6k - 1` nodes.
    LowerBound { k: usize },
}

impl TreeFamily {
    /// Number of nodes the family produces, or an error for bad parameters.
    pub fn node_count(&self) -> Result<usize, TreeError> {
        let bad = |m: &str| Err(TreeError::Family(m.to_string()));
        let n = match *self {
            TreeFamily::Random { n, max_arity, .. } => {
                if n == 0 {
                    return bad("random trees need n >= 1");
                }
                if max_arity == 0 && n > 1 {
                    return bad("random trees with n > 1 need max_arity >= 1");
                }
                n
            }
            TreeFamily::Complete { arity, height } => {
                if arity == 0 {
                    return bad("complete trees need arity >= 1");
                }
                let mut total: usize = 0;
                let mut level: usize = 1;
                for _ in 0..=height {
                    total = total.checked_add(level).filter(|&t| t <= MAX_GENERATED_NODES).ok_or_else(
                        || TreeError::Family("complete tree too large".into()),
                    )?;
                    level = level.saturating_mul(arity);
                }
                total
            }
            TreeFamily::Path { n } | TreeFamily::Star { n } => {
                if n == 0 {
                    return bad("n must be >= 1");
                }
                n
            }
            TreeFamily::LowerBound { k } => {
                if k == 0 {
                    return bad("lowerbound needs k >= 1");
                }
                k.checked_mul(6).map(|x| x - 1).ok_or_else(|| TreeError::Family("k too large".into()))?
            }
        };
        if n > MAX_GENERATED_NODES {
            return bad("tree too large");
        }
        Ok(n)
    }
}

pub fn generate(family: &TreeFamily) -> Result<OrderedTree, TreeError> {
    let n = family.node_count()?;
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    match *family {
        TreeFamily::Random { max_arity, seed, .. } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // nodes that can still take another child
            let mut open: Vec<usize> = vec![0];
            for i in 1..n {
                let slot = rng.gen_range(0..open.len());
                let p = open[slot];
                let pos = rng.gen_range(0..=children[p].len());
                children[p].insert(pos, i);
                if children[p].len() >= max_arity {
                    open.swap_remove(slot);
                }
                if max_arity > 0 {
                    open.push(i);
                }
            }
        }
        TreeFamily::Complete { arity, .. } => {
            // breadth-first numbering: children of v are v*arity+1 ..
            for v in 0..n {
                for j in 1..=arity {
                    let c = v * arity + j;
                    if c < n {
                        children[v].push(c);
                    }
                }
            }
        }
        TreeFamily::Path { .. } => {
            for v in 1..n {
                children[v - 1].push(v);
            }
        }
        TreeFamily::Star { .. } => {
            children[0] = (1..n).collect();
        }
        TreeFamily::LowerBound { k } => {
            let mut next = 1;
            let mut fresh = |children: &mut Vec<Vec<usize>>| {
                let id = next;
                next += 1;
                debug_assert!(id < children.len());
                id
            };
            let leaf_l = fresh(&mut children);
            let v1 = fresh(&mut children);
            let v1p = fresh(&mut children);
            let leaf_r = fresh(&mut children);
            children[0] = vec![leaf_l, v1, v1p, leaf_r];
            for start in [v1, v1p] {
                let mut v = start;
                for _ in 1..k {
                    let a = fresh(&mut children);
                    let mid = fresh(&mut children);
                    let b = fresh(&mut children);
                    children[v] = vec![a, mid, b];
                    v = mid;
                }
            }
        }
    }
    OrderedTree::from_child_lists(&children, 0)
}

/// Every ordered tree with exactly `n` nodes, in lexicographic order of
/// their parenthesis encodings (`(` before `)`). There are `C(n-1)` of
/// them, the Catalan number.
pub fn enumerate_trees(n: usize) -> Vec<OrderedTree> {
    assert!(n >= 1, "trees have at least one node");
    let inner = n - 1;
    let mut out = Vec::new();
    let mut buf = String::with_capacity(2 * n);
    buf.push('(');
    fn rec(buf: &mut String, open: usize, close: usize, inner: usize, out: &mut Vec<OrderedTree>) {
        if open == inner && close == inner {
            buf.push(')');
            out.push(parse_tree(buf).expect("balanced by construction"));
            buf.pop();
            return;
        }
        if open < inner {
            buf.push('(');
            rec(buf, open + 1, close, inner, out);
            buf.pop();
        }
        if close < open {
            buf.push(')');
            rec(buf, open, close + 1, inner, out);
            buf.pop();
        }
    }
    rec(&mut buf, 0, 0, inner, &mut out);
    out
}
