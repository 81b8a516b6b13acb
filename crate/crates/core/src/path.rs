//! Root-to-leaf spine selection.
//!
//! The selected path keeps `max_left^p + max_right^p <= (1 - delta) * n^p`,
//! where `max_left`/`max_right` are the largest subtrees hanging off the
//! path on the left/right. The path is grown one node at a time. At each
//! node the children are tested for feasibility; a unique feasible child
//! extends the path, and two feasible children end the search with the
//! leftmost (or rightmost) descent into the smaller of the pair.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tree::{NodeId, OrderedTree};

/// Relative tolerance used when comparing against the bound.
pub const REL_EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathParams {
    pub p: f64,
    pub delta: f64,
}

impl Default for PathParams {
    fn default() -> Self {
        PathParams { p: 0.48, delta: 0.0004 }
    }
}

impl PathParams {
    pub fn new(p: f64, delta: f64) -> Result<Self, PathError> {
        let params = PathParams { p, delta };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), PathError> {
        if !(self.p > 0.0 && self.p < 1.0) {
            return Err(PathError::Params(format!("p must lie in (0, 1), got {}", self.p)));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(PathError::Params(format!("delta must lie in (0, 1), got {}", self.delta)));
        }
        Ok(())
    }

    /// `x^p`, with `0^p = 0` standing for an absent subtree.
    pub fn pow(&self, x: usize) -> f64 {
        if x == 0 {
            0.0
        } else {
            (x as f64).powf(self.p)
        }
    }

    /// `(1 - delta) * n^p`.
    pub fn bound(&self, n: usize) -> f64 {
        (1.0 - self.delta) * self.pow(n)
    }

    /// `a^p + b^p <= (1 - delta) n^p` up to [`REL_EPS`].
    pub fn within(&self, a: usize, b: usize, n: usize) -> bool {
        let bound = self.bound(n);
        self.pow(a) + self.pow(b) <= bound * (1.0 + REL_EPS)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum PathError {
    #[error("invalid path parameters: {0}")]
    Params(String),
    #[error("child index {k} out of range for {d} subtrees")]
    ChildIndex { k: usize, d: usize },
    #[error("not a root-to-leaf path: {0}")]
    NotRootToLeaf(String),
    /// No child of the current endpoint is feasible. The existence proof
    /// rules this out for the default parameters; reaching it means the
    /// parameters (or the implementation) are outside what is proven.
    #[error("claim violated: no feasible subtree at node {node} (path {path:?}, alpha {alpha}, beta {beta}, sizes {sizes:?}, n {n}, p {p}, delta {delta})")]
    ClaimViolated {
        node: NodeId,
        path: Vec<NodeId>,
        alpha: usize,
        beta: usize,
        sizes: Vec<usize>,
        n: usize,
        p: f64,
        delta: f64,
    },
}

/// Partial path while the selection runs. `alpha`/`beta` exclude the
/// subtrees at the current endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathState {
    pub path: Vec<NodeId>,
    pub alpha: usize,
    pub beta: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootPath {
    pub nodes: Vec<NodeId>,
    pub max_left: usize,
    pub max_right: usize,
    pub slack: f64,
}

/// Whether child `k` (0-based) of a node whose subtree sizes are `sizes`
/// may extend a path with running maxima `alpha`, `beta`.
pub fn is_feasible(
    alpha: usize,
    beta: usize,
    sizes: &[usize],
    k: usize,
    params: &PathParams,
    n: usize,
) -> Result<bool, PathError> {
    if k >= sizes.len() {
        return Err(PathError::ChildIndex { k, d: sizes.len() });
    }
    let left = sizes[..k].iter().copied().fold(alpha, usize::max);
    let right = sizes[k + 1..].iter().copied().fold(beta, usize::max);
    Ok(params.within(left, right, n))
}

/// Feasibility of every child at once from prefix and suffix maxima.
/// Returns `(feasible, left_max, right_max)` per child.
fn feasibility(alpha: usize, beta: usize, sizes: &[usize], params: &PathParams, n: usize) -> Vec<(bool, usize, usize)> {
    let d = sizes.len();
    let mut suffix = vec![beta; d];
    for k in (0..d.saturating_sub(1)).rev() {
        suffix[k] = suffix[k + 1].max(sizes[k + 1]);
    }
    let mut prefix = alpha;
    let mut out = Vec::with_capacity(d);
    for k in 0..d {
        out.push((params.within(prefix, suffix[k], n), prefix, suffix[k]));
        prefix = prefix.max(sizes[k]);
    }
    out
}

/// Selects a spine for the whole tree.
pub fn select_path(tree: &OrderedTree, params: &PathParams) -> Result<RootPath, PathError> {
    select_path_at(tree, tree.root(), params)
}

/// Selects a spine for the subtree rooted at `root`.
pub fn select_path_at(tree: &OrderedTree, root: NodeId, params: &PathParams) -> Result<RootPath, PathError> {
    params.validate()?;
    let n = tree.size(root);
    let mut state = PathState { path: vec![root], alpha: 0, beta: 0 };
    let mut v = root;
    let mut sizes = Vec::new();
    loop {
        let kids = tree.children(v);
        if kids.is_empty() {
            break;
        }
        sizes.clear();
        sizes.extend(kids.iter().map(|&c| tree.size(c)));
        let table = feasibility(state.alpha, state.beta, &sizes, params, n);
        let mut feasible = table.iter().enumerate().filter(|(_, f)| f.0).map(|(k, _)| k);
        match (feasible.next(), feasible.next()) {
            (None, _) => {
                return Err(PathError::ClaimViolated {
                    node: v,
                    path: state.path,
                    alpha: state.alpha,
                    beta: state.beta,
                    sizes,
                    n,
                    p: params.p,
                    delta: params.delta,
                })
            }
            (Some(k), None) => {
                let (_, left, right) = table[k];
                state.alpha = left;
                state.beta = right;
                v = kids[k];
                state.path.push(v);
                debug_assert!(params.within(state.alpha, state.beta, n));
            }
            (Some(k), Some(l)) => {
                if sizes[k] <= sizes[l] {
                    state.path.extend(tree.leftmost_path(kids[k]));
                } else {
                    state.path.extend(tree.rightmost_path(kids[l]));
                }
                break;
            }
        }
    }
    let (max_left, max_right) = side_maxima(tree, &state.path);
    let slack = params.bound(n) - (params.pow(max_left) + params.pow(max_right));
    debug_assert!(params.within(max_left, max_right, n), "selected path breaks the invariant");
    Ok(RootPath {
        nodes: state.path,
        max_left,
        max_right,
        slack,
    })
}

/// Largest left and right subtree along `path`, recomputed from the tree.
/// The path is assumed to descend parent to child.
fn side_maxima(tree: &OrderedTree, path: &[NodeId]) -> (usize, usize) {
    let mut max_left = 0;
    let mut max_right = 0;
    for w in path.windows(2) {
        let kids = tree.children(w[0]);
        let at = kids.iter().position(|&c| c == w[1]).expect("path descends to a child");
        for &c in &kids[..at] {
            max_left = max_left.max(tree.size(c));
        }
        for &c in &kids[at + 1..] {
            max_right = max_right.max(tree.size(c));
        }
    }
    (max_left, max_right)
}

/// Checks the path invariant for `nodes` from scratch, ignoring anything
/// `select_path` recorded. The path may start at any subtree root.
pub fn path_invariant_check(tree: &OrderedTree, nodes: &[NodeId], params: &PathParams) -> Result<bool, PathError> {
    let Some(&first) = nodes.first() else {
        return Err(PathError::NotRootToLeaf("empty path".into()));
    };
    for w in nodes.windows(2) {
        if tree.parent(w[1]) != Some(w[0]) {
            return Err(PathError::NotRootToLeaf(format!("{} is not a child of {}", w[1], w[0])));
        }
    }
    let last = *nodes.last().unwrap();
    if !tree.is_leaf(last) {
        return Err(PathError::NotRootToLeaf(format!("path ends at inner node {last}")));
    }
    let n = tree.size(first);
    let mut max_left = 0;
    let mut max_right = 0;
    for w in nodes.windows(2) {
        let mut seen_path_child = false;
        for &c in tree.children(w[0]) {
            if c == w[1] {
                seen_path_child = true;
            } else if seen_path_child {
                max_right = max_right.max(tree.size(c));
            } else {
                max_left = max_left.max(tree.size(c));
            }
        }
    }
    Ok(params.within(max_left, max_right, n))
}
