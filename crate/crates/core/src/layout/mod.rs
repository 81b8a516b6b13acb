//! Grid layout engines.
//!
//! Four constructions are provided:
//!
//! * [`layout_quadratic`]: the standard stacking. Ideal, satisfies every
//!   condition P1 through P8, width and height at most `n`.
//! * [`layout_one_bend`]: strictly upward with at most one bend per edge,
//!   width following the spine recurrence, height at most `2n - 1`.
//! * [`layout_nonupward`]: straight-line with height exactly `n`, in three
//!   variants (root in the top row, or in the leftmost/rightmost column).
//! * [`layout_upward`]: ideal drawings in three variants (root in the top
//!   row, or in the top-left/top-right corner).
//!
//! Every drawing carries a spine certificate: the vertically drawn path of
//! each recursion level, keyed by its first node. [`stretch_to_straightline`]
//! removes the bends of a one-bend drawing by inserting rows.

mod engine;
mod stretch;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::drawing::GridDrawing;
use crate::path::{PathError, PathParams};
use crate::tree::{NodeId, OrderedTree};

pub use stretch::{stretch_to_straightline, StretchError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Quadratic,
    OneBend,
    NonUpward,
    Upward,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    I,
    IIl,
    IIr,
    IIIl,
    IIIr,
    Default,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LayoutKind {
    pub algo: Algo,
    pub variant: Variant,
}

#[derive(Debug, Error, PartialEq)]
pub enum LayoutError {
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("variant {variant} is not available for {algo}")]
    Variant { algo: Algo, variant: Variant },
    #[error("unknown {what}: {value:?}")]
    Unknown { what: &'static str, value: String },
}

impl LayoutKind {
    pub fn new(algo: Algo, variant: Variant) -> Result<Self, LayoutError> {
        let ok = match algo {
            Algo::Quadratic | Algo::OneBend => variant == Variant::Default,
            Algo::NonUpward => matches!(variant, Variant::Default | Variant::I | Variant::IIl | Variant::IIr),
            Algo::Upward => matches!(variant, Variant::Default | Variant::I | Variant::IIIl | Variant::IIIr),
        };
        if ok {
            Ok(LayoutKind { algo, variant })
        } else {
            Err(LayoutError::Variant { algo, variant })
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algo::Quadratic => "quadratic",
            Algo::OneBend => "onebend",
            Algo::NonUpward => "nonupward",
            Algo::Upward => "upward",
        })
    }
}

impl FromStr for Algo {
    type Err = LayoutError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "quadratic" => Ok(Algo::Quadratic),
            "onebend" => Ok(Algo::OneBend),
            "nonupward" => Ok(Algo::NonUpward),
            "upward" => Ok(Algo::Upward),
            _ => Err(LayoutError::Unknown { what: "algorithm", value: s.into() }),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::I => "I",
            Variant::IIl => "IIl",
            Variant::IIr => "IIr",
            Variant::IIIl => "IIIl",
            Variant::IIIr => "IIIr",
            Variant::Default => "default",
        })
    }
}

impl FromStr for Variant {
    type Err = LayoutError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "I" => Ok(Variant::I),
            "IIl" => Ok(Variant::IIl),
            "IIr" => Ok(Variant::IIr),
            "IIIl" => Ok(Variant::IIIl),
            "IIIr" => Ok(Variant::IIIr),
            "default" | "" => Ok(Variant::Default),
            _ => Err(LayoutError::Unknown { what: "variant", value: s.into() }),
        }
    }
}

/// Drawing shape requested from the recursive engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Shape {
    Quadratic,
    OneBend,
    /// Root in the top row.
    TypeI { upward: bool },
    /// Root in the leftmost column, nothing above it in that column.
    TypeIIl,
    TypeIIr,
    /// Root in the top-left corner.
    TypeIIIl,
    TypeIIIr,
}

pub fn layout(tree: &OrderedTree, kind: LayoutKind, params: &PathParams) -> Result<GridDrawing, LayoutError> {
    let kind = LayoutKind::new(kind.algo, kind.variant)?;
    params.validate()?;
    let shape = match (kind.algo, kind.variant) {
        (Algo::Quadratic, _) => Shape::Quadratic,
        (Algo::OneBend, _) => Shape::OneBend,
        (Algo::NonUpward, Variant::IIl) => Shape::TypeIIl,
        (Algo::NonUpward, Variant::IIr) => Shape::TypeIIr,
        (Algo::NonUpward, _) => Shape::TypeI { upward: false },
        (Algo::Upward, Variant::IIIl) => Shape::TypeIIIl,
        (Algo::Upward, Variant::IIIr) => Shape::TypeIIIr,
        (Algo::Upward, _) => Shape::TypeI { upward: true },
    };
    Ok(engine::Builder::new(tree, *params).run(shape)?)
}

/// Standard stacking: the leftmost path is the spine, later children are
/// stacked right to left below their parent, one column to the right.
pub fn layout_quadratic(tree: &OrderedTree) -> GridDrawing {
    engine::Builder::new(tree, PathParams::default())
        .run(Shape::Quadratic)
        .expect("the standard stacking never selects a path")
}

pub fn layout_one_bend(tree: &OrderedTree, params: &PathParams) -> Result<GridDrawing, LayoutError> {
    layout(tree, LayoutKind { algo: Algo::OneBend, variant: Variant::Default }, params)
}

pub fn layout_nonupward(tree: &OrderedTree, variant: Variant, params: &PathParams) -> Result<GridDrawing, LayoutError> {
    layout(tree, LayoutKind::new(Algo::NonUpward, variant)?, params)
}

pub fn layout_upward(tree: &OrderedTree, variant: Variant, params: &PathParams) -> Result<GridDrawing, LayoutError> {
    layout(tree, LayoutKind::new(Algo::Upward, variant)?, params)
}

/// Position among `kids` of an interior subtree with more than
/// `n - n / 2^(1/p)` nodes, where `n` is the size of their parent's subtree.
fn heavy_middle(tree: &OrderedTree, kids: &[NodeId], n: usize, p: f64) -> Option<usize> {
    let n = n as f64;
    let a = n / 2f64.powf(1.0 / p);
    (1..kids.len().saturating_sub(1)).find(|&i| tree.size(kids[i]) as f64 > n - a)
}

/// Index of the child of `v` whose subtree makes the upward corner layout
/// switch to its block arrangement at `v`, if any.
pub fn upward_heavy_child(tree: &OrderedTree, v: NodeId, params: &PathParams) -> Option<usize> {
    heavy_middle(tree, tree.children(v), tree.size(v), params.p)
}
