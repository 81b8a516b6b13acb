//! Generalized LR-drawings of ordered rooted trees.
//!
//! The crate is organised around a few pieces:
//!
//! * [`tree`]: the ordered tree, its parenthesis text format and generators.
//! * [`path`]: selection of the root-to-leaf spine used by the recursive
//!   constructions.
//! * [`layout`]: grid layout engines and the bend-removal stretch.
//! * [`validate`]: independent geometric checks of finished drawings.
//! * [`experiments`]: benchmarks, exponent fits and exhaustive small-tree
//!   checks.

pub mod drawing;
pub mod experiments;
pub mod geom;
pub mod layout;
pub mod path;
pub mod svg;
pub mod tree;
pub mod validate;

pub use drawing::{measure, BBox, Edge, GridDrawing, Metrics, Point};
pub use layout::{layout, Algo, LayoutError, LayoutKind, Variant};
pub use path::{select_path, PathError, PathParams, RootPath};
pub use tree::{generate, parse_tree, NodeId, OrderedTree, TreeError, TreeFamily};
pub use validate::{validate, Condition, Outcome, ValidationReport};
