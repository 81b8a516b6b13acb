//! Benchmarks over tree families, exponent fits and exhaustive checks on
//! small trees.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::drawing::{measure, GridDrawing};
use crate::layout::{layout, Algo, LayoutError, LayoutKind, Variant};
use crate::path::{select_path, PathError, PathParams};
use crate::tree::{enumerate_trees, generate, NodeId, OrderedTree, TreeError, TreeFamily};
use crate::validate::{check_width_recurrence, validate, Condition, ValidateError};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Validate(#[from] ValidateError),
    #[error("seed {seed} (n = {n}): {kind} drawing fails {conditions}")]
    InvalidDrawing { n: usize, seed: u64, kind: String, conditions: String },
    #[error("bad size list {0:?}")]
    Sizes(String),
    #[error("need at least 4 distinct sizes, got {0}")]
    TooFewSizes(usize),
    #[error("max_n must be between 1 and 12, got {0}")]
    OracleRange(usize),
    #[error("counterexample {tree}: {reason}")]
    Counterexample { tree: String, reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub seed: u64,
    pub width: i64,
    pub height: i64,
    pub area: i64,
    pub bends: usize,
    pub ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRun {
    /// Template; its size parameter is replaced by each entry of `sizes`.
    pub family: TreeFamily,
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub kind: LayoutKind,
    pub params: PathParams,
    pub base_seed: u64,
    /// Report zero wall time so output is reproducible byte for byte.
    pub timing: bool,
    pub rows: Vec<BenchRow>,
}

impl BenchRun {
    pub fn new(family: TreeFamily, sizes: Vec<usize>, trials: usize, kind: LayoutKind) -> Self {
        BenchRun { family, sizes, trials, kind, params: PathParams::default(), base_seed: 0, timing: true, rows: Vec::new() }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,seed,width,height,area,bends,ms\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{},{},{},{},{}", r.n, r.seed, r.width, r.height, r.area, r.bends, r.ms);
        }
        out
    }
}

/// Family instance for size `n` and the given seed. For `complete` the size
/// is the height and for `lowerbound` it is `k`.
pub fn family_at(template: &TreeFamily, n: usize, seed: u64) -> TreeFamily {
    match *template {
        TreeFamily::Random { max_arity, .. } => TreeFamily::Random { n, max_arity, seed },
        TreeFamily::Complete { arity, .. } => TreeFamily::Complete { arity, height: n },
        TreeFamily::Path { .. } => TreeFamily::Path { n },
        TreeFamily::Star { .. } => TreeFamily::Star { n },
        TreeFamily::LowerBound { .. } => TreeFamily::LowerBound { k: n },
    }
}

pub fn cell_seed(base: u64, n: usize, trial: usize) -> u64 {
    base.wrapping_add((n as u64) << 20).wrapping_add(trial as u64)
}

/// Conditions a drawing of the given kind must pass.
pub fn required_conditions(kind: LayoutKind) -> Vec<Condition> {
    use Condition::*;
    match kind.algo {
        Algo::Quadratic => vec![Planar, Order, Upward, P1, P2, P3, P4, P5, P6, P7, P8],
        Algo::OneBend => vec![Planar, Order, Upward, P1, P2, P3, P4, P5],
        // type II drawings split the right group of the path node with the
        // left subtree around it, so P5 is reported but not required
        Algo::NonUpward => vec![Planar, Order, P1, P2, P3, P4, P6, P8],
        Algo::Upward => vec![Planar, Order, Upward, P1, P2, P3, P4, P5, P6, P7],
    }
}

/// Lays out `t` and checks the result against [`required_conditions`] and,
/// for the spine engines, the width recurrence.
pub fn checked_layout(t: &OrderedTree, kind: LayoutKind, params: &PathParams) -> Result<GridDrawing, (ExperimentError, Option<GridDrawing>)> {
    let d = layout(t, kind, params).map_err(|e| (e.into(), None))?;
    let report = validate(t, &d, &required_conditions(kind)).map_err(|e| (e.into(), None))?;
    let mut failed: Vec<String> = report.failures().iter().map(|c| c.to_string()).collect();
    if kind.algo != Algo::Quadratic && !check_width_recurrence(t, &d).map_err(|e| (e.into(), None))?.passed() {
        failed.push("width recurrence".into());
    }
    if failed.is_empty() {
        Ok(d)
    } else {
        let kind_name = format!("{}/{}", kind.algo, kind.variant);
        Err((ExperimentError::InvalidDrawing { n: t.len(), seed: 0, kind: kind_name, conditions: failed.join(",") }, Some(d)))
    }
}

pub fn run_bench(mut spec: BenchRun) -> Result<BenchRun, ExperimentError> {
    spec.params.validate()?;
    let kind = LayoutKind::new(spec.kind.algo, spec.kind.variant)?;
    let cells: Vec<(usize, usize)> = spec.sizes.iter().flat_map(|&n| (0..spec.trials).map(move |i| (n, i))).collect();
    let results: Vec<Result<BenchRow, ExperimentError>> = cells
        .par_iter()
        .map(|&(n, trial)| {
            let seed = cell_seed(spec.base_seed, n, trial);
            let t = generate(&family_at(&spec.family, n, seed))?;
            let start = Instant::now();
            let d = checked_layout(&t, kind, &spec.params).map_err(|(e, _)| match e {
                ExperimentError::InvalidDrawing { n, kind, conditions, .. } => {
                    ExperimentError::InvalidDrawing { n, seed, kind, conditions }
                }
                other => other,
            })?;
            let ms = if spec.timing { start.elapsed().as_millis() as u64 } else { 0 };
            let m = measure(&d);
            Ok(BenchRow { n: t.len(), seed, width: m.width, height: m.height, area: m.area, bends: m.bends, ms })
        })
        .collect();
    let mut rows = Vec::with_capacity(results.len());
    for r in results {
        rows.push(r?);
    }
    rows.sort_by_key(|r| (r.n, r.seed));
    spec.rows = rows;
    Ok(spec)
}

/// Parses `a:b:xR` (geometric), `a:b:+s` (arithmetic) or a comma list.
/// Geometric sizes are rounded and deduplicated; `b` is always included.
pub fn parse_sizes(text: &str) -> Result<Vec<usize>, ExperimentError> {
    let bad = || ExperimentError::Sizes(text.to_string());
    let parts: Vec<&str> = text.split(':').collect();
    let mut out = match parts.as_slice() {
        [list] => list.split(',').map(|s| s.trim().parse::<usize>().map_err(|_| bad())).collect::<Result<Vec<_>, _>>()?,
        [a, b, step] => {
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().parse().map_err(|_| bad())?;
            if a == 0 || a > b {
                return Err(bad());
            }
            let mut v = Vec::new();
            if let Some(r) = step.strip_prefix('x') {
                let r: f64 = r.parse().map_err(|_| bad())?;
                if r.is_nan() || r <= 1.0 {
                    return Err(bad());
                }
                let mut x = a as f64;
                while x.round() as usize <= b {
                    v.push(x.round() as usize);
                    x *= r;
                }
            } else {
                let s: usize = step.trim_start_matches('+').parse().map_err(|_| bad())?;
                if s == 0 {
                    return Err(bad());
                }
                v.extend((a..=b).step_by(s));
            }
            if v.last() != Some(&b) {
                v.push(b);
            }
            v
        }
        _ => return Err(bad()),
    };
    out.dedup();
    if out.is_empty() || out.contains(&0) {
        return Err(bad());
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Width,
    Height,
    Area,
}

impl std::str::FromStr for Metric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "width" => Ok(Metric::Width),
            "height" => Ok(Metric::Height),
            "area" => Ok(Metric::Area),
            _ => Err(format!("unknown metric {s:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    /// The metric was the same at every size.
    pub degenerate: bool,
}

/// Least squares fit of `ln(max over trials)` against `ln n`.
pub fn fit_exponent(rows: &[BenchRow], metric: Metric) -> Result<Fit, ExperimentError> {
    let mut best: std::collections::BTreeMap<usize, i64> = std::collections::BTreeMap::new();
    for r in rows {
        let v = match metric {
            Metric::Width => r.width,
            Metric::Height => r.height,
            Metric::Area => r.area,
        };
        let e = best.entry(r.n).or_insert(v);
        *e = (*e).max(v);
    }
    if best.len() < 4 {
        return Err(ExperimentError::TooFewSizes(best.len()));
    }
    let pts: Vec<(f64, f64)> = best.iter().map(|(&n, &v)| ((n as f64).ln(), (v as f64).ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    if best.values().all(|&v| v == *best.values().next().unwrap()) {
        return Ok(Fit { slope: 0.0, intercept: my, r2: 1.0, degenerate: true });
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    Ok(Fit { slope, intercept, r2, degenerate: false })
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    /// `(n, number of ordered trees with n nodes)`.
    pub per_size: Vec<(usize, usize)>,
    pub trees: usize,
    pub layouts: usize,
}

/// Side sizes of a root-to-leaf path, computed by walking it.
fn path_sides(t: &OrderedTree, path: &[NodeId]) -> (usize, usize) {
    let (mut left, mut right) = (0, 0);
    for w in path.windows(2) {
        let kids = t.children(w[0]);
        let at = kids.iter().position(|&c| c == w[1]).expect("path follows edges");
        left = kids[..at].iter().map(|&c| t.size(c)).fold(left, usize::max);
        right = kids[at + 1..].iter().map(|&c| t.size(c)).fold(right, usize::max);
    }
    (left, right)
}

fn satisfies(t: &OrderedTree, path: &[NodeId], params: &PathParams) -> bool {
    let (a, b) = path_sides(t, path);
    let n = t.len() as f64;
    (a as f64).powf(params.p) + (b as f64).powf(params.p) <= (1.0 - params.delta) * n.powf(params.p) * (1.0 + 1e-12)
}

/// Every root-to-leaf path that satisfies the invariant.
pub fn brute_force_paths(t: &OrderedTree, params: &PathParams) -> Vec<Vec<NodeId>> {
    let mut good = Vec::new();
    for leaf in (0..t.len()).filter(|&v| t.is_leaf(v)) {
        let mut path = vec![leaf];
        let mut v = leaf;
        while let Some(p) = t.parent(v) {
            path.push(p);
            v = p;
        }
        path.reverse();
        if satisfies(t, &path, params) {
            good.push(path);
        }
    }
    good
}

const ORACLE_KINDS: [(Algo, Variant); 8] = [
    (Algo::Quadratic, Variant::Default),
    (Algo::OneBend, Variant::Default),
    (Algo::NonUpward, Variant::I),
    (Algo::NonUpward, Variant::IIl),
    (Algo::NonUpward, Variant::IIr),
    (Algo::Upward, Variant::I),
    (Algo::Upward, Variant::IIIl),
    (Algo::Upward, Variant::IIIr),
];

/// Runs every ordered tree with at most `max_n` nodes through the path
/// oracle, `select_path` and all engines.
pub fn oracle_small_trees(max_n: usize, params: &PathParams) -> Result<OracleReport, ExperimentError> {
    if !(1..=12).contains(&max_n) {
        return Err(ExperimentError::OracleRange(max_n));
    }
    params.validate()?;
    let mut report = OracleReport::default();
    for n in 1..=max_n {
        let trees = enumerate_trees(n);
        report.per_size.push((n, trees.len()));
        let layouts: usize = trees
            .par_iter()
            .map(|t| check_small_tree(t, params))
            .collect::<Result<Vec<usize>, ExperimentError>>()?
            .into_iter()
            .sum();
        report.trees += trees.len();
        report.layouts += layouts;
    }
    Ok(report)
}

fn check_small_tree(t: &OrderedTree, params: &PathParams) -> Result<usize, ExperimentError> {
    let fail = |reason: String| ExperimentError::Counterexample { tree: t.serialize(), reason };
    if brute_force_paths(t, params).is_empty() {
        return Err(fail("no root-to-leaf path satisfies the invariant".into()));
    }
    let path = select_path(t, params).map_err(|e| fail(e.to_string()))?;
    if !t.is_leaf(*path.nodes.last().unwrap()) || path.nodes[0] != t.root() || !satisfies(t, &path.nodes, params) {
        return Err(fail(format!("selected path {:?} violates the invariant", path.nodes)));
    }
    for (algo, variant) in ORACLE_KINDS {
        let kind = LayoutKind::new(algo, variant)?;
        checked_layout(t, kind, params).map_err(|(e, _)| fail(e.to_string()))?;
    }
    Ok(ORACLE_KINDS.len())
}
