use thiserror::Error;

use crate::drawing::{GridDrawing, Point};
use crate::tree::NodeId;
use crate::validate::{check_order_preserving, check_planar, ValidateError};

/// Largest number of rows inserted for a single bend.
const MAX_INSERT: i64 = 1 << 40;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StretchError {
    #[error("bend of edge into {edge_to} shares row {row} with another node or bend")]
    SharedRow { edge_to: NodeId, row: i64 },
    #[error("no straight line found for edge into {edge_to} within {MAX_INSERT} inserted rows")]
    NoLineOfSight { edge_to: NodeId },
    #[error("coordinate overflow while inserting rows")]
    Overflow,
    #[error("input is not upward at edge into {0}")]
    NotUpward(NodeId),
    #[error(transparent)]
    Invalid(#[from] ValidateError),
}

/// Removes every bend by inserting empty rows above it until the straight
/// segment from parent to child is free, topmost bend first.
///
/// Inserting rows moves everything at or below the bend, so edges that are
/// already straight above it keep their shape while the lower siblings of
/// the current child only become steeper. The number of rows is the
/// smallest one, found by doubling and bisection, for which the whole
/// drawing is still planar and order preserving.
pub fn stretch_to_straightline(d: &GridDrawing) -> Result<GridDrawing, StretchError> {
    let t = d.to_tree().map_err(|e| ValidateError::Mismatch(e.to_string()))?;
    let mut rows = std::collections::HashMap::<i64, usize>::new();
    for p in d.points() {
        *rows.entry(p.y).or_default() += 1;
    }
    let mut bent: Vec<(Point, NodeId)> = Vec::new();
    for e in &d.edges {
        if let Some(b) = e.bend {
            if rows[&b.y] > 1 {
                return Err(StretchError::SharedRow { edge_to: e.to, row: b.y });
            }
            let (py, cy) = (d.positions[e.from].y, d.positions[e.to].y);
            if !(py < b.y && b.y < cy) {
                return Err(StretchError::NotUpward(e.to));
            }
            bent.push((b, e.to));
        }
    }
    bent.sort_by_key(|(b, v)| (b.y, *v));

    let mut cur = d.clone();
    for (_, v) in bent {
        let row = cur.edges[v - 1].bend.expect("bend still present").y;
        let attempt = |k: i64| -> Result<Option<GridDrawing>, StretchError> {
            let cand = insert_rows(&cur, v, row, k)?;
            let ok = check_planar(&t, &cand)?.passed() && check_order_preserving(&t, &cand)?.passed();
            Ok(ok.then_some(cand))
        };
        // `lo` always fails, `hi` is the next candidate
        let (mut lo, mut hi) = (-1i64, 0i64);
        let mut best = loop {
            if let Some(c) = attempt(hi)? {
                break c;
            }
            lo = hi;
            hi = hi.max(1).checked_mul(2).ok_or(StretchError::Overflow)?;
            if hi > MAX_INSERT {
                return Err(StretchError::NoLineOfSight { edge_to: v });
            }
        };
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            match attempt(mid)? {
                Some(c) => {
                    hi = mid;
                    best = c;
                }
                None => lo = mid,
            }
        }
        cur = best;
    }
    Ok(cur)
}

/// Shifts everything at or below `row` down by `k` and straightens the edge
/// into `v`.
fn insert_rows(d: &GridDrawing, v: NodeId, row: i64, k: i64) -> Result<GridDrawing, StretchError> {
    let shift = |p: &mut Point| -> Result<(), StretchError> {
        if p.y >= row {
            p.y = p.y.checked_add(k).ok_or(StretchError::Overflow)?;
        }
        Ok(())
    };
    let mut out = d.clone();
    for p in &mut out.positions {
        shift(p)?;
    }
    for e in &mut out.edges {
        if let Some(b) = e.bend.as_mut() {
            shift(b)?;
        }
    }
    out.edges[v - 1].bend = None;
    Ok(out)
}
