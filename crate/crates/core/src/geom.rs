//! Exact integer predicates on grid points.

use crate::drawing::Point;

/// Twice the signed area of `a, b, c`: positive when `c` lies to the left
/// of `a -> b` in a y-up frame.
pub fn orient(a: Point, b: Point, c: Point) -> i128 {
    let abx = (b.x as i128) - (a.x as i128);
    let aby = (b.y as i128) - (a.y as i128);
    let acx = (c.x as i128) - (a.x as i128);
    let acy = (c.y as i128) - (a.y as i128);
    abx * acy - aby * acx
}

/// `p` on the closed segment `ab`.
pub fn on_segment(a: Point, b: Point, p: Point) -> bool {
    orient(a, b, p) == 0 && between(a.x, b.x, p.x) && between(a.y, b.y, p.y)
}

fn between(a: i64, b: i64, v: i64) -> bool {
    a.min(b) <= v && v <= a.max(b)
}

/// Closed segments `ab` and `cd` share at least one point.
pub fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orient(a, b, c).signum();
    let o2 = orient(a, b, d).signum();
    let o3 = orient(c, d, a).signum();
    let o4 = orient(c, d, b).signum();
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && on_segment(a, b, c))
        || (o2 == 0 && on_segment(a, b, d))
        || (o3 == 0 && on_segment(c, d, a))
        || (o4 == 0 && on_segment(c, d, b))
}

/// A point shared by two intersecting segments, for reporting.
pub fn intersection_point(a: Point, b: Point, c: Point, d: Point) -> [f64; 2] {
    for (p, q, r) in [(a, c, d), (b, c, d), (c, a, b), (d, a, b)] {
        if on_segment(q, r, p) {
            return [p.x as f64, p.y as f64];
        }
    }
    let denom = ((b.x - a.x) as i128) * ((d.y - c.y) as i128) - ((b.y - a.y) as i128) * ((d.x - c.x) as i128);
    let num = ((c.x - a.x) as i128) * ((d.y - c.y) as i128) - ((c.y - a.y) as i128) * ((d.x - c.x) as i128);
    let t = num as f64 / denom as f64;
    [a.x as f64 + t * (b.x - a.x) as f64, a.y as f64 + t * (b.y - a.y) as f64]
}

/// Direction vector `to - from`.
pub fn dir(from: Point, to: Point) -> (i128, i128) {
    ((to.x - from.x) as i128, (to.y - from.y) as i128)
}

pub fn cross(u: (i128, i128), v: (i128, i128)) -> i128 {
    u.0 * v.1 - u.1 * v.0
}

pub fn dot(u: (i128, i128), v: (i128, i128)) -> i128 {
    u.0 * v.0 + u.1 * v.1
}
