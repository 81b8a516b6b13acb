use std::fmt::Write as _;

use crate::drawing::GridDrawing;

const SCALE: i64 = 20;
const MARGIN: i64 = 20;

/// Renders a drawing as a standalone SVG document. The column of the root's
/// spine is shaded, spine edges get their own color and bends are marked
/// with small squares.
pub fn to_svg(d: &GridDrawing) -> String {
    let b = d.bbox();
    let w = (b.width() - 1) * SCALE + 2 * MARGIN;
    let h = (b.height() - 1) * SCALE + 2 * MARGIN;
    let px = |x: i64| (x - b.x0) * SCALE + MARGIN;
    let py = |y: i64| (y - b.y0) * SCALE + MARGIN;

    let mut on_spine = vec![false; d.len()];
    for path in d.spines.values() {
        for &v in path.iter().skip(1) {
            on_spine[v] = true;
        }
    }

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    if let Some(&top) = d.spines.get(&0).and_then(|path| path.first()) {
        let x = px(d.positions[top].x);
        let _ = writeln!(s, r##"<rect x="{}" y="0" width="10" height="{h}" fill="#fdecea"/>"##, x - 5);
    }
    s.push_str("<g fill=\"none\" stroke-width=\"2\">\n");
    for e in &d.edges {
        let from = d.positions[e.from];
        let to = d.positions[e.to];
        let color = if on_spine[e.to] && e.bend.is_none() { "#c0392b" } else { "#34495e" };
        let mut pts = format!("{},{}", px(from.x), py(from.y));
        if let Some(m) = e.bend {
            let _ = write!(pts, " {},{}", px(m.x), py(m.y));
        }
        let _ = write!(pts, " {},{}", px(to.x), py(to.y));
        let _ = writeln!(s, r#"<polyline points="{pts}" stroke="{color}"/>"#);
    }
    s.push_str("</g>\n<g fill=\"#2c3e50\">\n");
    for e in &d.edges {
        if let Some(m) = e.bend {
            let _ = writeln!(s, r#"<rect x="{}" y="{}" width="6" height="6"/>"#, px(m.x) - 3, py(m.y) - 3);
        }
    }
    for (v, p) in d.positions.iter().enumerate() {
        let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="4"><title>{v}</title></circle>"#, px(p.x), py(p.y));
    }
    s.push_str("</g>\n</svg>\n");
    s
}
