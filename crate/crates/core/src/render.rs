//! SVG drawings of a fundamental domain.
//!
//! Arrows are straight segments in the universal cover from the tail to the
//! translated head. A segment leaving the unit square is cut at the boundary
//! and each piece is drawn translated back, as in the usual torus pictures.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::matchings::PerfectMatching;
use crate::path_algebra::Path;
use crate::quiver::{ArrowId, DimerQuiver};

const SIZE: f64 = 400.0;
const MARGIN: f64 = 30.0;

#[derive(Clone, Debug)]
pub enum Overlay {
    Matching(PerfectMatching),
    Contracted(BTreeSet<ArrowId>),
    Path(Path),
}

impl Overlay {
    fn color(&self) -> &'static str {
        match self {
            Overlay::Matching(_) => "#c62828",
            Overlay::Contracted(_) => "#2e7d32",
            Overlay::Path(_) => "#1565c0",
        }
    }

    fn covers(&self, a: ArrowId) -> bool {
        match self {
            Overlay::Matching(d) => d.contains(a),
            Overlay::Contracted(s) => s.contains(&a),
            Overlay::Path(p) => p.arrows().contains(&a),
        }
    }
}

/// Vertex positions in the unit square: the layout, or a grid.
pub fn positions(q: &DimerQuiver) -> Vec<[f64; 2]> {
    if let Some(l) = q.layout() {
        return l.to_vec();
    }
    let n = q.vertex_count();
    let cols = (n as f64).sqrt().ceil().max(1.0) as usize;
    let rows = n.div_ceil(cols).max(1);
    (0..n)
        .map(|k| {
            [
                ((k % cols) as f64 + 0.5) / cols as f64,
                ((k / cols) as f64 + 0.5) / rows as f64,
            ]
        })
        .collect()
}

fn screen(p: [f64; 2]) -> (f64, f64) {
    (MARGIN + p[0] * SIZE, MARGIN + (1.0 - p[1]) * SIZE)
}

/// Pieces of the segment `from → to`, each translated into the unit square.
fn pieces(from: [f64; 2], to: [f64; 2]) -> Vec<([f64; 2], [f64; 2])> {
    let d = [to[0] - from[0], to[1] - from[1]];
    let mut cuts = vec![0.0, 1.0];
    for axis in 0..2 {
        if d[axis] == 0.0 {
            continue;
        }
        let (lo, hi) = if d[axis] > 0.0 {
            (from[axis], to[axis])
        } else {
            (to[axis], from[axis])
        };
        let mut k = lo.floor() + 1.0;
        while k < hi {
            let t = (k - from[axis]) / d[axis];
            if t > 1e-9 && t < 1.0 - 1e-9 {
                cuts.push(t);
            }
            k += 1.0;
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    let at = |t: f64| [from[0] + t * d[0], from[1] + t * d[1]];
    cuts.windows(2)
        .map(|w| {
            let mid = at((w[0] + w[1]) / 2.0);
            let shift = [mid[0].floor(), mid[1].floor()];
            let (a, b) = (at(w[0]), at(w[1]));
            ([a[0] - shift[0], a[1] - shift[1]], [b[0] - shift[0], b[1] - shift[1]])
        })
        .collect()
}

/// Draws `q` with later overlays painted over earlier ones. Output bytes
/// depend only on the inputs.
pub fn render(q: &DimerQuiver, overlays: &[Overlay]) -> String {
    let pos = positions(q);
    let total = SIZE + 2.0 * MARGIN;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{total:.0}\" height=\"{total:.0}\" viewBox=\"0 0 {total:.0} {total:.0}\">"
    );
    out.push_str(
        "<defs><marker id=\"tip\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"7\" markerHeight=\"7\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"context-stroke\"/></marker></defs>\n",
    );
    let _ = writeln!(
        out,
        "<rect x=\"{MARGIN:.0}\" y=\"{MARGIN:.0}\" width=\"{SIZE:.0}\" height=\"{SIZE:.0}\" fill=\"none\" stroke=\"#888\" stroke-dasharray=\"6 4\"/>"
    );
    for a in q.arrow_ids() {
        let (color, width) = overlays
            .iter()
            .rev()
            .find(|o| o.covers(a))
            .map_or(("#222", 1.2), |o| (o.color(), 2.6));
        let from = pos[q.tail(a).0];
        let off = q.offset(a);
        let head = pos[q.head(a).0];
        let to = [head[0] + off.x as f64, head[1] + off.y as f64];
        // stop short of the head vertex so the tip stays visible
        let len = ((to[0] - from[0]).powi(2) + (to[1] - from[1]).powi(2)).sqrt();
        let trim = if len > 0.0 { (0.03 / len).min(0.3) } else { 0.0 };
        let start = [from[0] + trim * (to[0] - from[0]), from[1] + trim * (to[1] - from[1])];
        let end = [to[0] - trim * (to[0] - from[0]), to[1] - trim * (to[1] - from[1])];
        let parts = pieces(start, end);
        let _ = writeln!(out, "<g class=\"arrow\" id=\"arrow-{}\">", q.arrow_name(a));
        for (k, (p0, p1)) in parts.iter().enumerate() {
            let (x0, y0) = screen(*p0);
            let (x1, y1) = screen(*p1);
            let tip = if k + 1 == parts.len() {
                " marker-end=\"url(#tip)\""
            } else {
                ""
            };
            let _ = writeln!(
                out,
                "<line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x1:.2}\" y2=\"{y1:.2}\" stroke=\"{color}\" stroke-width=\"{width}\"{tip}/>"
            );
        }
        let longest = parts
            .iter()
            .max_by(|x, y| {
                let lx = (x.1[0] - x.0[0]).hypot(x.1[1] - x.0[1]);
                let ly = (y.1[0] - y.0[0]).hypot(y.1[1] - y.0[1]);
                lx.total_cmp(&ly)
            })
            .copied();
        if let Some((p0, p1)) = longest {
            let (x, y) = screen([(p0[0] + p1[0]) / 2.0, (p0[1] + p1[1]) / 2.0]);
            let _ = writeln!(
                out,
                "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" fill=\"{color}\">{}</text>",
                x + 3.0,
                y - 3.0,
                q.arrow_name(a)
            );
        }
        out.push_str("</g>\n");
    }
    for v in q.vertices() {
        let (x, y) = screen(pos[v.0]);
        let _ = writeln!(
            out,
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"5\" fill=\"#fff\" stroke=\"#000\"/><text x=\"{:.2}\" y=\"{:.2}\" font-size=\"10\">{}</text>",
            x + 6.0,
            y + 12.0,
            v.0
        );
    }
    out.push_str("</svg>\n");
    out
}
