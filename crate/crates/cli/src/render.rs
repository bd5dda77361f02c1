//! Static SVG pictures of polytopes and cone fans.
//!
//! Three-dimensional input is projected orthographically. By default the
//! third coordinate is dropped; `along` picks another viewing direction.

use std::fmt::Write as _;

use sutured::cones::DualConeSystem;
use sutured::error::{Error, Result};
use sutured::linalg::{Coords, Side};
use sutured::polytope::Polytope;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 60.0;

/// Maps ambient coordinates to the drawing plane.
#[derive(Clone, Debug)]
pub struct Projection {
    dim: usize,
    axes: Option<[[f64; 3]; 2]>,
}

impl Projection {
    /// Identity in dimension ≤ 2, drop-the-last-coordinate in dimension 3.
    pub fn standard(dim: usize) -> Result<Self> {
        if dim == 0 || dim > 3 {
            return Err(Error::RenderDimension { dim });
        }
        Ok(Projection { dim, axes: None })
    }

    /// Orthographic projection of ℝ³ along `v` onto `v⊥`.
    pub fn along(dim: usize, v: &[f64]) -> Result<Self> {
        if dim != 3 {
            return Err(Error::RenderDimension { dim });
        }
        if v.len() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, found: v.len() });
        }
        let n = norm(v);
        if n == 0.0 {
            return Err(Error::Parse("projection direction must be nonzero".into()));
        }
        let w = [v[0] / n, v[1] / n, v[2] / n];
        let mut axes = Vec::new();
        for e in [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]] {
            let mut u = sub(e, scale(w, dot(e, w)));
            for a in &axes {
                u = sub(u, scale(*a, dot(u, *a)));
            }
            let len = norm(&u);
            if len > 1e-9 && axes.len() < 2 {
                axes.push(scale(u, 1.0 / len));
            }
        }
        Ok(Projection { dim, axes: Some([axes[0], axes[1]]) })
    }

    fn apply(&self, x: &[f64]) -> (f64, f64) {
        match (&self.axes, self.dim) {
            (Some([a, b]), _) => (dot3(x, *a), dot3(x, *b)),
            (None, 1) => (x[0], 0.0),
            (None, _) => (x[0], x[1]),
        }
    }
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn dot3(a: &[f64], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn scale(a: [f64; 3], k: f64) -> [f64; 3] {
    [a[0] * k, a[1] * k, a[2] * k]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn pad3(x: &[f64]) -> [f64; 3] {
    let mut out = [0.0; 3];
    out[..x.len()].copy_from_slice(x);
    out
}

/// Accumulates shapes in plane coordinates and writes them out scaled to fit.
struct Canvas {
    shapes: Vec<Shape>,
}

enum Shape {
    Polygon { class: &'static str, points: Vec<(f64, f64)>, fill: Option<String> },
    Line { class: &'static str, from: (f64, f64), to: (f64, f64) },
    Dot { at: (f64, f64) },
    Label { at: (f64, f64), text: String },
}

impl Canvas {
    fn finish(self, title: &str) -> String {
        let pts: Vec<(f64, f64)> = self
            .shapes
            .iter()
            .flat_map(|s| match s {
                Shape::Polygon { points, .. } => points.clone(),
                Shape::Line { from, to, .. } => vec![*from, *to],
                Shape::Dot { at } | Shape::Label { at, .. } => vec![*at],
            })
            .chain([(0.0, 0.0)])
            .collect();
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for (x, y) in &pts {
            x0 = x0.min(*x);
            x1 = x1.max(*x);
            y0 = y0.min(*y);
            y1 = y1.max(*y);
        }
        let extent = (x1 - x0).max(y1 - y0).max(1e-9);
        let k = (SIZE - 2.0 * MARGIN) / extent;
        let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
        let map = |(x, y): (f64, f64)| (SIZE / 2.0 + (x - cx) * k, SIZE / 2.0 - (y - cy) * k);
        let f = |v: f64| format!("{:.3}", v + 0.0);

        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
        );
        let _ = writeln!(out, "  <title>{}</title>", escape(title));
        let _ = writeln!(out, r##"  <rect width="100%" height="100%" fill="#ffffff"/>"##);
        for s in &self.shapes {
            match s {
                Shape::Polygon { class, points, fill } => {
                    let p: Vec<String> = points
                        .iter()
                        .map(|&q| {
                            let (x, y) = map(q);
                            format!("{},{}", f(x), f(y))
                        })
                        .collect();
                    let style = match fill {
                        Some(c) => format!(r#"fill="{c}" fill-opacity="0.3" stroke="{c}""#),
                        None => r##"fill="none" stroke="#333333""##.to_string(),
                    };
                    let _ = writeln!(
                        out,
                        r#"  <polygon class="{class}" points="{}" {style} stroke-width="1.5"/>"#,
                        p.join(" ")
                    );
                }
                Shape::Line { class, from, to } => {
                    let (a, b) = (map(*from), map(*to));
                    let _ = writeln!(
                        out,
                        r##"  <line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#333333" stroke-width="1.5"/>"##,
                        f(a.0),
                        f(a.1),
                        f(b.0),
                        f(b.1)
                    );
                }
                Shape::Dot { at } => {
                    let (x, y) = map(*at);
                    let _ = writeln!(
                        out,
                        r##"  <circle class="vertex" cx="{}" cy="{}" r="4" fill="#000000"/>"##,
                        f(x),
                        f(y)
                    );
                }
                Shape::Label { at, text } => {
                    let (x, y) = map(*at);
                    let _ = writeln!(
                        out,
                        r#"  <text x="{}" y="{}" font-family="monospace" font-size="12">{}</text>"#,
                        f(x + 6.0),
                        f(y - 6.0),
                        escape(text)
                    );
                }
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Vertices as labeled dots, facets as outlines (edges in the plane).
pub fn render_polytope<S: Side>(p: &Polytope<S>, proj: &Projection) -> Result<String> {
    if p.ambient_dim() != proj.dim {
        return Err(Error::DimensionMismatch { expected: proj.dim, found: p.ambient_dim() });
    }
    let verts: Vec<Vec<f64>> = p.vertices().iter().map(Coords::to_f64).collect();
    let mut canvas = Canvas { shapes: Vec::new() };
    if p.is_full_dimensional() && p.ambient_dim() >= 2 {
        for facet in p.facets()? {
            let idx: Vec<usize> = facet.incident_vertex_indices.iter().copied().collect();
            if p.ambient_dim() == 2 {
                canvas.shapes.push(Shape::Line {
                    class: "facet",
                    from: proj.apply(&verts[idx[0]]),
                    to: proj.apply(&verts[idx[1]]),
                });
            } else {
                let ring = facet_ring(&idx, &verts, &pad3(&facet.outward_normal.to_f64()));
                canvas.shapes.push(Shape::Polygon {
                    class: "facet",
                    points: ring.iter().map(|&i| proj.apply(&verts[i])).collect(),
                    fill: None,
                });
            }
        }
    } else if verts.len() > 1 {
        // lower-dimensional: outline the planar hull of the projected points
        let pts: Vec<(f64, f64)> = verts.iter().map(|v| proj.apply(v)).collect();
        let hull = planar_hull(&pts);
        canvas.shapes.push(Shape::Polygon { class: "hull", points: hull, fill: None });
    }
    for (v, c) in verts.iter().zip(p.vertices()) {
        canvas.shapes.push(Shape::Dot { at: proj.apply(v) });
        canvas.shapes.push(Shape::Label { at: proj.apply(v), text: c.to_string() });
    }
    Ok(canvas.finish(&format!("polytope with {} vertices", p.vertex_count())))
}

/// Orders the vertices of a 3D facet cyclically around its centroid.
fn facet_ring(idx: &[usize], verts: &[Vec<f64>], normal: &[f64; 3]) -> Vec<usize> {
    let c = idx.iter().fold([0.0; 3], |acc, &i| {
        let v = pad3(&verts[i]);
        [acc[0] + v[0], acc[1] + v[1], acc[2] + v[2]]
    });
    let c = scale(c, 1.0 / idx.len() as f64);
    let a = sub(pad3(&verts[idx[0]]), c);
    let b = cross(*normal, a);
    let mut ring: Vec<(f64, usize)> = idx
        .iter()
        .map(|&i| {
            let d = sub(pad3(&verts[i]), c);
            (dot(d, b).atan2(dot(d, a)), i)
        })
        .collect();
    ring.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
    ring.into_iter().map(|(_, i)| i).collect()
}

/// Counter-clockwise convex hull (monotone chain).
fn planar_hull(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    pts.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12);
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut lower: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 1e-12 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(f64, f64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 1e-12 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// One shaded region per cone, bounded by its rays cut off at `radius`,
/// plus one line per distinct ray direction.
pub fn render_cones<S: Side>(sys: &DualConeSystem<S>, proj: &Projection, radius: f64) -> Result<String> {
    let dim = sys.source().ambient_dim();
    if dim != proj.dim {
        return Err(Error::DimensionMismatch { expected: proj.dim, found: dim });
    }
    let tip = |r: &Coords<S::Dual>| {
        let x = r.to_f64();
        let n = norm(&x);
        proj.apply(&x.iter().map(|c| c * radius / n).collect::<Vec<_>>())
    };
    let mut canvas = Canvas { shapes: Vec::new() };
    let n = sys.cones().len();
    for (i, cone) in sys.cones().iter().enumerate() {
        let mut pts = vec![(0.0, 0.0)];
        pts.extend(cone.generators().iter().map(tip));
        let hull = planar_hull(&pts);
        let centre = hull.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
        let centre = (centre.0 / hull.len() as f64, centre.1 / hull.len() as f64);
        let hue = (i * 360) / n.max(1);
        canvas.shapes.push(Shape::Polygon { class: "cone", points: hull, fill: Some(format!("hsl({hue}, 70%, 50%)")) });
        canvas.shapes.push(Shape::Label { at: centre, text: format!("Q{}", cone.label().unwrap_or(i)) });
    }
    for r in sys.ray_union() {
        let end = tip(&r);
        canvas.shapes.push(Shape::Line { class: "ray", from: (0.0, 0.0), to: end });
        canvas.shapes.push(Shape::Label { at: end, text: r.to_string() });
    }
    Ok(canvas.finish(&format!("{n} dual cones")))
}
