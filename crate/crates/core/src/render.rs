//! SVG pictures of an instance over a 3 x 3 window of lattice cells.

use std::fmt::Write;

use crate::constraints::ConstraintKind;
use crate::geometry::{Arc, BoundaryElement, Orientation, Point, Segment};
use crate::instance::{Region, TilingInstance};

/// Fill colour by colour number, 1-based.
pub const PALETTE: [&str; 9] =
    ["#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6", "#9a6324"];

/// Width of the picture in pixels.
const WIDTH: f64 = 800.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RenderOptions {
    pub void_zoom: f64,
    pub show_constraints: bool,
    pub cell_outline: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { void_zoom: 1.0, show_constraints: false, cell_outline: true }
    }
}

fn fill(color: Option<u8>) -> &'static str {
    match color {
        Some(c) if (1..=9).contains(&c) => PALETTE[c as usize - 1],
        _ => "#808080",
    }
}

/// Area centroid of a closed chain, from a fine polygonal approximation.
pub fn centroid(r: &Region) -> Point {
    let pts: Vec<Point> = r.boundary.iter().flat_map(|e| e.sample(32).into_iter().skip(1)).collect();
    let (mut a, mut c) = (0.0, Point::ORIGIN);
    for (i, &p) in pts.iter().enumerate() {
        let q = pts[(i + 1) % pts.len()];
        let w = p.cross(q);
        a += w;
        c = c + (p + q) * w;
    }
    if a.abs() < 1e-300 {
        return r.bounding_disk().0;
    }
    c / (3.0 * a)
}

fn scaled(e: &BoundaryElement, about: Point, k: f64) -> BoundaryElement {
    let s = |p: Point| about + (p - about) * k;
    match *e {
        BoundaryElement::Segment(g) => BoundaryElement::Segment(Segment { start: s(g.start), end: s(g.end) }),
        BoundaryElement::Arc(a) => {
            BoundaryElement::Arc(Arc { start: s(a.start), end: s(a.end), center: s(a.center), radius: a.radius * k, ..a })
        }
    }
}

struct Canvas {
    origin: Point,
    scale: f64,
    height: f64,
}

impl Canvas {
    fn xy(&self, p: Point) -> (f64, f64) {
        ((p.x - self.origin.x) * self.scale, self.height - (p.y - self.origin.y) * self.scale)
    }

    fn mv(&self, p: Point) -> String {
        let (x, y) = self.xy(p);
        format!("M{x:.3} {y:.3}")
    }

    /// Path command drawing `e` from its start; the y flip swaps the arc sweep.
    fn draw(&self, e: &BoundaryElement) -> String {
        let (x, y) = self.xy(e.end());
        match e {
            BoundaryElement::Segment(_) => format!("L{x:.3} {y:.3}"),
            BoundaryElement::Arc(a) => {
                let large = u8::from(a.sweep().abs() > std::f64::consts::PI);
                let sweep = u8::from(a.orientation == Orientation::Cw);
                format!("A{r:.3} {r:.3} 0 {large} {sweep} {x:.3} {y:.3}", r = a.radius * self.scale)
            }
        }
    }

    fn closed(&self, chain: &[BoundaryElement]) -> String {
        let mut d = match chain.first() {
            Some(e) => self.mv(e.start()),
            None => return String::new(),
        };
        for e in chain {
            d += &self.draw(e);
        }
        d + "Z"
    }
}

fn window(inst: &TilingInstance) -> Vec<Point> {
    let [a, b] = inst.lattice;
    (-1..=1).flat_map(|i| (-1..=1).map(move |j| a * i as f64 + b * j as f64)).collect()
}

/// Box around the 3 x 3 block of cells and every region drawn in it.
fn bounds(inst: &TilingInstance) -> (Point, Point) {
    let [a, b] = inst.lattice;
    let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut grow = |p: Point| {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    };
    for s in window(inst) {
        for c in [Point::ORIGIN, a, b, a + b] {
            grow(c + s);
        }
        for r in inst.tiles.iter().chain(&inst.voids) {
            let (l, h) = r.bbox();
            grow(l + s);
            grow(h + s);
        }
    }
    let pad = (hi - lo) * 0.02;
    (lo - pad, hi + pad)
}

/// SVG document for the instance. Identical inputs give identical bytes.
pub fn render(inst: &TilingInstance, opts: &RenderOptions) -> String {
    let zoom = opts.void_zoom.max(1.0);
    let (lo, hi) = bounds(inst);
    let span = hi - lo;
    let scale = if span.x > 0.0 { WIDTH / span.x } else { 1.0 };
    let canvas = Canvas { origin: lo, scale, height: span.y * scale };
    let (w, h) = (WIDTH, canvas.height);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.3} {h:.3}">"#
    );
    let _ = writeln!(
        s,
        r##"<defs><pattern id="hatch" patternUnits="userSpaceOnUse" width="6" height="6" patternTransform="rotate(45)"><rect width="6" height="6" fill="#ffffff"/><line x1="0" y1="0" x2="0" y2="6" stroke="#000000" stroke-width="1.5"/></pattern></defs>"##
    );
    // whatever no tile covers is void
    let _ = writeln!(s, r#"<rect class="background" x="0" y="0" width="{w:.3}" height="{h:.3}" fill="url(#hatch)"/>"#);
    let shifts = window(inst);
    let _ = writeln!(s, r##"<g class="tiles" stroke="#000000" stroke-width="0.5">"##);
    for t in &inst.tiles {
        for &sh in &shifts {
            let moved = t.translated(sh);
            let _ = writeln!(s, r#"<path class="tile" d="{}" fill="{}"/>"#, canvas.closed(&moved.boundary), fill(t.color));
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g class="voids" stroke="#000000" stroke-width="0.5">"##);
    for v in &inst.voids {
        let c = centroid(v);
        let grown: Vec<BoundaryElement> = v.boundary.iter().map(|e| scaled(e, c, zoom)).collect();
        for &sh in &shifts {
            let moved: Vec<BoundaryElement> = grown.iter().map(|e| shift(e, sh)).collect();
            let paint = match v.color {
                Some(_) => format!(r#"fill="{}" fill-opacity="0.6""#, fill(v.color)),
                None => r#"fill="url(#hatch)""#.to_string(),
            };
            let _ = writeln!(s, r#"<path class="void" d="{}" {paint}/>"#, canvas.closed(&moved));
        }
    }
    let _ = writeln!(s, "</g>");
    // non-rigid parts of wavy edges
    let dashed: Vec<String> = inst
        .tiles
        .iter()
        .flat_map(|t| t.non_rigid.iter().map(move |&i| t.boundary[i]))
        .flat_map(|e| shifts.iter().map(move |&sh| shift(&e, sh)))
        .map(|e| canvas.mv(e.start()) + &canvas.draw(&e))
        .collect();
    if !dashed.is_empty() {
        let _ = writeln!(
            s,
            r##"<path class="non-rigid" d="{}" fill="none" stroke="#ffffff" stroke-width="1.2" stroke-dasharray="4 3"/>"##,
            dashed.join("")
        );
    }
    if opts.show_constraints {
        let _ = writeln!(s, r#"<g class="constraints" stroke-width="1" fill="none">"#);
        for q in &inst.constraints {
            let colour = match q.kind {
                ConstraintKind::Inner => "#000000",
                ConstraintKind::Outer | ConstraintKind::OuterExt => "#ff0000",
                ConstraintKind::OuterPair => "#0000ff",
            };
            let pts: Option<Vec<Point>> = q.points.iter().map(|r| inst.points.get(r).copied()).collect();
            if let Some(p) = pts {
                let (x0, y0) = canvas.xy(p[0]);
                let (x1, y1) = canvas.xy(p[3]);
                let (x2, y2) = canvas.xy(p[1]);
                let (x3, y3) = canvas.xy(p[2]);
                let _ = writeln!(
                    s,
                    r#"<path class="constraint" d="M{x0:.3} {y0:.3}L{x1:.3} {y1:.3}M{x2:.3} {y2:.3}L{x3:.3} {y3:.3}" stroke="{colour}"/>"#
                );
            }
        }
        let _ = writeln!(s, "</g>");
    }
    if opts.cell_outline {
        let [a, b] = inst.lattice;
        let pts: Vec<String> = [Point::ORIGIN, a, a + b, b]
            .iter()
            .map(|&p| {
                let (x, y) = canvas.xy(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            s,
            r##"<polygon class="cell" points="{}" fill="#000000" fill-opacity="0.15" stroke="#000000" stroke-width="1" stroke-dasharray="6 4"/>"##,
            pts.join(" ")
        );
    }
    s + "</svg>\n"
}

fn shift(e: &BoundaryElement, by: Point) -> BoundaryElement {
    e.transformed(&crate::geometry::Isometry::translation(by))
}
