//! Extremal distances between boundary elements, by case analysis.
//!
//! Every function returns the distance together with a witness pair of points.

use super::element::{Arc, BoundaryElement, Segment};
use super::point::Point;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Extremum {
    pub distance: f64,
    pub witness: (Point, Point),
}

impl Extremum {
    fn new(a: Point, b: Point) -> Self {
        Extremum { distance: a.dist(b), witness: (a, b) }
    }

    fn swap(self) -> Self {
        Extremum { distance: self.distance, witness: (self.witness.1, self.witness.0) }
    }
}

fn best_min(c: impl IntoIterator<Item = Extremum>) -> Extremum {
    c.into_iter().min_by(|a, b| a.distance.total_cmp(&b.distance)).expect("no candidates")
}

fn best_max(c: impl IntoIterator<Item = Extremum>) -> Extremum {
    c.into_iter().max_by(|a, b| a.distance.total_cmp(&b.distance)).expect("no candidates")
}

pub fn point_segment_min(p: Point, s: &Segment) -> Extremum {
    Extremum::new(p, s.closest(p))
}

pub fn point_segment_max(p: Point, s: &Segment) -> Extremum {
    best_max([Extremum::new(p, s.start), Extremum::new(p, s.end)])
}

pub fn point_arc_min(p: Point, a: &Arc) -> Extremum {
    let d = p - a.center;
    if d.norm() > 0.0 && a.contains_direction(d) {
        return Extremum::new(p, a.center + d.unit() * a.radius);
    }
    if d.norm() == 0.0 {
        return Extremum::new(p, a.start);
    }
    best_min([Extremum::new(p, a.start), Extremum::new(p, a.end)])
}

pub fn point_arc_max(p: Point, a: &Arc) -> Extremum {
    let d = a.center - p;
    if d.norm() == 0.0 {
        return Extremum::new(p, a.start);
    }
    if a.contains_direction(d) {
        return Extremum::new(p, a.center + d.unit() * a.radius);
    }
    best_max([Extremum::new(p, a.start), Extremum::new(p, a.end)])
}

/// Intersection point of two closed segments, if any.
pub fn segment_intersection(s: &Segment, t: &Segment) -> Option<Point> {
    let r = s.dir();
    let q = t.dir();
    let den = r.cross(q);
    let w = t.start - s.start;
    // relative test: rounding makes nearly collinear pieces look like crossing lines
    if den.abs() <= 1e-12 * r.norm() * q.norm() {
        let far = (t.start - s.start).cross(r).abs().max((t.end - s.start).cross(r).abs());
        if far > 1e-12 * r.norm() * (w.norm() + q.norm()) {
            return None;
        }
        // collinear: overlap test along r
        let rr = r.norm2();
        let t0 = w.dot(r) / rr;
        let t1 = (t.end - s.start).dot(r) / rr;
        let (lo, hi) = (t0.min(t1), t0.max(t1));
        if hi < 0.0 || lo > 1.0 {
            return None;
        }
        return Some(s.start + r * lo.max(0.0));
    }
    let u = w.cross(q) / den;
    let v = w.cross(r) / den;
    if (0.0..=1.0).contains(&u) && (0.0..=1.0).contains(&v) {
        Some(s.start + r * u)
    } else {
        None
    }
}

fn segment_segment_min(s: &Segment, t: &Segment) -> Extremum {
    if let Some(x) = segment_intersection(s, t) {
        return Extremum::new(x, x);
    }
    best_min([
        point_segment_min(s.start, t),
        point_segment_min(s.end, t),
        point_segment_min(t.start, s).swap(),
        point_segment_min(t.end, s).swap(),
    ])
}

fn segment_segment_max(s: &Segment, t: &Segment) -> Extremum {
    best_max([
        Extremum::new(s.start, t.start),
        Extremum::new(s.start, t.end),
        Extremum::new(s.end, t.start),
        Extremum::new(s.end, t.end),
    ])
}

/// Parameters along `s` where it meets the full circle of `a`.
fn segment_circle_params(s: &Segment, a: &Arc) -> Vec<f64> {
    let d = s.dir();
    let f = s.start - a.center;
    let qa = d.norm2();
    let qb = 2.0 * f.dot(d);
    let qc = f.norm2() - a.radius * a.radius;
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return Vec::new();
    }
    let sq = disc.sqrt();
    [(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)].into_iter().filter(|u| (0.0..=1.0).contains(u)).collect()
}

fn segment_arc_min(s: &Segment, a: &Arc) -> Extremum {
    let mut cands = vec![
        point_arc_min(s.start, a),
        point_arc_min(s.end, a),
        point_segment_min(a.start, s).swap(),
        point_segment_min(a.end, s).swap(),
    ];
    for u in segment_circle_params(s, a) {
        let x = s.start + s.dir() * u;
        if a.contains_direction(x - a.center) {
            cands.push(Extremum::new(x, x));
        }
    }
    let foot = s.closest(a.center);
    let fd = foot - a.center;
    if fd.norm() > a.radius && a.contains_direction(fd) {
        cands.push(Extremum::new(foot, a.center + fd.unit() * a.radius));
    }
    best_min(cands)
}

fn segment_arc_max(s: &Segment, a: &Arc) -> Extremum {
    best_max([point_arc_max(s.start, a), point_arc_max(s.end, a)])
}

fn circle_intersections(a: &Arc, b: &Arc) -> Vec<Point> {
    let d = b.center - a.center;
    let dd = d.norm();
    if dd == 0.0 || dd > a.radius + b.radius || dd < (a.radius - b.radius).abs() {
        return Vec::new();
    }
    let along = (dd * dd + a.radius * a.radius - b.radius * b.radius) / (2.0 * dd);
    let h = (a.radius * a.radius - along * along).max(0.0).sqrt();
    let base = a.center + d / dd * along;
    let off = d.perp() / dd * h;
    vec![base + off, base - off]
}

fn arcs_share_angle(a: &Arc, b: &Arc, shift: f64) -> Option<f64> {
    // some direction phi with phi in a and phi + shift in b
    let cands = [a.start_angle(), a.end_angle(), b.start_angle() - shift, b.end_angle() - shift];
    cands.into_iter().find(|&phi| a.contains_angle(phi) && b.contains_angle(phi + shift))
}

fn arc_arc(a: &Arc, b: &Arc, want_max: bool) -> Extremum {
    let mut cands = if want_max {
        vec![point_arc_max(a.start, b), point_arc_max(a.end, b), point_arc_max(b.start, a).swap(), point_arc_max(b.end, a).swap()]
    } else {
        vec![point_arc_min(a.start, b), point_arc_min(a.end, b), point_arc_min(b.start, a).swap(), point_arc_min(b.end, a).swap()]
    };
    let d = b.center - a.center;
    if d.norm() == 0.0 {
        let shift = if want_max { std::f64::consts::PI } else { 0.0 };
        if let Some(phi) = arcs_share_angle(a, b, shift) {
            cands.push(Extremum::new(a.point_at_angle(phi), b.point_at_angle(phi + shift)));
        }
    } else {
        if !want_max {
            for x in circle_intersections(a, b) {
                if a.contains_direction(x - a.center) && b.contains_direction(x - b.center) {
                    cands.push(Extremum::new(x, x));
                }
            }
        }
        let u = d.unit();
        for sa in [1.0, -1.0] {
            for sb in [1.0, -1.0] {
                let (pa, pb) = (u * sa, u * sb);
                if a.contains_direction(pa) && b.contains_direction(pb) {
                    cands.push(Extremum::new(a.center + pa * a.radius, b.center + pb * b.radius));
                }
            }
        }
    }
    if want_max {
        best_max(cands)
    } else {
        best_min(cands)
    }
}

pub fn min_extremum(e1: &BoundaryElement, e2: &BoundaryElement) -> Extremum {
    use BoundaryElement::*;
    match (e1, e2) {
        (Segment(s), Segment(t)) => segment_segment_min(s, t),
        (Segment(s), Arc(a)) => segment_arc_min(s, a),
        (Arc(a), Segment(s)) => segment_arc_min(s, a).swap(),
        (Arc(a), Arc(b)) => arc_arc(a, b, false),
    }
}

pub fn max_extremum(e1: &BoundaryElement, e2: &BoundaryElement) -> Extremum {
    use BoundaryElement::*;
    match (e1, e2) {
        (Segment(s), Segment(t)) => segment_segment_max(s, t),
        (Segment(s), Arc(a)) => segment_arc_max(s, a),
        (Arc(a), Segment(s)) => segment_arc_max(s, a).swap(),
        (Arc(a), Arc(b)) => arc_arc(a, b, true),
    }
}

pub fn min_distance(e1: &BoundaryElement, e2: &BoundaryElement) -> f64 {
    min_extremum(e1, e2).distance
}

pub fn max_distance(e1: &BoundaryElement, e2: &BoundaryElement) -> f64 {
    max_extremum(e1, e2).distance
}

/// Distance from `p` to the infinite line through `a` and `b`.
pub fn point_line_distance(p: Point, a: Point, b: Point) -> f64 {
    let d = b - a;
    ((p - a).cross(d) / d.norm()).abs()
}
