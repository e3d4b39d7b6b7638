use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::point::{Isometry, Point};
use super::{GeometryError, GEOM_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Cw,
    Ccw,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Cw => Orientation::Ccw,
            Orientation::Ccw => Orientation::Cw,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub start: Point,
    pub end: Point,
}

impl Segment {
    pub fn new(start: Point, end: Point) -> Result<Self, GeometryError> {
        if !start.is_finite() || !end.is_finite() {
            return Err(GeometryError::NonFinite);
        }
        if start == end {
            return Err(GeometryError::Degenerate("segment with coincident endpoints".into()));
        }
        Ok(Segment { start, end })
    }

    pub fn dir(&self) -> Point {
        self.end - self.start
    }

    pub fn length(&self) -> f64 {
        self.dir().norm()
    }

    /// Closest point of the segment to `p`.
    pub fn closest(&self, p: Point) -> Point {
        let d = self.dir();
        let t = ((p - self.start).dot(d) / d.norm2()).clamp(0.0, 1.0);
        self.start + d * t
    }
}

/// Circular arc from `start` to `end` around `center`, turning in `orientation`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub start: Point,
    pub end: Point,
    pub center: Point,
    pub radius: f64,
    pub orientation: Orientation,
}

impl Arc {
    pub fn new(start: Point, end: Point, center: Point, orientation: Orientation) -> Result<Self, GeometryError> {
        if !(start.is_finite() && end.is_finite() && center.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        let radius = start.dist(center);
        if radius <= 0.0 {
            return Err(GeometryError::Degenerate("arc of zero radius".into()));
        }
        if (end.dist(center) - radius).abs() > GEOM_TOL.max(1e-12 * radius) {
            return Err(GeometryError::Degenerate(format!(
                "arc endpoints at radii {} and {}",
                radius,
                end.dist(center)
            )));
        }
        Ok(Arc { start, end, center, radius, orientation })
    }

    /// Minor arc through `start` and `end` with the given radius, bulging to the
    /// right of the direction `start -> end`.
    pub fn bulging_right(start: Point, end: Point, radius: f64) -> Result<Self, GeometryError> {
        let chord = end - start;
        let c = chord.norm();
        if c == 0.0 {
            return Err(GeometryError::Degenerate("arc with coincident endpoints".into()));
        }
        if radius < c / 2.0 {
            return Err(GeometryError::Degenerate(format!("radius {radius} shorter than half chord {}", c / 2.0)));
        }
        let offset = (radius * radius - c * c / 4.0).max(0.0).sqrt();
        let center = start.lerp(end, 0.5) + chord.perp() / c * offset;
        let mut arc = Arc::new(start, end, center, Orientation::Ccw)?;
        arc.radius = radius;
        Ok(arc)
    }

    pub fn start_angle(&self) -> f64 {
        (self.start - self.center).angle()
    }

    pub fn end_angle(&self) -> f64 {
        (self.end - self.center).angle()
    }

    /// Signed turning angle, positive for counterclockwise arcs.
    pub fn sweep(&self) -> f64 {
        let raw = self.end_angle() - self.start_angle();
        match self.orientation {
            Orientation::Ccw => raw.rem_euclid(TAU),
            Orientation::Cw => -(-raw).rem_euclid(TAU),
        }
    }

    /// Whether the ray from the center at `angle` hits the arc.
    pub fn contains_angle(&self, angle: f64) -> bool {
        let span = self.sweep().abs();
        let off = match self.orientation {
            Orientation::Ccw => (angle - self.start_angle()).rem_euclid(TAU),
            Orientation::Cw => (self.start_angle() - angle).rem_euclid(TAU),
        };
        off <= span + 1e-15 || off >= TAU - 1e-15
    }

    pub fn contains_direction(&self, dir: Point) -> bool {
        self.contains_angle(dir.angle())
    }

    pub fn point_at_angle(&self, angle: f64) -> Point {
        self.center + Point::polar(self.radius, angle)
    }

    pub fn length(&self) -> f64 {
        self.radius * self.sweep().abs()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BoundaryElement {
    Segment(Segment),
    Arc(Arc),
}

impl BoundaryElement {
    pub fn segment(start: Point, end: Point) -> Result<Self, GeometryError> {
        Segment::new(start, end).map(BoundaryElement::Segment)
    }

    pub fn start(&self) -> Point {
        match self {
            BoundaryElement::Segment(s) => s.start,
            BoundaryElement::Arc(a) => a.start,
        }
    }

    pub fn end(&self) -> Point {
        match self {
            BoundaryElement::Segment(s) => s.end,
            BoundaryElement::Arc(a) => a.end,
        }
    }

    pub fn length(&self) -> f64 {
        match self {
            BoundaryElement::Segment(s) => s.length(),
            BoundaryElement::Arc(a) => a.length(),
        }
    }

    pub fn reversed(&self) -> Self {
        match *self {
            BoundaryElement::Segment(s) => BoundaryElement::Segment(Segment { start: s.end, end: s.start }),
            BoundaryElement::Arc(a) => BoundaryElement::Arc(Arc {
                start: a.end,
                end: a.start,
                orientation: a.orientation.flip(),
                ..a
            }),
        }
    }

    pub fn transformed(&self, iso: &Isometry) -> Self {
        match *self {
            BoundaryElement::Segment(s) => {
                BoundaryElement::Segment(Segment { start: iso.apply(s.start), end: iso.apply(s.end) })
            }
            BoundaryElement::Arc(a) => BoundaryElement::Arc(Arc {
                start: iso.apply(a.start),
                end: iso.apply(a.end),
                center: iso.apply(a.center),
                radius: a.radius,
                orientation: if iso.is_reflection() { a.orientation.flip() } else { a.orientation },
            }),
        }
    }

    pub fn point_at(&self, t: f64) -> Point {
        match self {
            BoundaryElement::Segment(s) => s.start.lerp(s.end, t),
            BoundaryElement::Arc(a) => a.point_at_angle(a.start_angle() + a.sweep() * t),
        }
    }

    /// Contribution to the signed enclosed area of a closed chain (Green's theorem).
    pub fn area_term(&self) -> f64 {
        match self {
            BoundaryElement::Segment(s) => 0.5 * s.start.cross(s.end),
            BoundaryElement::Arc(a) => {
                0.5 * a.center.cross(a.end - a.start) + 0.5 * a.radius * a.radius * a.sweep()
            }
        }
    }

    /// Exact axis-aligned bounding box as (min, max).
    pub fn bbox(&self) -> (Point, Point) {
        let (s, e) = (self.start(), self.end());
        let mut lo = Point::new(s.x.min(e.x), s.y.min(e.y));
        let mut hi = Point::new(s.x.max(e.x), s.y.max(e.y));
        if let BoundaryElement::Arc(a) = self {
            for k in 0..4 {
                let ang = k as f64 * PI / 2.0;
                if a.contains_angle(ang) {
                    let p = a.point_at_angle(ang);
                    lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
                    hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
                }
            }
        }
        (lo, hi)
    }

    /// Crossings of the rightward horizontal ray from `p`, half-open in y for segments.
    pub(crate) fn ray_crossings(&self, p: Point) -> usize {
        match self {
            BoundaryElement::Segment(s) => {
                let (a, b) = (s.start, s.end);
                if (a.y > p.y) != (b.y > p.y) {
                    let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                    usize::from(x > p.x)
                } else {
                    0
                }
            }
            BoundaryElement::Arc(a) => {
                let dy = p.y - a.center.y;
                if dy.abs() >= a.radius {
                    return 0;
                }
                let dx = (a.radius * a.radius - dy * dy).sqrt();
                let mut n = 0;
                for x in [a.center.x - dx, a.center.x + dx] {
                    if x > p.x && a.contains_direction(Point::new(x - a.center.x, dy)) {
                        n += 1;
                    }
                }
                n
            }
        }
    }

    /// Sample points, including both endpoints, for rendering and brute-force checks.
    pub fn sample(&self, n: usize) -> Vec<Point> {
        (0..=n).map(|i| self.point_at(i as f64 / n as f64)).collect()
    }
}
