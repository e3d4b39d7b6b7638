//! Distance constraints written as quadrilaterals `ABCD` over labelled void corners.
//!
//! Inner quads bound a tile's width (`|AD|, |BC| <= 1`, diagonals cross); the
//! outer kinds keep same-coloured tiles apart (`>= 1`, or `>= 2` for a pair of
//! edges with the same colour transition).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::geometry::distance::{point_segment_min, segment_intersection};
use crate::geometry::{Point, Segment};
use crate::instance::{BuildError, TilingInstance};

/// A void letter plus corner index; index `None` names a void that has shrunk to a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointRef {
    pub void_label: char,
    pub index: Option<u8>,
}

impl PointRef {
    pub const fn new(void_label: char, index: u8) -> Self {
        PointRef { void_label, index: Some(index) }
    }

    pub const fn bare(void_label: char) -> Self {
        PointRef { void_label, index: None }
    }
}

impl fmt::Display for PointRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            Some(i) => write!(f, "{}{}", self.void_label, i),
            None => write!(f, "{}", self.void_label),
        }
    }
}

impl FromStr for PointRef {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let mut chars = s.chars();
        let label = chars.next().filter(|c| c.is_ascii_uppercase()).ok_or_else(|| format!("bad point reference {s:?}"))?;
        let rest = chars.as_str();
        if rest.is_empty() {
            return Ok(PointRef::bare(label));
        }
        match rest.parse::<u8>() {
            Ok(i) if i > 0 => Ok(PointRef::new(label, i)),
            _ => Err(format!("bad point reference {s:?}")),
        }
    }
}

impl Serialize for PointRef {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PointRef {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintKind {
    Inner,
    Outer,
    OuterPair,
    OuterExt,
}

impl ConstraintKind {
    fn name(self) -> &'static str {
        match self {
            ConstraintKind::Inner => "inner",
            ConstraintKind::Outer => "outer",
            ConstraintKind::OuterPair => "outer-pair",
            ConstraintKind::OuterExt => "outer-ext",
        }
    }

    pub fn target(self) -> f64 {
        match self {
            ConstraintKind::OuterPair => 2.0,
            _ => 1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintQuad {
    pub kind: ConstraintKind,
    pub points: [PointRef; 4],
    pub target: f64,
}

impl fmt::Display for ConstraintQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.points;
        write!(f, "{} {a} {b} {c} {d}", self.kind.name())
    }
}

impl FromStr for ConstraintQuad {
    type Err = String;
    /// `"inner A1 A2 C2 C1"`; the short forms `ABC` and `BC` expand to `ABCC` and `BBCC`.
    fn from_str(s: &str) -> Result<Self, String> {
        let mut words = s.split_whitespace();
        let kind = match words.next() {
            Some("inner") => ConstraintKind::Inner,
            Some("outer") => ConstraintKind::Outer,
            Some("outer-pair") => ConstraintKind::OuterPair,
            Some("outer-ext") => ConstraintKind::OuterExt,
            other => return Err(format!("unknown constraint kind {other:?}")),
        };
        let refs = words.map(str::parse).collect::<Result<Vec<PointRef>, _>>()?;
        let points = match refs.as_slice() {
            [b, c] => [*b, *b, *c, *c],
            [a, b, c] => [*a, *b, *c, *c],
            [a, b, c, d] => [*a, *b, *c, *d],
            _ => return Err(format!("constraint {s:?} needs 2 to 4 points")),
        };
        Ok(ConstraintQuad { kind, points, target: kind.target() })
    }
}

pub type PointMap = BTreeMap<PointRef, Point>;

fn resolve4(q: &ConstraintQuad, points: &PointMap) -> Result<[Point; 4], BuildError> {
    let mut out = [Point::ORIGIN; 4];
    for (o, r) in out.iter_mut().zip(&q.points) {
        *o = points.get(r).copied().ok_or_else(|| BuildError::Unresolved(r.to_string()))?;
    }
    Ok(out)
}

fn point_to_segment(p: Point, a: Point, b: Point) -> f64 {
    match Segment::new(a, b) {
        Ok(s) => point_segment_min(p, &s).distance,
        Err(_) => p.dist(a),
    }
}

/// Signed residuals `(r_AD, r_BC)`; for the extended outer kind these are the
/// distances of `A` and `B` from segment `CD`.
pub fn residuals(q: &ConstraintQuad, inst: &TilingInstance) -> Result<(f64, f64), BuildError> {
    residuals_on(q, &inst.points)
}

pub fn residuals_on(q: &ConstraintQuad, points: &PointMap) -> Result<(f64, f64), BuildError> {
    let [a, b, c, d] = resolve4(q, points)?;
    Ok(match q.kind {
        ConstraintKind::OuterExt => (point_to_segment(a, c, d) - q.target, point_to_segment(b, c, d) - q.target),
        _ => (a.dist(d) - q.target, b.dist(c) - q.target),
    })
}

/// Residuals driven to zero by the optimizer. Outer pairs also ask for
/// `AD` and `BC` to meet `AB` at right angles: two equal diagonals alone
/// leave the quad free to shear.
pub fn equations(q: &ConstraintQuad, inst: &TilingInstance) -> Result<Vec<f64>, BuildError> {
    equations_on(q, &inst.points)
}

pub fn equations_on(q: &ConstraintQuad, points: &PointMap) -> Result<Vec<f64>, BuildError> {
    let (r1, r2) = residuals_on(q, points)?;
    let mut out = vec![r1];
    if q.points[0] != q.points[1] || q.points[2] != q.points[3] {
        out.push(r2);
    }
    if q.kind == ConstraintKind::OuterPair {
        let [a, b, _, d] = resolve4(q, points)?;
        let ab = b - a;
        if ab.norm() > 0.0 {
            out.push(ab.dot(d - a) / ab.norm());
        }
    }
    Ok(out)
}

/// Whether the residual signs are admissible: inner at most the target, outer at least.
pub fn admissible(q: &ConstraintQuad, inst: &TilingInstance, tol: f64) -> Result<bool, BuildError> {
    let (r1, r2) = residuals(q, inst)?;
    Ok(match q.kind {
        ConstraintKind::Inner => r1 <= tol && r2 <= tol,
        _ => r1 >= -tol && r2 >= -tol,
    })
}

pub fn check_intersection_topology(q: &ConstraintQuad, inst: &TilingInstance) -> Result<bool, BuildError> {
    let [a, b, c, d] = resolve4(q, &inst.points)?;
    let cross = match (Segment::new(a, d), Segment::new(b, c)) {
        (Ok(s), Ok(t)) => segment_intersection(&s, &t).is_some(),
        _ => false,
    };
    Ok(cross == (q.kind == ConstraintKind::Inner))
}
