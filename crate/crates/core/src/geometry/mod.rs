pub mod curving;
pub mod distance;
pub mod element;
pub mod point;

use thiserror::Error;

pub use curving::{curving_s1, curving_s2, CurvingEvaluation};
pub use distance::{max_distance, min_distance, Extremum};
pub use element::{Arc, BoundaryElement, Orientation, Segment};
pub use point::{Isometry, Point};

/// Default geometric tolerance.
pub const GEOM_TOL: f64 = 1e-12;
/// Feasibility tolerance for constraint residuals at an optimum.
pub const FEAS_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate geometry: {0}")]
    Degenerate(String),
    #[error("non-finite coordinate")]
    NonFinite,
}

/// Signed area by fanning from the first corner.
pub fn polygon_area(corners: &[Point]) -> Result<f64, GeometryError> {
    if corners.len() < 3 {
        return Err(GeometryError::Domain(format!("polygon needs 3 corners, got {}", corners.len())));
    }
    let p1 = corners[0];
    let mut sum = 0.0;
    for w in corners[1..].windows(2) {
        sum += (w[0] - p1).cross(w[1] - p1);
    }
    Ok(0.5 * sum)
}

/// Signed area enclosed by a closed chain of elements.
pub fn chain_area(chain: &[BoundaryElement]) -> f64 {
    chain.iter().map(BoundaryElement::area_term).sum()
}

/// Whether a closed chain returns to its start with no gaps.
pub fn chain_is_closed(chain: &[BoundaryElement], tol: f64) -> bool {
    !chain.is_empty()
        && chain.iter().zip(chain.iter().cycle().skip(1)).all(|(a, b)| a.end().dist(b.start()) <= tol)
}

/// Whether two non-adjacent elements of a closed chain touch.
pub fn chain_self_intersection(chain: &[BoundaryElement]) -> Option<(usize, usize)> {
    let n = chain.len();
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // neighbours share an endpoint; they must not fold back onto each other
                let (a, b) = if j == i + 1 { (&chain[i], &chain[j]) } else { (&chain[j], &chain[i]) };
                if folds_back(a, b) {
                    return Some((i, j));
                }
                continue;
            }
            if min_distance(&chain[i], &chain[j]) == 0.0 {
                return Some((i, j));
            }
        }
    }
    None
}

fn folds_back(a: &BoundaryElement, b: &BoundaryElement) -> bool {
    let (ta, tb) = (a.point_at(1.0 - 1e-9) - a.end(), b.point_at(1e-9) - b.start());
    let (la, lb) = (ta.norm(), tb.norm());
    la > 0.0 && lb > 0.0 && (ta / la).dist(tb / lb) < 1e-9
}

/// Crossing-number point-in-region test for a closed chain.
pub fn point_in_chain(chain: &[BoundaryElement], p: Point) -> bool {
    chain.iter().map(|e| e.ray_crossings(p)).sum::<usize>() % 2 == 1
}

/// Bounding box of a chain.
pub fn chain_bbox(chain: &[BoundaryElement]) -> (Point, Point) {
    chain.iter().fold((Point::new(f64::INFINITY, f64::INFINITY), Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY)), |(lo, hi), e| {
        let (a, b) = e.bbox();
        (Point::new(lo.x.min(a.x), lo.y.min(a.y)), Point::new(hi.x.max(b.x), hi.y.max(b.y)))
    })
}

/// Extremal distances between two closed chains, taken over their boundaries.
pub fn chain_extrema(c1: &[BoundaryElement], c2: &[BoundaryElement]) -> (Extremum, Extremum) {
    let mut lo: Option<Extremum> = None;
    let mut hi: Option<Extremum> = None;
    for e in c1 {
        for f in c2 {
            let m = distance::min_extremum(e, f);
            if lo.map_or(true, |l| m.distance < l.distance) {
                lo = Some(m);
            }
            let x = distance::max_extremum(e, f);
            if hi.map_or(true, |h| x.distance > h.distance) {
                hi = Some(x);
            }
        }
    }
    (lo.expect("empty chain"), hi.expect("empty chain"))
}
