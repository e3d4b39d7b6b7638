use serde::{Deserialize, Serialize};

use crate::geometry::{chain_extrema, point_in_chain, Point};
use crate::instance::{Region, TilingInstance};

use super::VerifyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairClass {
    /// Every distance exceeds 1.
    SafeFar,
    /// Every distance is below 1.
    Siamese,
    /// Distance 1 is attained only on the boundary, where one side is open.
    Tight,
    Violating,
}

/// One region of the instance against a lattice translate of another (or itself).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairReport {
    pub first: String,
    pub second: String,
    /// Lattice coordinates of the translate applied to `second`.
    pub shift: [i64; 2],
    pub min_d: f64,
    pub max_d: f64,
    pub classification: PairClass,
    pub witness: (Point, Point),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProperReport {
    pub proper: bool,
    pub violations: Vec<PairReport>,
    pub tight_count: usize,
    pub siamese_count: usize,
    pub pairs_checked: usize,
}

pub fn classify(min_d: f64, max_d: f64, tol: f64) -> PairClass {
    if min_d > 1.0 + tol {
        PairClass::SafeFar
    } else if max_d < 1.0 - tol {
        PairClass::Siamese
    } else if min_d >= 1.0 - tol || max_d <= 1.0 + tol {
        PairClass::Tight
    } else {
        PairClass::Violating
    }
}

/// Lattice shifts `s` for which `b + s` may come within `reach` of `a`.
pub fn lattice_neighbours(a: &Region, b: &Region, lattice: &[Point; 2], reach: f64) -> Vec<[i64; 2]> {
    let (ca, ra) = a.bounding_disk();
    let (cb, rb) = b.bounding_disk();
    let radius = reach + ra + rb;
    let [l1, l2] = *lattice;
    let det = l1.cross(l2);
    let d = ca - cb;
    // lattice coordinates of d, and how far a disk of this radius spreads in each
    let (u, v) = (d.cross(l2) / det, l1.cross(d) / det);
    let (du, dv) = (radius * l2.norm() / det.abs(), radius * l1.norm() / det.abs());
    let mut out = Vec::new();
    for i in (u - du).floor() as i64..=(u + du).ceil() as i64 {
        for j in (v - dv).floor() as i64..=(v + dv).ceil() as i64 {
            let s = l1 * i as f64 + l2 * j as f64;
            if (cb + s).dist(ca) <= radius {
                out.push([i, j]);
            }
        }
    }
    out
}

/// Extremal distances between two regions as sets, not just boundaries.
pub fn region_extrema(a: &Region, b: &Region) -> (f64, f64, (Point, Point)) {
    let (lo, hi) = chain_extrema(&a.boundary, &b.boundary);
    let inside = |r: &Region, other: &Region| other.boundary.first().is_some_and(|e| point_in_chain(&r.boundary, e.start()));
    if lo.distance > 0.0 && (inside(a, b) || inside(b, a)) {
        return (0.0, hi.distance, lo.witness);
    }
    (lo.distance, hi.distance, lo.witness)
}

fn coloured(inst: &TilingInstance) -> Result<Vec<&Region>, VerifyError> {
    let regions: Vec<&Region> = inst.tiles.iter().chain(inst.voids.iter().filter(|v| v.color.is_some())).collect();
    if let Some(r) = regions.iter().find(|r| r.color.is_none()) {
        return Err(VerifyError::Uncoloured(r.name.clone()));
    }
    Ok(regions)
}

/// Every same-coloured pair (including a region against itself) within reach.
pub fn all_pairs(inst: &TilingInstance, tol: f64) -> Result<Vec<PairReport>, VerifyError> {
    let regions = coloured(inst)?;
    let mut out = Vec::new();
    for (i, a) in regions.iter().enumerate() {
        for b in &regions[i..] {
            if a.color != b.color {
                continue;
            }
            let same = std::ptr::eq(*a, *b);
            for shift in lattice_neighbours(a, b, &inst.lattice, 1.0 + tol) {
                if same && shift < [0, 0] {
                    // the pair (a, a - s) mirrors (a, a + s)
                    continue;
                }
                let moved = b.translated(inst.lattice[0] * shift[0] as f64 + inst.lattice[1] * shift[1] as f64);
                let (min_d, max_d, witness) = if same && shift == [0, 0] {
                    // a single region only needs its diameter below 1
                    let (_, hi) = chain_extrema(&a.boundary, &a.boundary);
                    (0.0, hi.distance, hi.witness)
                } else {
                    region_extrema(a, &moved)
                };
                let classification = classify(min_d, max_d, tol);
                out.push(PairReport { first: a.name.clone(), second: b.name.clone(), shift, min_d, max_d, classification, witness });
            }
        }
    }
    Ok(out)
}

pub fn check_proper(inst: &TilingInstance, tol: f64) -> Result<ProperReport, VerifyError> {
    let pairs = all_pairs(inst, tol)?;
    let count = |c: PairClass| pairs.iter().filter(|p| p.classification == c).count();
    let (tight_count, siamese_count) = (count(PairClass::Tight), siamese_only(&pairs).count());
    let violations: Vec<PairReport> = pairs.iter().filter(|p| p.classification == PairClass::Violating).cloned().collect();
    Ok(ProperReport { proper: violations.is_empty(), violations, tight_count, siamese_count, pairs_checked: pairs.len() })
}

fn siamese_only(pairs: &[PairReport]) -> impl Iterator<Item = &PairReport> {
    // a region with itself is trivially within unit distance and does not count
    pairs.iter().filter(|p| p.classification == PairClass::Siamese && !(p.first == p.second && p.shift == [0, 0]))
}

/// Distinct same-coloured regions all of whose points are within unit distance of each other.
pub fn siamese_pairs(inst: &TilingInstance, tol: f64) -> Result<Vec<PairReport>, VerifyError> {
    Ok(siamese_only(&all_pairs(inst, tol)?).cloned().collect())
}
