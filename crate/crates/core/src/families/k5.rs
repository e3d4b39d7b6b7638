//! Five colours: the Croft 4-tiling with a fifth colour on dumbbell-shaped parts of its void.
//!
//! The void of the 4-tiling is a network of curved triangles at triple points joined by
//! thin strips between facing flats. A dumbbell is the strip between two neighbouring
//! tiles together with the triangles at its ends. Dumbbell sites are the edges of the
//! half-spacing lattice; the fifth colour takes a periodic set of sites that are pairwise
//! far enough apart, found by exhaustive search over small sublattices.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::families::croft::{croft_delta, tile_boundary};
use crate::geometry::{Arc, BoundaryElement, GeometryError, Isometry, Orientation, Point};
use crate::instance::{BuildError, Family, Region, TilingInstance};
use crate::verifier::coloring::{cosets, reduce, sublattices};
use crate::verifier::proper::{classify, region_extrema};
use crate::verifier::{PairClass, DEFAULT_TOL};

/// Largest sublattice index searched for the dumbbell pattern.
pub const MAX_INDEX: i64 = 12;

/// A periodic choice of dumbbell sites: sublattice of the half-spacing lattice in
/// Hermite normal form, and the chosen (coset, direction) pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DumbbellPattern {
    pub sublattice: [[i64; 2]; 2],
    pub sites: Vec<([i64; 2], u8)>,
}

impl DumbbellPattern {
    pub fn index(&self) -> i64 {
        self.sublattice[0][0] * self.sublattice[1][1]
    }

    /// Dumbbells per cell of the half-spacing lattice.
    pub fn density(&self) -> f64 {
        self.sites.len() as f64 / self.index() as f64
    }
}

fn spacing(theta: f64) -> f64 {
    (1.0 + theta.cos()) / 2.0
}

fn basis(theta: f64) -> [Point; 2] {
    let h = spacing(theta);
    [Point::new(h, 0.0), Point::polar(h, PI / 3.0)]
}

fn at(theta: f64, p: [i64; 2]) -> Point {
    let [a, b] = basis(theta);
    a * p[0] as f64 + b * p[1] as f64
}

/// Dumbbell on the edge from the tile at `cell` in direction `dir` (0: a, 1: b, 2: b - a).
/// It reaches the fraction `ext` (at most 1/2) into each of the four side strips.
pub fn dumbbell(theta: f64, ext: f64, cell: [i64; 2], dir: u8) -> Result<Vec<BoundaryElement>, GeometryError> {
    if !(0.0..=0.5).contains(&ext) {
        return Err(GeometryError::Domain(format!("reach {ext} outside [0, 1/2]")));
    }
    let [a, b] = basis(theta);
    let (p0, p1, q, r) = (Point::ORIGIN, a, b, a - b);
    let on = |c: Point, deg: f64| c + Point::polar(0.5, deg.to_radians());
    let t = theta.to_degrees();
    let arc = |c: Point, from: f64, to: f64| Ok(BoundaryElement::Arc(Arc::new(on(c, from), on(c, to), c, Orientation::Cw)?));
    // into the strip along one flat, across it, and back along the facing flat
    let cut = |u: Point, u_far: Point, v: Point, v_far: Point| -> Result<Vec<BoundaryElement>, GeometryError> {
        if ext == 0.0 {
            return Ok(vec![BoundaryElement::segment(u, v)?]);
        }
        let (x, y) = (u.lerp(u_far, ext), v.lerp(v_far, ext));
        Ok(vec![BoundaryElement::segment(u, x)?, BoundaryElement::segment(x, y)?, BoundaryElement::segment(y, v)?])
    };
    // counterclockwise around the void, so every tile boundary is walked clockwise
    let mut chain = vec![BoundaryElement::segment(on(p1, 180.0 + t), on(p1, 180.0 - t))?, arc(p1, 180.0 - t, 120.0 + t)?];
    chain.extend(cut(on(p1, 120.0 + t), on(p1, 120.0 - t), on(q, 300.0 - t), on(q, 300.0 + t))?);
    chain.push(arc(q, 300.0 - t, 240.0 + t)?);
    chain.extend(cut(on(q, 240.0 + t), on(q, 240.0 - t), on(p0, 60.0 - t), on(p0, 60.0 + t))?);
    chain.push(arc(p0, 60.0 - t, t)?);
    chain.push(BoundaryElement::segment(on(p0, t), on(p0, -t))?);
    chain.push(arc(p0, -t, -60.0 + t)?);
    chain.extend(cut(on(p0, -60.0 + t), on(p0, -60.0 - t), on(r, 120.0 - t), on(r, 120.0 + t))?);
    chain.push(arc(r, 120.0 - t, 60.0 + t)?);
    chain.extend(cut(on(r, 60.0 + t), on(r, 60.0 - t), on(p1, 240.0 - t), on(p1, 240.0 + t))?);
    chain.push(arc(p1, 240.0 - t, 180.0 + t)?);
    let iso = Isometry::rotation(dir as f64 * PI / 3.0);
    let shift = Isometry::translation(at(theta, cell));
    for e in &mut chain {
        *e = e.transformed(&iso).transformed(&shift);
    }
    Ok(chain)
}

/// Offsets `(cell, dir_b)` of dumbbells that may not share a colour with the one at `(0, dir_a)`.
fn conflicts(theta: f64, ext: f64) -> Result<Vec<(u8, u8, [i64; 2])>, GeometryError> {
    let reach = 4;
    let mut out = Vec::new();
    for da in 0..3u8 {
        let first = Region::new("a", Some(5), dumbbell(theta, ext, [0, 0], da)?);
        let (ca, ra) = first.bounding_disk();
        for db in 0..3u8 {
            for i in -reach..=reach {
                for j in -reach..=reach {
                    if [i, j] == [0, 0] && da == db {
                        continue;
                    }
                    let second = Region::new("b", Some(5), dumbbell(theta, ext, [i, j], db)?);
                    let (cb, rb) = second.bounding_disk();
                    if ca.dist(cb) > 1.0 + ra + rb {
                        continue;
                    }
                    let (lo, hi, _) = region_extrema(&first, &second);
                    if classify(lo, hi, DEFAULT_TOL) == PairClass::Violating {
                        out.push((da, db, [i, j]));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Largest independent set of a graph on at most 64 vertices, by branch and bound.
fn max_independent(adj: &[u64]) -> u64 {
    fn go(cand: u64, chosen: u64, adj: &[u64], best: &mut u64) {
        if cand == 0 {
            if chosen.count_ones() > best.count_ones() {
                *best = chosen;
            }
            return;
        }
        if chosen.count_ones() + cand.count_ones() <= best.count_ones() {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        let bit = 1u64 << v;
        go(cand & !bit & !adj[v], chosen | bit, adj, best);
        go(cand & !bit, chosen, adj, best);
    }
    let all = if adj.len() == 64 { u64::MAX } else { (1u64 << adj.len()) - 1 };
    let mut best = 0;
    go(all, 0, adj, &mut best);
    best
}

fn conflict_graph(h: &[[i64; 2]; 2], conf: &[(u8, u8, [i64; 2])]) -> (Vec<([i64; 2], u8)>, Vec<u64>) {
    let nodes: Vec<([i64; 2], u8)> = cosets(h).into_iter().flat_map(|c| (0..3u8).map(move |d| (c, d))).collect();
    let index = |c: [i64; 2], d: u8| nodes.iter().position(|n| *n == (c, d)).unwrap();
    let mut adj = vec![0u64; nodes.len()];
    for (u, &(c, da)) in nodes.iter().enumerate() {
        for &(a, db, off) in conf {
            if a != da {
                continue;
            }
            let v = index(reduce(h, [c[0] + off[0], c[1] + off[1]]), db);
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
    }
    (nodes, adj)
}

/// Densest periodic dumbbell pattern at this `theta` over sublattices of index up to `max_index`.
pub fn best_pattern(theta: f64, ext: f64, max_index: i64) -> Result<DumbbellPattern, GeometryError> {
    let conf = conflicts(theta, ext)?;
    let mut best = DumbbellPattern { sublattice: [[1, 0], [0, 1]], sites: Vec::new() };
    for n in 1..=max_index {
        for h in sublattices(n) {
            let (nodes, adj) = conflict_graph(&h, &conf);
            // a site conflicting with its own translate can never be used
            let usable: Vec<usize> = (0..nodes.len()).filter(|&v| adj[v] >> v & 1 == 0).collect();
            let sub: Vec<u64> = usable
                .iter()
                .map(|&v| usable.iter().enumerate().filter(|(_, &w)| adj[v] >> w & 1 == 1).fold(0, |m, (k, _)| m | 1 << k))
                .collect();
            let set = max_independent(&sub);
            let pattern = DumbbellPattern {
                sublattice: h,
                sites: (0..usable.len()).filter(|k| set >> k & 1 == 1).map(|k| nodes[usable[k]]).collect(),
            };
            if pattern.density() > best.density() + 1e-12 {
                best = pattern;
            }
        }
    }
    Ok(best)
}

/// Whether the pattern stays proper at this `(theta, ext)`.
pub fn pattern_fits(theta: f64, ext: f64, pattern: &DumbbellPattern) -> Result<bool, GeometryError> {
    let [[a, b], [_, d]] = pattern.sublattice;
    let reach = 4;
    for (k, &(c1, d1)) in pattern.sites.iter().enumerate() {
        let first = Region::new("a", Some(5), dumbbell(theta, ext, c1, d1)?);
        let (ca, ra) = first.bounding_disk();
        for &(c2, d2) in &pattern.sites[k..] {
            for i in -reach..=reach {
                for j in -reach..=reach {
                    let cell = [c2[0] + i * a, c2[1] + i * b + j * d];
                    if cell == c1 && d1 == d2 {
                        continue;
                    }
                    let second = Region::new("b", Some(5), dumbbell(theta, ext, cell, d2)?);
                    let (cb, rb) = second.bounding_disk();
                    if ca.dist(cb) > 1.0 + ra + rb {
                        continue;
                    }
                    let (lo, hi, _) = region_extrema(&first, &second);
                    if classify(lo, hi, DEFAULT_TOL) == PairClass::Violating {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Uncovered fraction of the 5-tiling.
pub fn k5_delta(theta: f64, ext: f64, pattern: &DumbbellPattern) -> Result<f64, GeometryError> {
    let cell = basis(theta)[0].cross(basis(theta)[1]);
    let db = Region::new("d", None, dumbbell(theta, ext, [0, 0], 0)?).area();
    Ok(croft_delta(theta)? * 4.0 - 3.0 - pattern.density() * db / cell)
}

pub fn build_k5(theta: f64, ext: f64, pattern: &DumbbellPattern) -> Result<TilingInstance, BuildError> {
    if !(0.0 < theta && theta < PI / 6.0) {
        return Err(BuildError::Params(format!("theta {theta} outside (0, pi/6)")));
    }
    let [[a, b], [_, d]] = pattern.sublattice;
    // doubling the pattern lattice makes it a sublattice of the 4-colouring lattice too
    let period = [[2 * a, 2 * b], [0, 2 * d]];
    let lattice = [at(theta, period[0]), at(theta, period[1])];
    let cell = lattice[0].cross(lattice[1]);
    let mut tiles = Vec::new();
    for c in cosets(&period) {
        let color = 1 + (c[0].rem_euclid(2) + 2 * c[1].rem_euclid(2)) as u8;
        tiles.push(Region::new(format!("T{}_{}", c[0], c[1]), Some(color), tile_boundary(at(theta, c), theta)?));
    }
    for (k, &(c, dir)) in pattern.sites.iter().enumerate() {
        for (u, v) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            let cell_at = [c[0] + u * a, c[1] + u * b + v * d];
            tiles.push(Region::new(format!("D{k}_{u}{v}"), Some(5), dumbbell(theta, ext, cell_at, dir)?));
        }
    }
    for t in &tiles {
        t.validate()?;
    }
    let covered: f64 = tiles.iter().map(|t| t.area()).sum();
    Ok(TilingInstance {
        family: Family::K5,
        params: BTreeMap::from([("theta".to_string(), theta), ("ext".to_string(), ext), ("dumbbells".to_string(), pattern.sites.len() as f64)]),
        tiles,
        voids: Vec::new(),
        lattice,
        cell_area: cell,
        void_area: cell - covered,
        constraints: Vec::new(),
        points: BTreeMap::new(),
        curved_pairs: Vec::new(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct K5Solution {
    pub theta: f64,
    pub ext: f64,
    pub pattern: DumbbellPattern,
    pub delta: f64,
    pub rho: f64,
}

fn golden(lo: f64, hi: f64, f: impl Fn(f64) -> Result<f64, GeometryError>) -> Result<f64, GeometryError> {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > 1e-11 {
        let (m1, m2) = (hi - g * (hi - lo), lo + g * (hi - lo));
        if f(m1)? <= f(m2)? {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Best pattern on a grid of `(theta, ext)`, then alternating golden-section steps with the pattern held.
pub fn k5_optimize() -> Result<K5Solution, GeometryError> {
    use rayon::prelude::*;
    let n = 24;
    let grid: Vec<(f64, f64)> =
        (1..n).flat_map(|i| [0.0, 0.25, 0.5].map(|e| (i as f64 * (PI / 6.0) / n as f64, e))).collect();
    let scored = grid
        .par_iter()
        .map(|&(theta, ext)| {
            let pattern = best_pattern(theta, ext, MAX_INDEX)?;
            let delta = k5_delta(theta, ext, &pattern)?;
            Ok(K5Solution { theta, ext, pattern, delta, rho: 1.0 / delta })
        })
        .collect::<Result<Vec<_>, GeometryError>>()?;
    // first strict minimum keeps the choice independent of thread timing
    let best = scored.into_iter().reduce(|a, b| if b.delta < a.delta { b } else { a }).expect("non-empty grid");
    let refined = k5_refine(&best.pattern, best.theta, best.ext, (PI / 6.0) / n as f64)?;
    Ok(if refined.delta < best.delta { refined } else { best })
}

/// Alternating golden-section steps on `theta` (within `window`) and `ext`, with the pattern held.
pub fn k5_refine(pattern: &DumbbellPattern, theta: f64, ext: f64, window: f64) -> Result<K5Solution, GeometryError> {
    let score = |t: f64, e: f64| -> Result<f64, GeometryError> {
        let ok = 0.0 < t && t < PI / 6.0 && (0.0..=0.5).contains(&e) && pattern_fits(t, e, pattern)?;
        Ok(if ok { k5_delta(t, e, pattern)? } else { f64::INFINITY })
    };
    let (mut theta, mut ext) = (theta, ext);
    for _ in 0..4 {
        let t = golden((theta - window).max(1e-3), (theta + window).min(PI / 6.0 - 1e-3), |t| score(t, ext))?;
        if score(t, ext)? < score(theta, ext)? {
            theta = t;
        }
        let e = golden(0.0, 0.5, |e| score(theta, e))?;
        if score(theta, e)? < score(theta, ext)? {
            ext = e;
        }
    }
    let delta = score(theta, ext)?;
    Ok(K5Solution { theta, ext, pattern: pattern.clone(), delta, rho: 1.0 / delta })
}

impl K5Solution {
    /// Flat parameter map: `theta`, `ext`, the sublattice rows and one `(i, j, dir)` triple per site.
    pub fn to_map(&self) -> BTreeMap<String, f64> {
        let [[a, b], [_, d]] = self.pattern.sublattice;
        let mut m = BTreeMap::from([
            ("theta".to_string(), self.theta),
            ("ext".to_string(), self.ext),
            ("sub_a".to_string(), a as f64),
            ("sub_b".to_string(), b as f64),
            ("sub_d".to_string(), d as f64),
        ]);
        for (k, (c, dir)) in self.pattern.sites.iter().enumerate() {
            m.insert(format!("site{k}_i"), c[0] as f64);
            m.insert(format!("site{k}_j"), c[1] as f64);
            m.insert(format!("site{k}_dir"), *dir as f64);
        }
        m
    }

    pub fn from_map(m: &BTreeMap<String, f64>) -> Result<K5Solution, BuildError> {
        let get = |k: &str| m.get(k).copied().ok_or_else(|| BuildError::Params(format!("missing parameter {k}")));
        let int = |k: &str| -> Result<i64, BuildError> {
            let v = get(k)?;
            if v.fract() != 0.0 {
                return Err(BuildError::Params(format!("{k} = {v} is not an integer")));
            }
            Ok(v as i64)
        };
        let (theta, ext) = (get("theta")?, get("ext")?);
        let (a, b, d) = (int("sub_a")?, int("sub_b")?, int("sub_d")?);
        if a < 1 || d < 1 || !(0..d).contains(&b) {
            return Err(BuildError::Params(format!("sublattice rows ({a}, {b}), (0, {d}) not in normal form")));
        }
        let mut sites = Vec::new();
        while m.contains_key(&format!("site{}_i", sites.len())) {
            let k = sites.len();
            let dir = int(&format!("site{k}_dir"))?;
            if !(0..3).contains(&dir) {
                return Err(BuildError::Params(format!("site{k}_dir = {dir} outside 0..3")));
            }
            sites.push(([int(&format!("site{k}_i"))?, int(&format!("site{k}_j"))?], dir as u8));
        }
        let pattern = DumbbellPattern { sublattice: [[a, b], [0, d]], sites };
        let delta = k5_delta(theta, ext, &pattern)?;
        Ok(K5Solution { theta, ext, pattern, delta, rho: 1.0 / delta })
    }

    pub fn build(&self) -> Result<TilingInstance, BuildError> {
        build_k5(self.theta, self.ext, &self.pattern)
    }
}


#[cfg(test)]
mod map_tests {
    use super::*;

    #[test]
    fn parameter_map_round_trips() {
        let sol = K5Solution {
            theta: 0.24,
            ext: 0.4,
            pattern: DumbbellPattern { sublattice: [[1, 2], [0, 11]], sites: vec![([0, 0], 0), ([0, 4], 1)] },
            delta: 0.0,
            rho: 0.0,
        };
        let back = K5Solution::from_map(&sol.to_map()).unwrap();
        assert_eq!(back.pattern, sol.pattern);
        assert_eq!((back.theta, back.ext), (0.24, 0.4));
        let mut bad = sol.to_map();
        bad.insert("site1_dir".into(), 3.0);
        assert!(K5Solution::from_map(&bad).is_err());
    }
}
