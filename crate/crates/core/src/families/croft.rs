//! Disks of diameter 1 trimmed by a hexagon, on a hexagonal lattice.
//!
//! Each tile keeps six flats at half-angle `theta`; same-coloured neighbours sit at
//! distance `1 + cos(theta)` so that facing flats are exactly 1 apart.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::geometry::{Arc, BoundaryElement, GeometryError, Orientation, Point};
use crate::instance::{BuildError, Family, Region, TilingInstance};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CroftSolution {
    pub theta: f64,
    pub k: u8,
    pub delta_k: f64,
    pub rho_k: f64,
}

fn numerator(theta: f64) -> f64 {
    PI / 6.0 - theta + (2.0 * theta).sin() / 2.0
}

fn denominator(theta: f64) -> f64 {
    (1.0 + theta.cos()).powi(2) / 3f64.sqrt()
}

/// Uncovered fraction of the one-colour tiling.
pub fn croft_delta(theta: f64) -> Result<f64, GeometryError> {
    if !(0.0..=PI / 6.0).contains(&theta) {
        return Err(GeometryError::Domain(format!("theta {theta} outside [0, pi/6]")));
    }
    Ok(1.0 - numerator(theta) / denominator(theta))
}

/// Root of the derivative of the covered fraction, by bisection.
pub fn optimal_theta() -> f64 {
    // d/dtheta (N/D) has the sign of N'D - ND'
    let slope = |t: f64| {
        let dn = -1.0 + (2.0 * t).cos();
        let dd = -2.0 * (1.0 + t.cos()) * t.sin() / 3f64.sqrt();
        dn * denominator(t) - numerator(t) * dd
    };
    let (mut lo, mut hi) = (1e-6, PI / 6.0);
    debug_assert!(slope(lo) > 0.0 && slope(hi) < 0.0);
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if slope(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn croft_optimize(k: u8) -> Result<CroftSolution, GeometryError> {
    if !(1..=4).contains(&k) {
        return Err(GeometryError::Domain(format!("k = {k} outside 1..=4")));
    }
    let theta = optimal_theta();
    let delta_1 = croft_delta(theta)?;
    let delta_k = 1.0 - k as f64 * (1.0 - delta_1);
    Ok(CroftSolution { theta, k, delta_k, rho_k: 1.0 / delta_k })
}

/// Tile boundary centred at `c`: flats centred on the directions `j * 60°`.
pub fn tile_boundary(c: Point, theta: f64) -> Result<Vec<BoundaryElement>, GeometryError> {
    let mut out = Vec::with_capacity(12);
    for j in 0..6 {
        let phi = j as f64 * PI / 3.0;
        let a = c + Point::polar(0.5, phi - theta);
        let b = c + Point::polar(0.5, phi + theta);
        if theta > 0.0 {
            out.push(BoundaryElement::segment(a, b)?);
        }
        let next = c + Point::polar(0.5, phi + PI / 3.0 - theta);
        if theta < PI / 6.0 {
            out.push(BoundaryElement::Arc(Arc::new(b, next, c, Orientation::Ccw)?));
        }
    }
    Ok(out)
}

/// Cosets of the half-spacing lattice that receive colours 1..=k.
fn offsets(d: f64) -> [Point; 4] {
    let e1 = Point::new(1.0, 0.0);
    let e2 = Point::polar(1.0, PI / 3.0);
    [Point::ORIGIN, e1 * (d / 2.0), e2 * (d / 2.0), (e1 + e2) * (d / 2.0)]
}

pub fn build_croft(theta: f64, k: u8) -> Result<TilingInstance, BuildError> {
    if !(1..=4).contains(&k) {
        return Err(BuildError::Params(format!("k = {k} outside 1..=4")));
    }
    let delta_1 = croft_delta(theta)?;
    let d = 1.0 + theta.cos();
    let lattice = [Point::new(d, 0.0), Point::polar(d, PI / 3.0)];
    let cell = lattice[0].cross(lattice[1]);
    let tiles = offsets(d)
        .iter()
        .take(k as usize)
        .enumerate()
        .map(|(i, &o)| Ok(Region::new(format!("tile{}", i + 1), Some(i as u8 + 1), tile_boundary(o, theta)?)))
        .collect::<Result<Vec<_>, GeometryError>>()?;
    Ok(TilingInstance {
        family: Family::Croft,
        params: BTreeMap::from([("theta".to_string(), theta), ("k".to_string(), k as f64)]),
        tiles,
        voids: Vec::new(),
        lattice,
        cell_area: cell,
        void_area: cell * (1.0 - k as f64 * (1.0 - delta_1)),
        constraints: Vec::new(),
        points: BTreeMap::new(),
        curved_pairs: Vec::new(),
    })
}
