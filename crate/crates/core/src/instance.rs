use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constraints::{ConstraintQuad, PointRef};
use crate::geometry::{chain_area, chain_bbox, chain_is_closed, chain_self_intersection, BoundaryElement, GeometryError, Point};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BuildError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("{region}: elements {a} and {b} intersect")]
    SelfIntersection { region: String, a: usize, b: usize },
    #[error("unresolved point reference {0}")]
    Unresolved(String),
    #[error("degenerate instance: {0}")]
    Degenerate(String),
}

/// A closed counterclockwise chain with an optional colour.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub name: String,
    pub color: Option<u8>,
    pub boundary: Vec<BoundaryElement>,
    /// Indices of boundary elements whose exact shape is not fixed by the constraints.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub non_rigid: Vec<usize>,
}

impl Region {
    pub fn new(name: impl Into<String>, color: Option<u8>, boundary: Vec<BoundaryElement>) -> Self {
        Region { name: name.into(), color, boundary, non_rigid: Vec::new() }
    }

    pub fn area(&self) -> f64 {
        chain_area(&self.boundary)
    }

    pub fn bbox(&self) -> (Point, Point) {
        chain_bbox(&self.boundary)
    }

    /// Center and radius of a disk containing the region.
    pub fn bounding_disk(&self) -> (Point, f64) {
        let (lo, hi) = self.bbox();
        let c = lo.lerp(hi, 0.5);
        (c, 0.5 * (hi - lo).norm())
    }

    pub fn validate(&self) -> Result<(), BuildError> {
        if !chain_is_closed(&self.boundary, 1e-12) {
            return Err(BuildError::Degenerate(format!("{} is not closed", self.name)));
        }
        if let Some((a, b)) = chain_self_intersection(&self.boundary) {
            return Err(BuildError::SelfIntersection { region: self.name.clone(), a, b });
        }
        if self.area() <= 0.0 {
            return Err(BuildError::Degenerate(format!("{} has non-positive area", self.name)));
        }
        Ok(())
    }

    pub fn translated(&self, by: Point) -> Region {
        let iso = crate::geometry::Isometry::translation(by);
        Region {
            name: self.name.clone(),
            color: self.color,
            boundary: self.boundary.iter().map(|e| e.transformed(&iso)).collect(),
            non_rigid: self.non_rigid.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Croft,
    K5,
    K6,
    K7,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Family::Croft => "croft",
            Family::K5 => "k5",
            Family::K6 => "k6",
            Family::K7 => "k7",
        };
        f.write_str(s)
    }
}

/// One fundamental cell of a periodic partial tiling.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TilingInstance {
    pub family: Family,
    pub params: BTreeMap<String, f64>,
    pub tiles: Vec<Region>,
    pub voids: Vec<Region>,
    pub lattice: [Point; 2],
    /// Area of the repeating unit the void area refers to; may be a fraction of the lattice cell.
    pub cell_area: f64,
    pub void_area: f64,
    pub constraints: Vec<ConstraintQuad>,
    pub points: BTreeMap<PointRef, Point>,
    /// Constraint-quad corners joined by arcs, for drawing.
    #[serde(default)]
    pub curved_pairs: Vec<[PointRef; 4]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TilingMetrics {
    pub s_sigma: f64,
    pub s_delta: f64,
    pub rho: f64,
    pub delta: f64,
}

impl TilingInstance {
    pub fn resolve(&self, r: &PointRef) -> Result<Point, BuildError> {
        self.points.get(r).copied().ok_or_else(|| BuildError::Unresolved(r.to_string()))
    }

    pub fn lattice_area(&self) -> f64 {
        self.lattice[0].cross(self.lattice[1]).abs()
    }

    pub fn colors(&self) -> usize {
        self.tiles.iter().chain(&self.voids).filter_map(|t| t.color).max().unwrap_or(0) as usize
    }
}

pub fn metrics(instance: &TilingInstance) -> Result<TilingMetrics, BuildError> {
    metrics_from(instance.cell_area, instance.void_area)
}

pub fn metrics_from(s_sigma: f64, s_delta: f64) -> Result<TilingMetrics, BuildError> {
    if !(s_delta > 0.0) || !(s_sigma > 0.0) {
        return Err(BuildError::Degenerate(format!("void area {s_delta} with cell area {s_sigma}")));
    }
    let rho = s_sigma / s_delta;
    Ok(TilingMetrics { s_sigma, s_delta, rho, delta: s_delta / s_sigma })
}
