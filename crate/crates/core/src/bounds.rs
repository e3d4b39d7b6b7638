//! Pigeonhole bounds: every unit-distance graph with fewer than rho_k vertices is k-colourable.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Values this close to an integer count as that integer.
pub const INTEGER_GUARD: f64 = 1e-9;

/// Published rho_5, used when no five-colour result is supplied.
pub const RHO5_PUBLISHED: f64 = 24.9627819109;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("rho = {0} is not a finite positive number")]
    Domain(f64),
    #[error("no rho given for k = {0}")]
    Missing(u8),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsRow {
    pub k: u8,
    pub rho_k: f64,
    /// Largest order for which every unit-distance graph is k-colourable.
    pub colorable_order: u64,
    /// Order from which a (k + 1)-chromatic unit-distance graph may exist.
    pub chromatic_lower: u64,
}

/// Greatest integer strictly below `x`.
pub fn strict_floor(x: f64) -> Result<u64, BoundsError> {
    if !(x.is_finite() && x > 0.0) {
        return Err(BoundsError::Domain(x));
    }
    let near = x.round();
    let x = if (x - near).abs() <= INTEGER_GUARD { near } else { x };
    Ok((x.ceil() - 1.0).max(0.0) as u64)
}

pub fn bounds_row(k: u8, rho_k: f64) -> Result<BoundsRow, BoundsError> {
    let n = strict_floor(rho_k)?;
    Ok(BoundsRow { k, rho_k, colorable_order: n, chromatic_lower: n + 1 })
}

/// One row per k = 1..=6.
pub fn table2(rhos: &BTreeMap<u8, f64>) -> Result<Vec<BoundsRow>, BoundsError> {
    (1..=6).map(|k| bounds_row(k, *rhos.get(&k).ok_or(BoundsError::Missing(k))?)).collect()
}

/// Aligned text rendering of the table.
pub fn format_table2(rows: &[BoundsRow]) -> String {
    let mut out = String::new();
    let line = |label: &str, cells: Vec<String>| format!("{label:<34}{}\n", cells.iter().map(|c| format!("{c:>8}")).collect::<String>());
    out += &line("k", rows.iter().map(|r| r.k.to_string()).collect());
    out += &line("rho_k", rows.iter().map(|r| format!("{:.2}", r.rho_k)).collect());
    out += &line("k-colourable graphs up to order", rows.iter().map(|r| r.colorable_order.to_string()).collect());
    out += &line("(k+1)-chromatic graph order >=", rows.iter().map(|r| r.chromatic_lower.to_string()).collect());
    out
}
