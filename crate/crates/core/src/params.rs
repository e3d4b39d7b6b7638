//! Parameter files: a family, its variant and a flat parameter map, as JSON.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constraints::{admissible, equations, ConstraintQuad};
use crate::families::croft::build_croft;
use crate::families::k5::K5Solution;
use crate::families::k6::{build_k6, build_k7, with_family, K6Params, Layout, VariantFlags};
use crate::instance::{metrics, metrics_from, BuildError, Family, TilingInstance, TilingMetrics};
use crate::optimizer::OptimizationResult;

#[derive(Debug, Error)]
pub enum ParamsError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed parameter file: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Build(#[from] BuildError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamsFile {
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flags: Option<VariantFlags>,
    pub params: BTreeMap<String, f64>,
    /// Colour overrides by region name, applied after building.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub recolor: BTreeMap<String, u8>,
}

impl From<&OptimizationResult> for ParamsFile {
    fn from(r: &OptimizationResult) -> Self {
        ParamsFile { family: r.family, flags: r.flags, params: r.params.clone(), recolor: BTreeMap::new() }
    }
}

impl ParamsFile {
    pub fn load(path: &Path) -> Result<Self, ParamsError> {
        let text = std::fs::read_to_string(path).map_err(|source| ParamsError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, ParamsError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Variant used for k = 6 and k = 7; the file's flags win when present.
    pub fn variant(&self) -> Option<VariantFlags> {
        match self.family {
            Family::K6 => Some(self.flags.unwrap_or(VariantFlags::FULL)),
            Family::K7 => Some(VariantFlags::K7),
            _ => None,
        }
    }

    pub fn build(&self) -> Result<TilingInstance, BuildError> {
        let mut inst = match self.family {
            Family::Croft => {
                let theta = self.params.get("theta").copied().ok_or_else(|| BuildError::Params("missing parameter theta".into()))?;
                let k = self.params.get("k").copied().unwrap_or(4.0);
                if k.fract() != 0.0 || !(1.0..=4.0).contains(&k) {
                    return Err(BuildError::Params(format!("k = {k} outside 1..=4")));
                }
                build_croft(theta, k as u8)?
            }
            Family::K5 => K5Solution::from_map(&self.params)?.build()?,
            Family::K6 => {
                let flags = self.variant().expect("k6 has a variant");
                flags.validate()?;
                with_family(build_k6(&flags.normalize(K6Params::from_map(&self.params)?), &flags)?, Family::K6)
            }
            Family::K7 => with_family(build_k7(&K6Params::from_map(&self.params)?)?, Family::K7),
        };
        for (name, &color) in &self.recolor {
            let region = inst
                .tiles
                .iter_mut()
                .chain(inst.voids.iter_mut())
                .find(|r| &r.name == name)
                .ok_or_else(|| BuildError::Params(format!("no region named {name}")))?;
            region.color = Some(color);
        }
        Ok(inst)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResidualEntry {
    pub constraint: String,
    pub residuals: Vec<f64>,
    pub admissible: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EvalReport {
    pub family: Family,
    pub metrics: TilingMetrics,
    /// Metrics of the same corners with every side straight (k = 6 and k = 7 only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polygonal: Option<TilingMetrics>,
    pub residuals: Vec<ResidualEntry>,
    pub max_residual: f64,
}

pub fn evaluate_file(file: &ParamsFile) -> Result<EvalReport, BuildError> {
    let inst = file.build()?;
    let m = metrics(&inst)?;
    let polygonal = match file.variant() {
        Some(flags) => {
            let p = flags.normalize(K6Params::from_map(&file.params)?);
            let lay = Layout::new(&p, &VariantFlags { curved: false, ..flags })?;
            Some(metrics_from(lay.cell_area(), lay.polygonal_void_area())?)
        }
        None => None,
    };
    let residuals = inst
        .constraints
        .iter()
        .map(|q: &ConstraintQuad| {
            Ok(ResidualEntry { constraint: q.to_string(), residuals: equations(q, &inst)?, admissible: admissible(q, &inst, 1e-9)? })
        })
        .collect::<Result<Vec<_>, BuildError>>()?;
    let max_residual = residuals.iter().flat_map(|r| r.residuals.iter()).fold(0.0f64, |m, r| m.max(r.abs()));
    Ok(EvalReport { family: file.family, metrics: m, polygonal, residuals, max_residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_through_json() {
        let f = ParamsFile {
            family: Family::K6,
            flags: Some(VariantFlags::PRITIKIN),
            params: K6Params::published_k6().to_map(),
            recolor: BTreeMap::from([("tile1".to_string(), 2)]),
        };
        let back = ParamsFile::parse(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn rejects_unknown_family_and_missing_theta() {
        assert!(ParamsFile::parse(r#"{"family": "k9", "params": {}}"#).is_err());
        let f = ParamsFile::parse(r#"{"family": "croft", "params": {"k": 2}}"#).unwrap();
        assert!(f.build().is_err());
    }

    #[test]
    fn recolouring_an_unknown_region_fails() {
        let f = ParamsFile::parse(r#"{"family": "croft", "params": {"theta": 0.26, "k": 2}, "recolor": {"nope": 1}}"#).unwrap();
        assert!(f.build().is_err());
    }
}
