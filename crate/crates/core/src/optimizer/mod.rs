//! Maximising rho for the parametrised families.
//!
//! The k = 6 family is solved in stages: each stage adds one feature to the
//! previous optimum and reoptimises every free parameter jointly.

pub mod solver;

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::croft::croft_optimize;
use crate::families::k5::{k5_optimize, k5_refine, K5Solution};
use crate::families::k6::{build_k6, evaluate, K6Params, VariantFlags, VoidCorners};
use crate::instance::{metrics, BuildError, Family};

use solver::{augmented_lagrangian, kkt_polish, Problem, Settings, Solution};

pub const RESTARTS: u64 = 16;
pub const JITTER: f64 = 1e-2;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StageRecord {
    pub variant: String,
    pub rho: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub family: Family,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flags: Option<VariantFlags>,
    pub params: BTreeMap<String, f64>,
    pub rho: f64,
    pub delta: f64,
    pub residual_norm: f64,
    pub iterations: usize,
    pub stage_trace: Vec<StageRecord>,
    pub converged: bool,
    pub seed: u64,
}

#[derive(Debug, Error)]
pub enum OptimizeError {
    #[error("no restart reached a valid configuration: {0}")]
    Infeasible(String),
    #[error("residual {residual:e} above tolerance after the iteration budget")]
    NotConverged { best: Box<OptimizationResult>, residual: f64 },
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error("{0}")]
    Unsupported(String),
}

/// Starting point for the first stage when nothing better is given.
pub fn default_seed() -> K6Params {
    K6Params { x: 0.92, y: 0.5, z: 0.05, l: 0.0135, m: 0.0, n: 0.0, p: 0.0, q: 0.0, r: 0.0055, s: 0.0, t: 0.0, v: 0.0, w: 0.0 }
}

/// The k = 6 family over the free variables of one variant, in units of their starting values.
pub struct K6Problem {
    pub flags: VariantFlags,
    free: Vec<&'static str>,
    base: K6Params,
    scale: Vec<f64>,
}

impl K6Problem {
    pub fn new(flags: VariantFlags, start: &K6Params) -> Self {
        let base = flags.normalize(*start);
        let free = flags.free_variables();
        let scale = free.iter().map(|v| base.get(v).expect("known name").abs().max(1e-3)).collect();
        K6Problem { flags, free, base, scale }
    }

    pub fn params(&self, z: &[f64]) -> K6Params {
        let mut p = self.base;
        for ((name, s), zi) in self.free.iter().zip(&self.scale).zip(z) {
            *p.slot(name).expect("known name") = s * zi;
        }
        self.flags.normalize(p)
    }

    pub fn point(&self, p: &K6Params) -> Vec<f64> {
        self.free.iter().zip(&self.scale).map(|(name, s)| p.get(name).expect("known name") / s).collect()
    }
}

impl Problem for K6Problem {
    fn dim(&self) -> usize {
        self.free.len()
    }

    // 1e4 delta keeps the objective near 1
    fn evaluate(&self, z: &[f64]) -> Option<(f64, Vec<f64>)> {
        let e = evaluate(&self.params(z), &self.flags).ok()?;
        Some((1e4 * e.void_area / e.cell_area, e.equations))
    }
}

#[derive(Clone, Debug)]
pub struct StageResult {
    pub params: K6Params,
    pub rho: f64,
    pub residual_norm: f64,
    pub iterations: usize,
}

fn solve_from(problem: &K6Problem, z0: &[f64], s: &Settings) -> Option<Solution> {
    let sol = augmented_lagrangian(problem, z0, s)?;
    Some(kkt_polish(problem, &sol, s, 30))
}

/// Best of the jittered restarts around `start` for one variant.
pub fn optimize_stage(flags: &VariantFlags, start: &K6Params, seed: u64) -> Option<StageResult> {
    let problem = K6Problem::new(*flags, start);
    let s = Settings::default();
    let z0 = problem.point(&problem.base);
    let results: Vec<(u64, Solution)> = (0..RESTARTS)
        .into_par_iter()
        .filter_map(|k| {
            let mut z = z0.clone();
            if k > 0 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(k);
                for zi in z.iter_mut() {
                    *zi *= 1.0 + JITTER * rng.gen_range(-1.0..1.0);
                }
            }
            solve_from(&problem, &z, &s).map(|sol| (k, sol))
        })
        .collect();
    // collect keeps restart order, so the choice below does not depend on scheduling
    let feasible = |sol: &Solution| sol.residual_norm() <= s.feas_tol;
    let best = results.iter().min_by(|(ka, a), (kb, b)| {
        let key = |sol: &Solution| (!feasible(sol), if feasible(sol) { sol.objective } else { sol.residual_norm() });
        let (fa, va) = key(a);
        let (fb, vb) = key(b);
        fa.cmp(&fb)
            .then(va.total_cmp(&vb))
            .then(a.residual_norm().total_cmp(&b.residual_norm()))
            .then(ka.cmp(kb))
    })?;
    let sol = &best.1;
    let params = problem.params(&sol.z);
    let e = evaluate(&params, flags).ok()?;
    Some(StageResult {
        params,
        rho: e.cell_area / e.void_area,
        residual_norm: sol.residual_norm(),
        iterations: results.iter().map(|(_, r)| r.iterations).sum(),
    })
}

/// Variants visited on the way to `target`, ending with it.
pub fn stage_chain(target: &VariantFlags) -> Vec<VariantFlags> {
    let mut f = VariantFlags {
        void_corners: VoidCorners::Rhombus4,
        arrowheads: false,
        wavy: false,
        curved: false,
        proper_colors: target.proper_colors.min(8),
    };
    let mut out = vec![f];
    let step = |f: VariantFlags, out: &mut Vec<VariantFlags>| {
        if out.last() != Some(&f) {
            out.push(f);
        }
    };
    f.wavy = target.wavy;
    step(f, &mut out);
    f.void_corners = target.void_corners;
    step(f, &mut out);
    f.arrowheads = target.arrowheads;
    f.proper_colors = target.proper_colors;
    step(f, &mut out);
    f.curved = target.curved;
    step(f, &mut out);
    out
}

/// Variables a stage switches on start slightly positive so that differences stay inside the domain.
fn open_new_variables(p: &K6Params, from: &VariantFlags, to: &VariantFlags) -> K6Params {
    let mut p = *p;
    if !from.dodeca() && to.dodeca() {
        p.m = 0.9 * p.l;
        p.n = 0.1 * p.l;
        p.p = 0.1 * p.r;
        p.q = 0.9 * p.r;
    }
    if !from.arrowheads && to.arrowheads {
        let a = 0.05 * p.l;
        p.s = a;
        p.t = a;
        p.v = a;
        p.w = a;
    }
    p
}

fn k6_result(family: Family, flags: &VariantFlags, stage: StageResult, trace: Vec<StageRecord>, seed: u64) -> Result<OptimizationResult, OptimizeError> {
    let inst = build_k6(&stage.params, flags)?;
    let m = metrics(&inst)?;
    let result = OptimizationResult {
        family,
        flags: Some(*flags),
        params: stage.params.to_map(),
        rho: m.rho,
        delta: m.delta,
        residual_norm: stage.residual_norm,
        iterations: stage.iterations,
        stage_trace: trace,
        converged: stage.residual_norm <= Settings::default().feas_tol,
        seed,
    };
    if !result.converged {
        let residual = result.residual_norm;
        return Err(OptimizeError::NotConverged { best: Box::new(result), residual });
    }
    Ok(result)
}

/// Runs the stage chain (or a single stage from `init`) for a k = 6 or k = 7 variant.
pub fn maximize_k6(family: Family, flags: &VariantFlags, init: Option<&K6Params>, seed: u64) -> Result<OptimizationResult, OptimizeError> {
    flags.validate()?;
    let mut trace = Vec::new();
    let last = match init {
        Some(p) => {
            let r = optimize_stage(flags, p, seed).ok_or_else(|| OptimizeError::Infeasible(flags.describe()))?;
            trace.push(StageRecord { variant: flags.describe(), rho: r.rho });
            r
        }
        None => {
            let mut p = default_seed();
            let mut prev: Option<VariantFlags> = None;
            let mut out = None;
            for f in stage_chain(flags) {
                if let Some(pf) = prev {
                    p = open_new_variables(&p, &pf, &f);
                }
                let r = optimize_stage(&f, &p, seed).ok_or_else(|| OptimizeError::Infeasible(f.describe()))?;
                trace.push(StageRecord { variant: f.describe(), rho: r.rho });
                p = r.params;
                prev = Some(f);
                out = Some(r);
            }
            out.expect("chain is never empty")
        }
    };
    k6_result(family, flags, last, trace, seed)
}

/// Entry point for every family. `flags` only matters for k = 6; for Croft `init` may carry `k`.
pub fn maximize_rho(family: Family, flags: Option<&VariantFlags>, init: Option<&BTreeMap<String, f64>>, seed: u64) -> Result<OptimizationResult, OptimizeError> {
    match family {
        Family::Croft => {
            let k = init.and_then(|m| m.get("k").copied()).unwrap_or(4.0);
            if k.fract() != 0.0 || !(1.0..=4.0).contains(&k) {
                return Err(BuildError::Params(format!("k = {k} outside 1..=4")).into());
            }
            croft_family(k as u8)
        }
        Family::K5 => maximize_k5(init),
        Family::K6 => {
            let init = init.map(K6Params::from_map).transpose()?;
            maximize_k6(family, flags.unwrap_or(&VariantFlags::FULL), init.as_ref(), seed)
        }
        Family::K7 => {
            let init = init.map(K6Params::from_map).transpose()?;
            maximize_k6(family, &VariantFlags::K7, init.as_ref(), seed)
        }
    }
}

/// Pattern search and refinement for five colours; with `init` the pattern is held and only refined.
pub fn maximize_k5(init: Option<&BTreeMap<String, f64>>) -> Result<OptimizationResult, OptimizeError> {
    let geometry = |e: crate::geometry::GeometryError| OptimizeError::Build(e.into());
    let sol = match init {
        Some(m) => {
            let start = K5Solution::from_map(m)?;
            k5_refine(&start.pattern, start.theta, start.ext, 0.05).map_err(geometry)?
        }
        None => k5_optimize().map_err(geometry)?,
    };
    if !sol.delta.is_finite() {
        return Err(OptimizeError::Infeasible("the dumbbell pattern does not fit".into()));
    }
    let inst = sol.build()?;
    let m = metrics(&inst)?;
    Ok(OptimizationResult {
        family: Family::K5,
        flags: None,
        params: sol.to_map(),
        rho: m.rho,
        delta: m.delta,
        residual_norm: 0.0,
        iterations: 0,
        stage_trace: vec![
            StageRecord { variant: "croft k = 4".into(), rho: croft_optimize(4).map_err(geometry)?.rho_k },
            StageRecord { variant: "croft k = 4 + dumbbells".into(), rho: m.rho },
        ],
        converged: true,
        seed: 0,
    })
}

/// The Croft family at the optimal flat angle, reported like the other families.
pub fn croft_family(k: u8) -> Result<OptimizationResult, OptimizeError> {
    let sol = croft_optimize(k).map_err(|e| OptimizeError::Build(e.into()))?;
    let inst = crate::families::croft::build_croft(sol.theta, k)?;
    let m = metrics(&inst)?;
    Ok(OptimizationResult {
        family: Family::Croft,
        flags: None,
        params: BTreeMap::from([("theta".to_string(), sol.theta), ("k".to_string(), k as f64)]),
        rho: m.rho,
        delta: m.delta,
        residual_norm: 0.0,
        iterations: 0,
        stage_trace: vec![StageRecord { variant: format!("croft k = {k}"), rho: m.rho }],
        converged: true,
        seed: 0,
    })
}

/// Published optima of the variant table, in `VariantFlags::table1` order.
pub const TABLE1_PUBLISHED: [f64; 20] = [
    5681.489884, 5780.207842, //
    5942.027491, 5943.447950, 6041.630152, 6043.112468, //
    6197.579308, 6294.390841, //
    6510.512176, 6512.380146, 6604.352015, 6606.168990, //
    6596.061280, 6597.901152, 6684.123145, 6685.917214, //
    6899.423068, 6906.361529, 6985.378399, 6992.165550,
];

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table1Cell {
    pub flags: VariantFlags,
    pub variant: String,
    pub proper_colors: u8,
    pub rho: f64,
    pub published: f64,
    pub rel_error: f64,
    pub residual_norm: f64,
}

/// One optimised value per populated cell of the variant table.
pub fn table1(seed: u64) -> Vec<Result<Table1Cell, String>> {
    table1_rows(&(0..TABLE1_PUBLISHED.len()).collect::<Vec<_>>(), seed)
}

/// The cells at these positions of `VariantFlags::table1`.
pub fn table1_rows(rows: &[usize], seed: u64) -> Vec<Result<Table1Cell, String>> {
    let all = VariantFlags::table1();
    rows.iter()
        .map(|&i| {
            let (f, published) = match (all.get(i), TABLE1_PUBLISHED.get(i)) {
                (Some(f), Some(&p)) => (f, p),
                _ => return Err(format!("row {i} outside 0..{}", all.len())),
            };
            let r = maximize_k6(Family::K6, f, None, seed).map_err(|e| format!("{}: {e}", f.describe()))?;
            Ok(Table1Cell {
                flags: *f,
                variant: f.describe(),
                proper_colors: f.proper_colors,
                rho: r.rho,
                published,
                rel_error: (r.rho - published).abs() / published,
                residual_norm: r.residual_norm,
            })
        })
        .collect()
}
