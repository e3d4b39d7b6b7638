//! Independent checks on realised geometry. Nothing here reads the constraint list.

pub mod coloring;
pub mod montecarlo;
pub mod proper;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use coloring::{proper_colour_count, void_colouring, VoidColouring};
pub use montecarlo::{monte_carlo_delta, McEstimate};
pub use proper::{check_proper, siamese_pairs, PairClass, PairReport, ProperReport};

use crate::instance::TilingInstance;

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("region {0} has no colour")]
    Uncoloured(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub proper: bool,
    pub violations: Vec<PairReport>,
    pub siamese_count: usize,
    pub tight_count: usize,
    pub pairs_checked: usize,
    pub delta_mc: Option<McEstimate>,
    pub delta_analytic: f64,
}

pub fn verify(inst: &TilingInstance, tol: f64, mc: Option<(u64, u64)>) -> Result<VerificationReport, VerifyError> {
    let r = check_proper(inst, tol)?;
    Ok(VerificationReport {
        proper: r.proper,
        violations: r.violations,
        siamese_count: r.siamese_count,
        tight_count: r.tight_count,
        pairs_checked: r.pairs_checked,
        delta_mc: mc.map(|(samples, seed)| monte_carlo_delta(inst, samples, seed)),
        delta_analytic: inst.void_area / inst.cell_area,
    })
}
