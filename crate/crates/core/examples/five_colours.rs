//! Five colours: dumbbells of a fifth colour in the void of the Croft 4-tiling.

use unit_tilings::families::k5::k5_optimize;
use unit_tilings::verifier::{check_proper, DEFAULT_TOL};

fn main() {
    let s = k5_optimize().expect("grid search");
    let inst = s.build().expect("valid pattern");
    let report = check_proper(&inst, DEFAULT_TOL).expect("coloured");
    println!("theta = {:.10}, reach into side strips = {:.6}", s.theta, s.ext);
    println!("sublattice {:?}, sites {:?}", s.pattern.sublattice, s.pattern.sites);
    println!("rho5 = {:.10}, proper = {}", s.rho, report.proper);
}
