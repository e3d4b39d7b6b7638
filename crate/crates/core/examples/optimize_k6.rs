//! The six-colour stage chain from a crude seed up to the record variant.

use unit_tilings::families::k6::VariantFlags;
use unit_tilings::instance::Family;
use unit_tilings::optimizer::maximize_rho;

fn main() {
    let r = maximize_rho(Family::K6, Some(&VariantFlags::FULL), None, 0).expect("converges");
    for s in &r.stage_trace {
        println!("{:<56} rho = {:.10}", s.variant, s.rho);
    }
    println!("residual {:.1e}", r.residual_norm);
    for (name, v) in &r.params {
        println!("  {name} = {v:.10}");
    }
}
