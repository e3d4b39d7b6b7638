//! Stratified sampling of the void fraction against the exact value.

use unit_tilings::families::croft::{build_croft, optimal_theta};
use unit_tilings::families::k6::{build_k6, K6Params, VariantFlags};
use unit_tilings::verifier::monte_carlo_delta;

fn main() {
    let croft = build_croft(optimal_theta(), 1).expect("valid");
    let k6 = build_k6(&K6Params::published_k6(), &VariantFlags::FULL).expect("valid");
    for (name, inst, n) in [("croft k = 1", croft, 1_000_000), ("six colours", k6, 1_000_000)] {
        let mc = monte_carlo_delta(&inst, n, 1);
        let exact = inst.void_area / inst.cell_area;
        println!("{name}: {:.9} +- {:.2e} vs {exact:.9} ({:.2} sigma)", mc.estimate, mc.stderr, (mc.estimate - exact) / mc.stderr);
    }
}
