//! Properness, Siamese pairs and void colouring of the published tilings.

use unit_tilings::families::k6::{build_k6, build_k7, K6Params, VariantFlags};
use unit_tilings::verifier::{check_proper, proper_colour_count, siamese_pairs, DEFAULT_TOL};

fn main() {
    let k6 = build_k6(&K6Params::published_k6(), &VariantFlags::FULL).expect("valid");
    let k7 = build_k7(&K6Params::published_k7()).expect("valid");
    for (name, inst) in [("six colours", &k6), ("seven colours", &k7)] {
        let r = check_proper(inst, DEFAULT_TOL).expect("coloured");
        let siamese = siamese_pairs(inst, DEFAULT_TOL).expect("coloured").len();
        println!(
            "{name}: proper = {}, pairs = {}, tight = {}, siamese = {siamese}, colours with voids = {:?}",
            r.proper,
            r.pairs_checked,
            r.tight_count,
            proper_colour_count(inst, DEFAULT_TOL)
        );
    }
}
