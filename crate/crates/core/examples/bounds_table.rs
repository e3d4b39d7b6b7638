//! Pigeonhole bounds from the Croft values and the published five- and six-colour values.

use std::collections::BTreeMap;

use unit_tilings::bounds::{format_table2, table2, RHO5_PUBLISHED};
use unit_tilings::families::croft::croft_optimize;

fn main() {
    let mut rhos: BTreeMap<u8, f64> = (1..=4).map(|k| (k, croft_optimize(k).unwrap().rho_k)).collect();
    rhos.insert(5, RHO5_PUBLISHED);
    rhos.insert(6, 6992.1655504123);
    print!("{}", format_table2(&table2(&rhos).unwrap()));
}
