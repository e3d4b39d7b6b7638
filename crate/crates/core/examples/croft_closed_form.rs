//! Croft tilings for one to four colours at the optimal flat angle.

use unit_tilings::families::croft::croft_optimize;

fn main() {
    for k in 1..=4 {
        let s = croft_optimize(k).expect("k in range");
        println!("k = {k}: theta = {:.10}, delta = {:.10}, rho = {:.10}", s.theta, s.delta_k, s.rho_k);
    }
}
