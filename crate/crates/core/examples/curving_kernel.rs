//! Area gained by curving a trapezoid of parallel sides a and b, both ways.

use unit_tilings::geometry::{curving_s1, curving_s2};

fn main() {
    let a = 0.1;
    for b in [0.05, 0.1, 0.15, 0.19, 0.21, 0.3, 0.5] {
        let (s1, s2) = (curving_s1(a, b).unwrap().s1, curving_s2(a, b).unwrap());
        let better = if s2.s2 > s1 { "split radii" } else { "radius 1" };
        println!("a = {a}, b = {b:.2}: s1 = {s1:.6e}, s2 = {:.6e} (r = {:.4}), {better}", s2.s2, s2.r);
    }
}
