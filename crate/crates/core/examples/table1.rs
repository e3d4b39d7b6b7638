//! Reoptimises every populated cell of the variant table.

use unit_tilings::optimizer::table1;

fn main() {
    for cell in table1(0) {
        match cell {
            Ok(c) => println!("{:<56} {:>14.6} {:>14.6} {:>9.1e}", c.variant, c.rho, c.published, c.rel_error),
            Err(e) => println!("failed: {e}"),
        }
    }
}
