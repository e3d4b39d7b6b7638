//! Writes the Croft 4-tiling and the six-colour record, voids enlarged ten times.

use unit_tilings::families::croft::{build_croft, optimal_theta};
use unit_tilings::families::k6::{build_k6, K6Params, VariantFlags};
use unit_tilings::render::{render, RenderOptions};

fn main() -> std::io::Result<()> {
    let dir = std::env::temp_dir();
    let croft = build_croft(optimal_theta(), 4).expect("valid");
    let k6 = build_k6(&K6Params::published_k6(), &VariantFlags::FULL).expect("valid");
    let zoomed = RenderOptions { void_zoom: 10.0, show_constraints: true, cell_outline: true };
    for (file, svg) in [("croft4.svg", render(&croft, &RenderOptions::default())), ("k6.svg", render(&k6, &zoomed))] {
        let path = dir.join(file);
        std::fs::write(&path, svg)?;
        println!("{}", path.display());
    }
    Ok(())
}
