use std::collections::BTreeMap;
use std::f64::consts::PI;

use unit_tilings::families::croft::{build_croft, optimal_theta};
use unit_tilings::families::k6::{build_k6, build_k7, K6Params, VariantFlags};
use unit_tilings::geometry::{BoundaryElement, Isometry, Point};
use unit_tilings::instance::{Family, Region, TilingInstance};
use unit_tilings::verifier::*;

fn polygon(name: &str, color: u8, pts: &[Point]) -> Region {
    let n = pts.len();
    let boundary = (0..n).map(|i| BoundaryElement::segment(pts[i], pts[(i + 1) % n]).unwrap()).collect();
    Region::new(name, Some(color), boundary)
}

fn instance(tiles: Vec<Region>, lattice: [Point; 2]) -> TilingInstance {
    let cell = lattice[0].cross(lattice[1]).abs();
    let covered: f64 = tiles.iter().map(|t| t.area()).sum();
    TilingInstance {
        family: Family::Croft,
        params: BTreeMap::new(),
        tiles,
        voids: vec![],
        lattice,
        cell_area: cell,
        void_area: cell - covered,
        constraints: vec![],
        points: BTreeMap::new(),
        curved_pairs: vec![],
    }
}

/// Seven-colour hexagonal tiling with hexagons of diameter `d`.
fn honeycomb(d: f64) -> TilingInstance {
    let r = d / 2.0;
    let hex = |c: Point| (0..6).map(|k| c + Point::polar(r, PI / 6.0 + k as f64 * PI / 3.0)).collect::<Vec<_>>();
    // centres of neighbouring hexagons are sqrt(3) r apart
    let a = Point::new(3f64.sqrt() * r, 0.0);
    let b = Point::polar(3f64.sqrt() * r, PI / 3.0);
    let tiles = (0..7).map(|k| polygon(&format!("h{k}"), k as u8 + 1, &hex(a * k as f64))).collect();
    // the same colour recurs at 2a + b, which is sqrt(7) * sqrt(3) r away
    instance(tiles, [a * 2.0 + b, b * 3.0 - a])
}

#[test]
fn honeycomb_is_proper() {
    let inst = honeycomb(0.9);
    let r = check_proper(&inst, DEFAULT_TOL).unwrap();
    assert!(r.proper, "{:?}", r.violations);
    assert_eq!(r.tight_count, 0);
    assert!(inst.lattice_area() > 0.0);
    // hexagons fill the plane
    assert!(inst.void_area.abs() < 1e-12);
}

#[test]
fn oversized_honeycomb_is_not() {
    let r = check_proper(&honeycomb(1.2), DEFAULT_TOL).unwrap();
    assert!(!r.proper);
}

#[test]
fn unit_separated_squares_are_tight() {
    let sq = |x0: f64, name: &str| {
        polygon(name, 1, &[Point::new(x0, 0.0), Point::new(x0 + 0.5, 0.0), Point::new(x0 + 0.5, 0.5), Point::new(x0, 0.5)])
    };
    let inst = instance(vec![sq(0.0, "a"), sq(1.5, "b")], [Point::new(10.0, 0.0), Point::new(0.0, 10.0)]);
    let pairs = proper::all_pairs(&inst, DEFAULT_TOL).unwrap();
    let between: Vec<_> = pairs.iter().filter(|p| p.first != p.second).collect();
    assert_eq!(between.len(), 1);
    assert!((between[0].min_d - 1.0).abs() < 1e-15);
    assert_eq!(between[0].classification, PairClass::Tight);
    // a hair closer and the pair violates
    let inst = instance(vec![sq(0.0, "a"), sq(1.5 - 1e-6, "b")], [Point::new(10.0, 0.0), Point::new(0.0, 10.0)]);
    let r = check_proper(&inst, DEFAULT_TOL).unwrap();
    assert_eq!(r.violations.len(), 1);
}

#[test]
fn croft_instances_are_proper_and_siamese_free() {
    for k in 1..=4 {
        let inst = build_croft(optimal_theta(), k).unwrap();
        let r = check_proper(&inst, DEFAULT_TOL).unwrap();
        assert!(r.proper, "k = {k}: {:?}", r.violations);
        assert_eq!(siamese_pairs(&inst, DEFAULT_TOL).unwrap().len(), 0);
    }
}

#[test]
fn single_tile_has_no_siamese_pair() {
    let inst = instance(
        vec![polygon("t", 1, &[Point::new(0.0, 0.0), Point::new(0.3, 0.0), Point::new(0.0, 0.3)])],
        [Point::new(3.0, 0.0), Point::new(0.0, 3.0)],
    );
    assert!(siamese_pairs(&inst, DEFAULT_TOL).unwrap().is_empty());
}

#[test]
fn published_six_colour_tiling_is_proper() {
    let inst = build_k6(&K6Params::published_k6(), &VariantFlags::FULL).unwrap();
    let r = check_proper(&inst, DEFAULT_TOL).unwrap();
    assert!(r.proper, "{:?}", r.violations);
    assert!(r.tight_count > 0);
    assert_eq!(proper_colour_count(&inst, DEFAULT_TOL), Some(9));
}

#[test]
fn published_seven_colour_tiling_is_proper_with_siamese_voids() {
    let inst = build_k7(&K6Params::published_k7()).unwrap();
    let r = check_proper(&inst, DEFAULT_TOL).unwrap();
    assert!(r.proper, "{:?}", r.violations);
    let siamese = siamese_pairs(&inst, DEFAULT_TOL).unwrap();
    assert!(!siamese.is_empty());
    assert!(siamese.iter().all(|p| p.first.starts_with('A')));
    assert_eq!(proper_colour_count(&inst, DEFAULT_TOL), Some(7));
}

#[test]
fn verdict_survives_rigid_motion() {
    let inst = build_k6(&K6Params::published_k6(), &VariantFlags::FULL).unwrap();
    let iso = Isometry::rotation(0.7).compose(&Isometry::translation(Point::new(3.0, -2.0)));
    let mv = |r: &Region| Region { boundary: r.boundary.iter().map(|e| e.transformed(&iso)).collect(), ..r.clone() };
    let lin = |p: Point| iso.apply(p) - iso.apply(Point::ORIGIN);
    let moved = TilingInstance {
        tiles: inst.tiles.iter().map(mv).collect(),
        voids: inst.voids.iter().map(mv).collect(),
        lattice: [lin(inst.lattice[0]), lin(inst.lattice[1])],
        ..inst.clone()
    };
    let (a, b) = (check_proper(&inst, DEFAULT_TOL).unwrap(), check_proper(&moved, DEFAULT_TOL).unwrap());
    assert!(b.proper);
    assert_eq!(a.tight_count, b.tight_count);
    // another choice of lattice basis describes the same tiling
    let rebased = TilingInstance { lattice: [inst.lattice[0], inst.lattice[1] + inst.lattice[0] * 2.0], ..inst.clone() };
    let c = check_proper(&rebased, DEFAULT_TOL).unwrap();
    assert!(c.proper);
    assert_eq!(a.tight_count, c.tight_count);
}

#[test]
fn uncoloured_tile_is_a_structural_error() {
    let mut inst = build_croft(optimal_theta(), 1).unwrap();
    inst.tiles[0].color = None;
    assert!(matches!(check_proper(&inst, DEFAULT_TOL), Err(VerifyError::Uncoloured(_))));
}

#[test]
fn monte_carlo_on_croft() {
    let inst = build_croft(optimal_theta(), 1).unwrap();
    let mc = monte_carlo_delta(&inst, 200_000, 7);
    let exact = inst.void_area / inst.cell_area;
    assert!((mc.estimate - exact).abs() < 4.0 * mc.stderr, "{mc:?} vs {exact}");
    // fixed seed, fixed answer
    assert_eq!(mc, monte_carlo_delta(&inst, 200_000, 7));
}

#[test]
fn monte_carlo_fully_covered_cell() {
    let sq = polygon("s", 1, &[Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0), Point::new(0.0, 1.0)]);
    let inst = instance(vec![sq], [Point::new(1.0, 0.0), Point::new(0.0, 1.0)]);
    let mc = monte_carlo_delta(&inst, 20_000, 1);
    assert_eq!(mc.estimate, 0.0);
}

#[test]
fn monte_carlo_resolves_tiny_voids() {
    let inst = build_k6(&K6Params::published_k6(), &VariantFlags::FULL).unwrap();
    let mc = monte_carlo_delta(&inst, 400_000, 3);
    let exact = inst.void_area / inst.cell_area;
    assert!((mc.estimate - exact).abs() < 4.0 * mc.stderr, "{mc:?} vs {exact}");
    assert!(mc.stderr < 0.02 * exact);
}
