//! Six-colour partial tilings by 7-, 11- and 15-gons (and their curved variants).
//!
//! Tiles stand in columns of height `y`; neighbouring columns are mirrored and
//! shifted by `y/2`. Type A voids (rhombi or dodecagons) sit where four tiles
//! meet, type B voids (arrowheads) at the ends of the inclined sides. Void
//! labels: `A` at the origin, `B` at `(x-z, 0)`, `C` at `(x+z, y/2)`, `D` at
//! `(x-z, y)`, `E` at `(0, y)`, `F` at `(2x, 3y/2)`, `G` at `(x-z, 2y)`, `H` at
//! `(0, 2y)`. Corners are numbered clockwise, dodecagons from the top and
//! arrowheads from the rear.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::constraints::{ConstraintQuad, PointRef};
use crate::geometry::{curving_s2, polygon_area, Arc, BoundaryElement, Isometry, Point, Segment};
use crate::instance::{BuildError, Family, Region, TilingInstance};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct K6Params {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub s: f64,
    pub t: f64,
    pub v: f64,
    pub w: f64,
}

pub const PARAM_NAMES: [&str; 13] = ["l", "m", "n", "p", "q", "r", "s", "t", "v", "w", "x", "y", "z"];

impl K6Params {
    pub fn get(&self, name: &str) -> Option<f64> {
        Some(match name {
            "x" => self.x,
            "y" => self.y,
            "z" => self.z,
            "l" => self.l,
            "m" => self.m,
            "n" => self.n,
            "p" => self.p,
            "q" => self.q,
            "r" => self.r,
            "s" => self.s,
            "t" => self.t,
            "v" => self.v,
            "w" => self.w,
            _ => return None,
        })
    }

    pub fn slot(&mut self, name: &str) -> Option<&mut f64> {
        Some(match name {
            "x" => &mut self.x,
            "y" => &mut self.y,
            "z" => &mut self.z,
            "l" => &mut self.l,
            "m" => &mut self.m,
            "n" => &mut self.n,
            "p" => &mut self.p,
            "q" => &mut self.q,
            "r" => &mut self.r,
            "s" => &mut self.s,
            "t" => &mut self.t,
            "v" => &mut self.v,
            "w" => &mut self.w,
            _ => return None,
        })
    }

    pub fn to_map(&self) -> BTreeMap<String, f64> {
        PARAM_NAMES.iter().map(|k| (k.to_string(), self.get(k).unwrap())).collect()
    }

    pub fn from_map(map: &BTreeMap<String, f64>) -> Result<Self, BuildError> {
        let mut out = K6Params::default();
        for (k, v) in map {
            *out.slot(k).ok_or_else(|| BuildError::Params(format!("unknown parameter {k:?}")))? = *v;
        }
        Ok(out)
    }

    /// The record six-colour tiling.
    pub fn published_k6() -> Self {
        let nvw = 0.0033448254;
        K6Params {
            x: 0.9220971880,
            y: 0.5,
            z: 0.0500073975,
            l: 0.0133435475,
            m: 0.0099987220,
            n: nvw,
            p: 0.0008269367,
            q: 0.0035745405,
            r: 0.0054885277,
            s: 0.0005758591,
            t: 0.0005111915,
            v: nvw,
            w: nvw,
        }
    }

    /// The six-colour tiling whose voids take a seventh colour.
    pub fn published_k7() -> Self {
        K6Params {
            x: 0.9169683902,
            y: 0.5143908364,
            z: 0.0531068312,
            l: 0.0143908364,
            m: 0.0115262526,
            n: 0.0038562709,
            p: 0.0007214876,
            q: 0.0040043282,
            r: 0.0063056906,
            ..K6Params::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VoidCorners {
    Rhombus4,
    Dodeca12,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VariantFlags {
    pub void_corners: VoidCorners,
    pub arrowheads: bool,
    pub wavy: bool,
    pub curved: bool,
    /// 7: all voids share one extra colour; 8: type A voids alternate two colours; 9: arrowheads need a third.
    pub proper_colors: u8,
}

impl VariantFlags {
    pub const PRITIKIN: VariantFlags =
        VariantFlags { void_corners: VoidCorners::Rhombus4, arrowheads: false, wavy: false, curved: false, proper_colors: 8 };
    pub const FULL: VariantFlags =
        VariantFlags { void_corners: VoidCorners::Dodeca12, arrowheads: true, wavy: true, curved: true, proper_colors: 9 };
    pub const K7: VariantFlags =
        VariantFlags { void_corners: VoidCorners::Dodeca12, arrowheads: false, wavy: true, curved: true, proper_colors: 7 };

    pub fn dodeca(&self) -> bool {
        self.void_corners == VoidCorners::Dodeca12
    }

    pub fn validate(&self) -> Result<(), BuildError> {
        let bad = |why: &str| -> Result<(), BuildError> { Err(BuildError::Params(format!("variant {self:?}: {why}"))) };
        match (self.proper_colors, self.arrowheads) {
            (7 | 8, false) | (9, true) => {}
            (9, false) => return bad("nine colours come with arrowheads"),
            (7 | 8, true) => return bad("arrowheads need nine colours"),
            _ => return bad("proper colours must be 7, 8 or 9"),
        }
        if self.curved && !self.dodeca() && !self.arrowheads {
            return bad("a rhombus without arrowheads has no side pair to curve");
        }
        Ok(())
    }

    pub fn tile_sides(&self) -> usize {
        7 + 4 * usize::from(self.dodeca()) + 4 * usize::from(self.arrowheads)
    }

    /// Parameters the optimizer may move; the rest follow from the variant.
    pub fn free_variables(&self) -> Vec<&'static str> {
        let mut v = vec!["x", "y", "z", "l"];
        if self.dodeca() {
            v.extend(["m", "n", "p", "q"]);
        }
        v.push("r");
        if self.arrowheads {
            v.extend(["s", "t", "v", "w"]);
        }
        v
    }

    /// Applies the reductions of the variant: rhombus corners and absent arrowheads.
    pub fn normalize(&self, mut p: K6Params) -> K6Params {
        if !self.dodeca() {
            p.m = p.l;
            p.p = 0.0;
            p.q = p.r;
            p.n = 0.0;
        }
        if !self.arrowheads {
            p.s = 0.0;
            p.t = 0.0;
            p.v = 0.0;
            p.w = 0.0;
        }
        p
    }

    /// All populated cells of the variant table, row by row.
    pub fn table1() -> Vec<VariantFlags> {
        let mut out = Vec::new();
        for (colors, corners, arrows) in [
            (7, VoidCorners::Rhombus4, false),
            (7, VoidCorners::Dodeca12, false),
            (8, VoidCorners::Rhombus4, false),
            (8, VoidCorners::Dodeca12, false),
            (9, VoidCorners::Rhombus4, true),
            (9, VoidCorners::Dodeca12, true),
        ] {
            for (wavy, curved) in [(false, false), (false, true), (true, false), (true, true)] {
                let f = VariantFlags { void_corners: corners, arrowheads: arrows, wavy, curved, proper_colors: colors };
                if f.validate().is_ok() {
                    out.push(f);
                }
            }
        }
        out
    }

    pub fn describe(&self) -> String {
        format!(
            "{} colours, {}-gon, {}{}, {} {}",
            self.proper_colors,
            self.tile_sides(),
            if self.dodeca() { "dodecagon voids" } else { "rhombus voids" },
            if self.arrowheads { " + arrowheads" } else { "" },
            if self.wavy { "wavy" } else { "non-wavy" },
            if self.curved { "curved" } else { "straight" },
        )
    }
}

/// Constraint list for a variant, as text quads.
pub fn constraint_manifest(flags: &VariantFlags) -> Vec<String> {
    let (d, a) = (flags.dodeca(), flags.arrowheads);
    let mut out = Vec::new();
    out.push(match (d, a) {
        (false, false) => "inner A1 C",
        (false, true) => "inner A1 A1 C2 C1",
        (true, false) => "inner A1 A2 C",
        (true, true) => "inner A1 A2 C2 C1",
    });
    out.push(match (d, a) {
        (false, false) => "inner A2 D",
        (false, true) => "inner A2 A2 D4 D3",
        (true, false) => "inner A3 A4 D",
        (true, true) => "inner A3 A4 D4 D3",
    });
    if flags.proper_colors == 7 {
        out.push(if d { "outer A1 H7" } else { "outer A1 H3" });
    } else {
        out.push(match (d, a) {
            (false, false) => "outer A2 B G H2",
            (false, true) => "outer A2 B4 G4 H2",
            (true, false) => "outer A4 B G H4",
            (true, true) => "outer A4 B4 G4 H4",
        });
    }
    out.push(match (flags.wavy, d, a) {
        (true, false, _) => "outer-pair A3 A4 F1 F2",
        (true, true, _) => "outer-pair A8 A9 F2 F3",
        (false, false, false) => "outer-ext A3 A4 D C",
        (false, false, true) => "outer-ext A3 A4 D2 C3",
        (false, true, false) => "outer-ext A8 A9 D C",
        (false, true, true) => "outer-ext A8 A9 D2 C3",
    });
    out.into_iter().map(String::from).collect()
}

fn dodeca_offsets(p: &K6Params) -> [Point; 12] {
    let pt = Point::new;
    [
        pt(0.0, p.l),
        pt(p.p, p.m),
        pt(p.q, p.n),
        pt(p.r, 0.0),
        pt(p.q, -p.n),
        pt(p.p, -p.m),
        pt(0.0, -p.l),
        pt(-p.p, -p.m),
        pt(-p.q, -p.n),
        pt(-p.r, 0.0),
        pt(-p.q, p.n),
        pt(-p.p, p.m),
    ]
}

/// Arrowhead pointing right (`tip_right`) or left.
fn arrow_offsets(p: &K6Params, tip_right: bool) -> [Point; 6] {
    let c = 4.0 * p.z / p.y;
    let pt = Point::new;
    let right = [pt(-p.t, 0.0), pt(-c * p.w, p.w), pt(-c * p.v, p.v), pt(p.s, 0.0), pt(-c * p.v, -p.v), pt(-c * p.w, -p.w)];
    if tip_right {
        right
    } else {
        right.map(|o| -o)
    }
}

/// All labelled points of a parameter vector, in dodecagon coordinates.
#[derive(Clone, Debug)]
pub struct Layout {
    pub params: K6Params,
    pub flags: VariantFlags,
    a: [Point; 12],
    e: [Point; 12],
    f: [Point; 12],
    h: [Point; 12],
    b: [Point; 6],
    c: [Point; 6],
    d: [Point; 6],
    g: [Point; 6],
}

impl Layout {
    pub fn new(params: &K6Params, flags: &VariantFlags) -> Result<Self, BuildError> {
        flags.validate()?;
        let p = flags.normalize(*params);
        check_params(&p)?;
        let shift = |o: [Point; 12], c: Point| o.map(|q| q + c);
        let shift6 = |o: [Point; 6], c: Point| o.map(|q| q + c);
        let dod = dodeca_offsets(&p);
        let left = arrow_offsets(&p, false);
        Ok(Layout {
            params: p,
            flags: *flags,
            a: dod,
            e: shift(dod, Point::new(0.0, p.y)),
            f: shift(dod, Point::new(2.0 * p.x, 1.5 * p.y)),
            h: shift(dod, Point::new(0.0, 2.0 * p.y)),
            b: shift6(left, Point::new(p.x - p.z, 0.0)),
            c: shift6(arrow_offsets(&p, true), Point::new(p.x + p.z, 0.5 * p.y)),
            d: shift6(left, Point::new(p.x - p.z, p.y)),
            g: shift6(left, Point::new(p.x - p.z, 2.0 * p.y)),
        })
    }

    /// Dodecagon-numbered corner `i` (1-based) of void `label`.
    fn raw(&self, label: char, i: usize) -> Point {
        match label {
            'A' => self.a[i - 1],
            'E' => self.e[i - 1],
            'F' => self.f[i - 1],
            'H' => self.h[i - 1],
            'B' => self.b[i - 1],
            'C' => self.c[i - 1],
            'D' => self.d[i - 1],
            'G' => self.g[i - 1],
            _ => unreachable!("unknown void {label}"),
        }
    }

    /// Labelled points under the naming the variant uses.
    pub fn points(&self) -> BTreeMap<PointRef, Point> {
        let mut out = BTreeMap::new();
        for label in ['A', 'E', 'F', 'H'] {
            if self.flags.dodeca() {
                for i in 1..=12 {
                    out.insert(PointRef::new(label, i as u8), self.raw(label, i));
                }
            } else {
                for (k, i) in [1, 4, 7, 10].into_iter().enumerate() {
                    out.insert(PointRef::new(label, k as u8 + 1), self.raw(label, i));
                }
            }
        }
        for label in ['B', 'C', 'D', 'G'] {
            if self.flags.arrowheads {
                for i in 1..=6 {
                    out.insert(PointRef::new(label, i as u8), self.raw(label, i));
                }
            } else {
                out.insert(PointRef::bare(label), self.raw(label, 1));
            }
        }
        out
    }

    /// Corners of the tile between voids A, B, C, D and E, counterclockwise.
    pub fn tile_corners(&self) -> [Point; 15] {
        [
            self.a[0], self.a[1], self.a[2], self.a[3], self.b[3], self.b[4], self.c[5], self.c[0], self.c[1], self.d[2],
            self.d[3], self.e[3], self.e[4], self.e[5], self.e[6],
        ]
    }

    /// Side lengths `(a, b)` of the two curved side pairs.
    pub fn curved_pairs(&self) -> [(f64, f64); 2] {
        [(self.a[0].dist(self.a[1]), self.c[0].dist(self.c[1])), (self.a[2].dist(self.a[3]), self.d[2].dist(self.d[3]))]
    }

    /// `|AC| - |BD|` for the two inner quads. With `|AD| = |BC| = 1` the sides are
    /// at most 1 apart, and curved arcs share a centre, only when this vanishes.
    pub fn inner_skew(&self) -> [f64; 2] {
        [
            self.a[0].dist(self.c[1]) - self.a[1].dist(self.c[0]),
            self.a[2].dist(self.d[3]) - self.a[3].dist(self.d[2]),
        ]
    }

    /// Polygonal void area per tile.
    pub fn polygonal_void_area(&self) -> f64 {
        let K6Params { l, m, n, p, q, r, s, t, v, w, .. } = self.params;
        l * p + n * r + m * q - n * p + v * s + w * t
    }

    /// Area gained per tile by curving its four side pairs.
    pub fn curving_gain(&self) -> Result<f64, BuildError> {
        if !self.flags.curved {
            return Ok(0.0);
        }
        let mut gain = 0.0;
        for (a, b) in self.curved_pairs() {
            if a + b > 0.0 {
                gain += 2.0 * curving_s2(a, b)?.s2;
            }
        }
        Ok(gain)
    }

    pub fn cell_area(&self) -> f64 {
        self.params.x * self.params.y
    }

    pub fn void_area(&self) -> Result<f64, BuildError> {
        Ok(self.polygonal_void_area() - self.curving_gain()?)
    }

    /// Rigid middle part of the upper inclined side: `A8` moved one unit towards
    /// `F3`, and its image under the half-turn that swaps neighbouring columns.
    /// The second end is `A9 + u` once the outer pair holds.
    pub fn rigid_segment(&self) -> (Point, Point) {
        let (a8, f3) = (self.a[7], self.f[2]);
        let m1 = a8 + (f3 - a8).unit();
        (m1, self.half_turn().apply(m1))
    }

    pub fn half_turn(&self) -> Isometry {
        Isometry::point_reflection(Point::new(self.params.x, 0.75 * self.params.y))
    }
}

fn check_params(p: &K6Params) -> Result<(), BuildError> {
    let vals = PARAM_NAMES.map(|k| p.get(k).unwrap());
    if vals.iter().any(|v| !v.is_finite()) {
        return Err(BuildError::Params("non-finite parameter".into()));
    }
    if let Some(k) = PARAM_NAMES.iter().zip(vals).find(|(_, v)| *v < 0.0).map(|(k, _)| k) {
        return Err(BuildError::Params(format!("negative {k}")));
    }
    if !(p.x > 0.0 && p.y > 0.0 && p.z < p.x) {
        return Err(BuildError::Params("need x, y > 0 and z < x".into()));
    }
    if !(p.p <= p.q && p.q <= p.r && p.n <= p.m && p.m <= p.l) {
        return Err(BuildError::Params("type A corners out of order".into()));
    }
    if p.l + p.r == 0.0 {
        return Err(BuildError::Params("type A voids vanished".into()));
    }
    Ok(())
}

/// Cheap evaluation used in the optimizer's inner loop; the same quantities `build_k6` stores.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub cell_area: f64,
    pub void_area: f64,
    pub equations: Vec<f64>,
}

pub fn evaluate(params: &K6Params, flags: &VariantFlags) -> Result<Evaluation, BuildError> {
    let lay = Layout::new(params, flags)?;
    check_simple(&lay)?;
    let void_area = lay.void_area()?;
    if !(void_area > 0.0) {
        return Err(BuildError::Degenerate(format!("void area {void_area}")));
    }
    let points = lay.points();
    let mut equations = Vec::new();
    for q in manifest_quads(flags) {
        equations.extend(crate::constraints::equations_on(&q, &points)?);
    }
    equations.extend(lay.inner_skew());
    Ok(Evaluation { cell_area: lay.cell_area(), void_area, equations })
}

fn manifest_quads(flags: &VariantFlags) -> Vec<ConstraintQuad> {
    constraint_manifest(flags).iter().map(|s| s.parse().expect("manifest entries parse")).collect()
}

/// Tile and void outlines must be simple polygons.
fn check_simple(lay: &Layout) -> Result<(), BuildError> {
    let tile = dedup(&lay.tile_corners());
    simple_polygon(&tile, "tile")?;
    if lay.flags.dodeca() {
        simple_polygon(&dedup(&lay.a), "dodecagon")?;
    }
    if lay.flags.arrowheads {
        simple_polygon(&dedup(&lay.c), "arrowhead")?;
    }
    let area = polygon_area(&tile)?;
    if !(area > 0.0) {
        return Err(BuildError::Degenerate("tile outline is not counterclockwise".into()));
    }
    Ok(())
}

fn dedup(pts: &[Point]) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(pts.len());
    for &p in pts {
        if out.last() != Some(&p) {
            out.push(p);
        }
    }
    while out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

fn simple_polygon(pts: &[Point], what: &str) -> Result<(), BuildError> {
    let n = pts.len();
    if n < 3 {
        return Ok(());
    }
    let seg = |i: usize| Segment { start: pts[i], end: pts[(i + 1) % n] };
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            if crate::geometry::distance::segment_intersection(&seg(i), &seg(j)).is_some() {
                return Err(BuildError::SelfIntersection { region: what.into(), a: i, b: j });
            }
        }
    }
    Ok(())
}

/// How one side of the tile is drawn.
#[derive(Clone, Copy)]
enum Side {
    Straight,
    /// Arc bulging into the void, with radius `a / (a + b)` of its curved pair.
    Curved { own: f64, other: f64 },
}

fn side(from: Point, to: Point, how: Side, curved: bool, out: &mut Vec<BoundaryElement>) -> Result<(), BuildError> {
    if from == to {
        return Ok(());
    }
    match how {
        Side::Curved { own, other } if curved => {
            out.push(BoundaryElement::Arc(Arc::bulging_right(from, to, own / (own + other))?));
        }
        _ => out.push(BoundaryElement::segment(from, to)?),
    }
    Ok(())
}

/// Upper inclined side from `C2` to `D3`; returns elements and whether each is rigid.
/// The wavy form runs S, P, M1, M2, P', E with P, M1, M2, P' on one line.
fn inclined_side(lay: &Layout) -> Result<(Vec<BoundaryElement>, Vec<bool>), BuildError> {
    let (c2, c3, d2, d3) = (lay.c[1], lay.c[2], lay.d[1], lay.d[2]);
    let mut pts: Vec<(Point, bool)> = vec![(c2, true)];
    if lay.flags.wavy {
        // shared part starts at whichever of C2, C3 lies further from C
        let (start, end) = if lay.params.w >= lay.params.v { (c2, d2) } else { (c3, d3) };
        let (m1, m2) = lay.rigid_segment();
        let u = (m2 - m1).unit();
        let foot = m1 + u * (start - m1).dot(u);
        // Leaving the rigid line right at M1 cuts into the unit disks tangent to it
        // there; halfway to the foot of S clears them and stays within unit
        // distance of the far corners.
        let p = m1.lerp(foot, 0.5);
        let half = lay.half_turn();
        pts.push((start, true));
        pts.push((p, false));
        pts.push((m1, false));
        pts.push((m2, true));
        pts.push((half.apply(p), false));
        pts.push((end, false));
        pts.push((d3, true));
    } else {
        pts.push((d3, true));
    }
    let mut elems = Vec::new();
    let mut rigid = Vec::new();
    for w in pts.windows(2) {
        let ((a, _), (b, r)) = (w[0], w[1]);
        if a.dist(b) > 0.0 {
            elems.push(BoundaryElement::segment(a, b)?);
            rigid.push(r);
        }
    }
    Ok((elems, rigid))
}

/// Counterclockwise outline of the tile at the origin, with non-rigid element indices.
fn tile_outline(lay: &Layout) -> Result<(Vec<BoundaryElement>, Vec<usize>), BuildError> {
    let cv = lay.flags.curved;
    let [(a1, b1), (a2, b2)] = lay.curved_pairs();
    let p1a = Side::Curved { own: a1, other: b1 };
    let p1b = Side::Curved { own: b1, other: a1 };
    let p2a = Side::Curved { own: a2, other: b2 };
    let p2b = Side::Curved { own: b2, other: a2 };
    let (a, b, c, d, e) = (&lay.a, &lay.b, &lay.c, &lay.d, &lay.e);
    let mirror = Isometry::mirror_horizontal(lay.params.y / 2.0);
    let (upper, upper_rigid) = inclined_side(lay)?;
    let lower: Vec<BoundaryElement> = upper.iter().rev().map(|el| el.transformed(&mirror).reversed()).collect();
    let lower_rigid: Vec<bool> = upper_rigid.iter().rev().copied().collect();

    let mut out = Vec::new();
    let mut non_rigid = Vec::new();
    side(a[0], a[1], p1a, cv, &mut out)?;
    side(a[1], a[2], Side::Straight, cv, &mut out)?;
    side(a[2], a[3], p2a, cv, &mut out)?;
    side(a[3], b[3], Side::Straight, cv, &mut out)?;
    side(b[3], b[4], p2b, cv, &mut out)?;
    for (el, r) in lower.into_iter().zip(lower_rigid) {
        if !r {
            non_rigid.push(out.len());
        }
        out.push(el);
    }
    side(c[5], c[0], p1b, cv, &mut out)?;
    side(c[0], c[1], p1b, cv, &mut out)?;
    for (el, r) in upper.into_iter().zip(upper_rigid) {
        if !r {
            non_rigid.push(out.len());
        }
        out.push(el);
    }
    side(d[2], d[3], p2b, cv, &mut out)?;
    side(d[3], e[3], Side::Straight, cv, &mut out)?;
    side(e[3], e[4], p2a, cv, &mut out)?;
    side(e[4], e[5], Side::Straight, cv, &mut out)?;
    side(e[5], e[6], p1a, cv, &mut out)?;
    side(e[6], a[0], Side::Straight, cv, &mut out)?;
    Ok((out, non_rigid))
}

/// Elements of `outline` whose both endpoints are among `corners`, in order.
fn pick(outline: &[BoundaryElement], from: Point, to: Point) -> Vec<BoundaryElement> {
    let start = outline.iter().position(|e| e.start() == from);
    let mut out = Vec::new();
    if let Some(mut i) = start {
        if from == to {
            return out;
        }
        loop {
            let e = outline[i % outline.len()];
            out.push(e);
            if e.end() == to || out.len() > outline.len() {
                break;
            }
            i += 1;
        }
    }
    out
}

fn reversed_chain(chain: &[BoundaryElement]) -> Vec<BoundaryElement> {
    chain.iter().rev().map(BoundaryElement::reversed).collect()
}

fn transformed(chain: &[BoundaryElement], iso: &Isometry) -> Vec<BoundaryElement> {
    chain.iter().map(|e| e.transformed(iso)).collect()
}

/// Clockwise outline of the type A void at the origin, built from the four tiles around it.
fn void_a(lay: &Layout, tile: &[BoundaryElement]) -> Vec<BoundaryElement> {
    let ne = pick(tile, lay.a[0], lay.a[3]);
    let mut cw = ne.clone();
    cw.extend(reversed_chain(&transformed(&ne, &Isometry::mirror_horizontal(0.0))));
    cw.extend(transformed(&ne, &Isometry::point_reflection(Point::ORIGIN)));
    cw.extend(reversed_chain(&transformed(&ne, &Isometry::mirror_vertical(0.0))));
    cw
}

/// Clockwise outline of the arrowhead at C.
fn void_c(lay: &Layout, tile: &[BoundaryElement]) -> Result<Vec<BoundaryElement>, BuildError> {
    let half_turn = lay.half_turn();
    let mirror = Isometry::mirror_horizontal(lay.params.y / 2.0);
    let c = &lay.c;
    let mut cw = pick(tile, c[0], c[1]);
    let mut upper = Vec::new();
    if c[1] != c[2] {
        upper.push(BoundaryElement::segment(c[1], c[2])?);
    }
    upper.extend(transformed(&pick(tile, lay.d[2], lay.d[3]), &half_turn));
    cw.extend(upper.iter().copied());
    cw.extend(reversed_chain(&transformed(&upper, &mirror)));
    cw.extend(pick(tile, c[5], c[0]));
    Ok(cw)
}

fn region(name: String, color: Option<u8>, cw: Vec<BoundaryElement>) -> Region {
    Region::new(name, color, reversed_chain(&cw))
}

pub fn build_k6(params: &K6Params, flags: &VariantFlags) -> Result<TilingInstance, BuildError> {
    let lay = Layout::new(params, flags)?;
    check_simple(&lay)?;
    let p = lay.params;
    let void_area = lay.void_area()?;
    if !(void_area > 0.0) {
        return Err(BuildError::Degenerate(format!("void area {void_area}")));
    }
    let (outline, non_rigid) = tile_outline(&lay)?;
    let base = Region { name: "tile".into(), color: None, boundary: outline.clone(), non_rigid: non_rigid.clone() };
    base.validate()?;
    let half_turn = lay.half_turn();
    let partner = Region {
        name: "tile'".into(),
        color: None,
        boundary: transformed(&outline, &half_turn),
        non_rigid,
    };

    let mut tiles = Vec::new();
    for j in 0..3 {
        let up = Point::new(0.0, j as f64 * p.y);
        let mut t = base.translated(up);
        t.name = format!("R{j}");
        t.color = Some(j as u8 + 1);
        tiles.push(t);
        let mut t = partner.translated(up);
        t.name = format!("L{j}");
        t.color = Some(j as u8 + 4);
        tiles.push(t);
    }

    let mut voids = Vec::new();
    let va = region("A".into(), None, void_a(&lay, &outline));
    va.validate()?;
    let arrow = if flags.arrowheads {
        let vc = region("C".into(), None, void_c(&lay, &outline)?);
        vc.validate()?;
        let mut vd = Region { boundary: transformed(&vc.boundary, &half_turn), ..vc.clone() };
        vd.name = "D".into();
        Some((vc, vd))
    } else {
        None
    };
    for j in 0..3 {
        let up = Point::new(0.0, j as f64 * p.y);
        let mut a = va.translated(up);
        a.name = format!("A{j}");
        voids.push(a);
        if let Some((vc, vd)) = &arrow {
            let mut c = vc.translated(up);
            c.name = format!("C{j}");
            voids.push(c);
            let mut d = vd.translated(up);
            d.name = format!("D{j}");
            voids.push(d);
        }
    }

    let curved_pairs = if flags.curved {
        let r = |s: &str| s.parse::<PointRef>().unwrap();
        match (flags.dodeca(), flags.arrowheads) {
            (true, true) => vec![[r("A1"), r("A2"), r("C2"), r("C1")], [r("A3"), r("A4"), r("D4"), r("D3")]],
            (true, false) => vec![[r("A1"), r("A2"), r("C"), r("C")], [r("A3"), r("A4"), r("D"), r("D")]],
            _ => vec![[r("A1"), r("A1"), r("C2"), r("C1")], [r("A2"), r("A2"), r("D4"), r("D3")]],
        }
    } else {
        Vec::new()
    };

    Ok(TilingInstance {
        family: if flags.proper_colors == 7 { Family::K7 } else { Family::K6 },
        params: p.to_map(),
        tiles,
        voids,
        lattice: [Point::new(0.0, 3.0 * p.y), Point::new(2.0 * p.x, 1.5 * p.y)],
        cell_area: lay.cell_area(),
        void_area,
        constraints: manifest_quads(flags),
        points: lay.points(),
        curved_pairs,
    })
}

/// The seven-colour tiling: no arrowheads, every void in colour 7.
pub fn build_k7(params: &K6Params) -> Result<TilingInstance, BuildError> {
    if params.s != 0.0 || params.t != 0.0 || params.v != 0.0 || params.w != 0.0 {
        return Err(BuildError::Params("the seven-colour tiling has no arrowheads (s = t = v = w = 0)".into()));
    }
    let mut inst = build_k6(params, &VariantFlags::K7)?;
    for v in &mut inst.voids {
        v.color = Some(7);
    }
    Ok(inst)
}

/// Translation between columns 0 and 2 used by the colouring; `k` shifts it by whole tiles.
pub fn colouring_lattice(params: &K6Params, k: u32) -> [Point; 2] {
    [Point::new(0.0, 3.0 * params.y), Point::new(2.0 * params.x, (0.5 + k as f64) * params.y)]
}

pub fn with_family(mut inst: TilingInstance, family: Family) -> TilingInstance {
    inst.family = family;
    inst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraints::equations;
    use crate::geometry::{chain_extrema, polygon_area};
    use crate::instance::metrics;

    #[test]
    fn table_has_twenty_cells() {
        let rows = VariantFlags::table1();
        assert_eq!(rows.len(), 20);
        assert!(rows.contains(&VariantFlags::PRITIKIN) && rows.contains(&VariantFlags::FULL) && rows.contains(&VariantFlags::K7));
        assert_eq!(VariantFlags::FULL.tile_sides(), 15);
        assert_eq!(VariantFlags::PRITIKIN.tile_sides(), 7);
    }

    #[test]
    fn shoelace_agrees_with_void_formula() {
        let lay = Layout::new(&K6Params::published_k6(), &VariantFlags { curved: false, ..VariantFlags::FULL }).unwrap();
        let tile = polygon_area(&lay.tile_corners()).unwrap();
        assert!((tile - (lay.cell_area() - lay.polygonal_void_area())).abs() < 1e-15);
    }

    #[test]
    fn record_vector() {
        let p = K6Params::published_k6();
        assert_eq!(p.n, p.v);
        assert_eq!(p.v, p.w);
        let inst = build_k6(&p, &VariantFlags::FULL).unwrap();
        let m = metrics(&inst).unwrap();
        // the published vector is rounded to 1e-10, which moves rho by about 1e-8 relative
        assert!((m.rho / 6992.1655504123 - 1.0).abs() < 1e-7, "{}", m.rho);
        for q in &inst.constraints {
            for e in equations(q, &inst).unwrap() {
                assert!(e.abs() < 1e-6, "{q}: {e}");
            }
        }
        let straight = build_k6(&p, &VariantFlags { curved: false, ..VariantFlags::FULL }).unwrap();
        let rho = metrics(&straight).unwrap().rho;
        assert!(rho > 6985.0 && rho < 6985.4, "{rho}");
    }

    #[test]
    fn seven_colour_vector() {
        let inst = build_k7(&K6Params::published_k7()).unwrap();
        let m = metrics(&inst).unwrap();
        assert!((m.rho / 6043.11246787913 - 1.0).abs() < 1e-7, "{}", m.rho);
        assert!(inst.voids.iter().all(|v| v.color == Some(7)));
        for q in &inst.constraints {
            for e in equations(q, &inst).unwrap() {
                assert!(e.abs() < 1e-6, "{q}: {e}");
            }
        }
    }

    #[test]
    fn regions_are_consistent() {
        let inst = build_k6(&K6Params::published_k6(), &VariantFlags::FULL).unwrap();
        let tile_area = inst.tiles[0].area();
        assert!((tile_area - (inst.cell_area - inst.void_area)).abs() < 1e-13, "{tile_area} {}", inst.cell_area - inst.void_area);
        for t in &inst.tiles {
            t.validate().unwrap();
            assert!((t.area() - tile_area).abs() < 1e-13);
        }
        // one type A void and two arrowheads per tile pair
        let a = inst.voids[0].area();
        let c = inst.voids[1].area();
        assert!((a + 2.0 * c - 2.0 * inst.void_area).abs() < 1e-13, "{a} {c}");
        // tiles are unit-diameter sets
        let (_, far) = chain_extrema(&inst.tiles[0].boundary, &inst.tiles[0].boundary);
        assert!(far.distance <= 1.0 + 1e-9, "{:?}", far);
    }

    #[test]
    fn every_variant_builds_at_the_seed() {
        let seed = K6Params { x: 0.92157, y: 0.5, z: 0.05009, l: 0.01362, m: 0.01, n: 0.003, p: 0.0008, q: 0.0035, r: 0.00546, s: 0.0005, t: 0.0005, v: 0.003, w: 0.003 };
        for f in VariantFlags::table1() {
            let inst = build_k6(&seed, &f).unwrap_or_else(|e| panic!("{}: {e}", f.describe()));
            let ev = evaluate(&seed, &f).unwrap();
            assert_eq!(ev.void_area, inst.void_area);
            inst.tiles[0].validate().unwrap();
            assert!((inst.tiles[0].area() - (inst.cell_area - inst.void_area)).abs() < 1e-13, "{}", f.describe());
        }
    }

    #[test]
    fn manifest_shape() {
        for f in VariantFlags::table1() {
            let m = constraint_manifest(&f);
            assert_eq!(m.len(), 4);
            assert!(m[0].starts_with("inner") && m[1].starts_with("inner"));
            assert_eq!(m[3].starts_with("outer-pair"), f.wavy);
        }
    }
}
