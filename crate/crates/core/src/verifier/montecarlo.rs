use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::geometry::{point_in_chain, Point};
use crate::instance::{Region, TilingInstance};

use super::proper::lattice_neighbours;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Tile translates that meet the fundamental cell, with their bounding boxes.
struct Cover {
    tiles: Vec<(Point, Point, Region)>,
}

impl Cover {
    fn new(inst: &TilingInstance) -> Self {
        let [l1, l2] = inst.lattice;
        let cell = Region::new(
            "cell",
            None,
            vec![crate::geometry::BoundaryElement::segment(Point::ORIGIN, l1 + l2).expect("non-degenerate lattice")],
        );
        let mut tiles = Vec::new();
        for t in &inst.tiles {
            // reach covers the whole cell around its diagonal's midpoint
            for s in lattice_neighbours(&cell, t, &inst.lattice, (l1 - l2).norm()) {
                let moved = t.translated(l1 * s[0] as f64 + l2 * s[1] as f64);
                let (lo, hi) = moved.bbox();
                tiles.push((lo, hi, moved));
            }
        }
        Cover { tiles }
    }

    fn covered(&self, p: Point) -> bool {
        self.tiles
            .iter()
            .any(|(lo, hi, r)| p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y && point_in_chain(&r.boundary, p))
    }
}

/// Axis-aligned box around one void, placed so its centre lies in the cell.
#[derive(Clone, Copy)]
struct Stratum {
    lo: Point,
    hi: Point,
}

impl Stratum {
    fn area(&self) -> f64 {
        (self.hi.x - self.lo.x) * (self.hi.y - self.lo.y)
    }

    fn contains(&self, p: Point) -> bool {
        p.x >= self.lo.x && p.x < self.hi.x && p.y >= self.lo.y && p.y < self.hi.y
    }
}

fn to_cell(p: Point, lattice: &[Point; 2]) -> Point {
    let [l1, l2] = *lattice;
    let det = l1.cross(l2);
    let (u, v) = (p.cross(l2) / det, l1.cross(p) / det);
    p - l1 * u.floor() - l2 * v.floor()
}

fn strata(inst: &TilingInstance) -> Vec<Stratum> {
    let pad = 1e-9;
    let mut out: Vec<Stratum> = Vec::new();
    for v in &inst.voids {
        let (lo, hi) = v.bbox();
        let c = lo.lerp(hi, 0.5);
        let shift = to_cell(c, &inst.lattice) - c;
        let s = Stratum { lo: lo + shift - Point::new(pad, pad), hi: hi + shift + Point::new(pad, pad) };
        out.push(s);
    }
    out
}

/// Which stratum a cell point falls in, looking at its nearby lattice images.
fn locate(p: Point, strata: &[Stratum], lattice: &[Point; 2]) -> Option<(usize, Point)> {
    for i in -1..=1 {
        for j in -1..=1 {
            let q = p + lattice[0] * i as f64 + lattice[1] * j as f64;
            if let Some(k) = strata.iter().position(|s| s.contains(q)) {
                return Some((k, q));
            }
        }
    }
    None
}

const BATCH: u64 = 1 << 14;

/// Counts uncovered points among `n` draws from `draw`, in parallel batches with per-batch streams.
fn count_uncovered(cover: &Cover, n: u64, seed: u64, stream: u64, draw: &(dyn Fn(&mut ChaCha8Rng) -> Option<Point> + Sync)) -> (u64, u64) {
    let batches = n.div_ceil(BATCH);
    (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(stream);
            rng.set_word_pos(b as u128 * BATCH as u128 * 64);
            let todo = BATCH.min(n - b * BATCH);
            let (mut hits, mut used) = (0, 0);
            for _ in 0..todo {
                if let Some(p) = draw(&mut rng) {
                    used += 1;
                    if !cover.covered(p) {
                        hits += 1;
                    }
                }
            }
            (hits, used)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
}

/// Uncovered fraction of the fundamental cell by sampling. Boxes around the
/// voids are sampled as separate strata so that tiny voids are resolved.
pub fn monte_carlo_delta(inst: &TilingInstance, samples: u64, seed: u64) -> McEstimate {
    let cover = Cover::new(inst);
    let lattice = inst.lattice;
    let cell = inst.lattice_area();
    let boxes = strata(inst);
    let uniform = |rng: &mut ChaCha8Rng| {
        let (u, v): (f64, f64) = (rng.gen(), rng.gen());
        lattice[0] * u + lattice[1] * v
    };
    if boxes.is_empty() {
        let (hits, used) = count_uncovered(&cover, samples, seed, 0, &|rng| Some(uniform(rng)));
        let p = hits as f64 / used as f64;
        return McEstimate { estimate: p, stderr: (p * (1.0 - p) / used as f64).sqrt(), samples, seed };
    }

    let per_box = samples / 2 / boxes.len() as u64;
    let rest = samples - per_box * boxes.len() as u64;
    let mut estimate = 0.0;
    let mut var = 0.0;
    for (k, b) in boxes.iter().enumerate() {
        let b = *b;
        let draw = move |rng: &mut ChaCha8Rng| {
            let (u, v): (f64, f64) = (rng.gen(), rng.gen());
            Some(Point::new(b.lo.x + u * (b.hi.x - b.lo.x), b.lo.y + v * (b.hi.y - b.lo.y)))
        };
        let (hits, used) = count_uncovered(&cover, per_box, seed, k as u64 + 1, &draw);
        let p = hits as f64 / used as f64;
        let w = b.area() / cell;
        estimate += w * p;
        var += w * w * p * (1.0 - p) / used as f64;
    }
    // the remainder of the cell, drawn by rejection
    let draw = |rng: &mut ChaCha8Rng| {
        let p = uniform(rng);
        match locate(p, &boxes, &lattice) {
            Some(_) => None,
            None => Some(p),
        }
    };
    let (hits, used) = count_uncovered(&cover, rest, seed, 0, &draw);
    let w = 1.0 - boxes.iter().map(|b| b.area()).sum::<f64>() / cell;
    if used > 0 {
        let p = hits as f64 / used as f64;
        estimate += w * p;
        var += w * w * p * (1.0 - p) / used as f64;
    }
    McEstimate { estimate, stderr: var.sqrt(), samples, seed }
}
