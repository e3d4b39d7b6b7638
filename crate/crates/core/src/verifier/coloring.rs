//! Extra colours needed to turn a partial tiling into a proper colouring of the
//! whole plane: voids are coloured periodically with fresh colours, over some
//! sublattice of small index.

use serde::{Deserialize, Serialize};

use crate::geometry::Point;
use crate::instance::TilingInstance;

use super::proper::{classify, lattice_neighbours, region_extrema, PairClass};

/// Void `b` shifted by `shift` cannot share a colour with void `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conflict {
    pub a: usize,
    pub b: usize,
    pub shift: [i64; 2],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VoidColouring {
    /// Number of colours the voids need.
    pub colours: usize,
    /// Sublattice in lattice coordinates (rows are generators) the colouring repeats over.
    pub sublattice: [[i64; 2]; 2],
    /// Colour (0-based) of each void copy, indexed by `coset * voids + void`.
    pub assignment: Vec<u8>,
    pub cosets: Vec<[i64; 2]>,
}

pub fn void_conflicts(inst: &TilingInstance, tol: f64) -> Vec<Conflict> {
    let mut out = Vec::new();
    let vs = &inst.voids;
    for (i, a) in vs.iter().enumerate() {
        for (j, b) in vs.iter().enumerate().skip(i) {
            for shift in lattice_neighbours(a, b, &inst.lattice, 1.0 + tol) {
                if i == j && shift == [0, 0] {
                    continue;
                }
                let moved = b.translated(inst.lattice[0] * shift[0] as f64 + inst.lattice[1] * shift[1] as f64);
                let (lo, hi, _) = region_extrema(a, &moved);
                if classify(lo, hi, tol) == PairClass::Violating {
                    out.push(Conflict { a: i, b: j, shift });
                }
            }
        }
    }
    out
}

/// Sublattices of index `n` in Hermite normal form: rows `(a, b)`, `(0, d)` with `a d = n`, `0 <= b < d`.
pub fn sublattices(n: i64) -> Vec<[[i64; 2]; 2]> {
    let mut out = Vec::new();
    for a in 1..=n {
        if n % a != 0 {
            continue;
        }
        let d = n / a;
        for b in 0..d {
            out.push([[a, b], [0, d]]);
        }
    }
    out
}

/// Representative of `p` modulo the sublattice.
pub fn reduce(h: &[[i64; 2]; 2], p: [i64; 2]) -> [i64; 2] {
    let [[a, b], [_, d]] = *h;
    let k = p[0].div_euclid(a);
    let (x, y) = (p[0] - k * a, p[1] - k * b);
    [x, y.rem_euclid(d)]
}

pub fn cosets(h: &[[i64; 2]; 2]) -> Vec<[i64; 2]> {
    let [[a, _], [_, d]] = *h;
    (0..a).flat_map(|x| (0..d).map(move |y| [x, y])).collect()
}

fn colour(adj: &[Vec<usize>], k: u8) -> Option<Vec<u8>> {
    let n = adj.len();
    if adj.iter().enumerate().any(|(i, a)| a.contains(&i)) {
        return None;
    }
    // most constrained first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(adj[i].len()));
    let mut col = vec![u8::MAX; n];
    fn go(pos: usize, order: &[usize], adj: &[Vec<usize>], col: &mut [u8], k: u8) -> bool {
        let Some(&v) = order.get(pos) else { return true };
        // symmetry: never open more than one new colour at a time
        let used = col.iter().filter(|&&c| c != u8::MAX).max().map_or(0, |&c| c + 1);
        for c in 0..k.min(used + 1) {
            if adj[v].iter().all(|&u| col[u] != c) {
                col[v] = c;
                if go(pos + 1, order, adj, col, k) {
                    return true;
                }
                col[v] = u8::MAX;
            }
        }
        false
    }
    go(0, &order, adj, &mut col, k).then_some(col)
}

/// Fewest colours for the voids over all sublattices up to index `max_index`.
pub fn void_colouring(inst: &TilingInstance, tol: f64, max_index: i64) -> Option<VoidColouring> {
    let nv = inst.voids.len();
    if nv == 0 {
        return Some(VoidColouring { colours: 0, sublattice: [[1, 0], [0, 1]], assignment: vec![], cosets: vec![[0, 0]] });
    }
    let conflicts = void_conflicts(inst, tol);
    let mut best: Option<VoidColouring> = None;
    for n in 1..=max_index {
        for h in sublattices(n) {
            let reps = cosets(&h);
            let index_of = |p: [i64; 2]| reps.iter().position(|&r| r == reduce(&h, p)).expect("coset");
            let mut adj = vec![Vec::new(); nv * reps.len()];
            for (ci, c) in reps.iter().enumerate() {
                for f in &conflicts {
                    let cj = index_of([c[0] + f.shift[0], c[1] + f.shift[1]]);
                    let (u, v) = (ci * nv + f.a, cj * nv + f.b);
                    adj[u].push(v);
                    adj[v].push(u);
                }
            }
            let limit = best.as_ref().map_or(nv * reps.len(), |b| b.colours - 1);
            for k in 1..=limit {
                if let Some(assignment) = colour(&adj, k as u8) {
                    best = Some(VoidColouring { colours: k, sublattice: h, assignment, cosets: reps.clone() });
                    break;
                }
            }
        }
    }
    best
}

/// Colours of a proper colouring of the whole plane: the tiles' plus the voids'.
pub fn proper_colour_count(inst: &TilingInstance, tol: f64) -> Option<usize> {
    let tile_colours = inst.tiles.iter().filter_map(|t| t.color).max().unwrap_or(0) as usize;
    void_colouring(inst, tol, 4).map(|c| tile_colours + c.colours)
}

/// Lattice vector of a coset representative.
pub fn coset_shift(inst: &TilingInstance, c: [i64; 2]) -> Point {
    inst.lattice[0] * c[0] as f64 + inst.lattice[1] * c[1] as f64
}
