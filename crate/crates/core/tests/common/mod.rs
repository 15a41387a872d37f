//! Random generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use ncode_core::geometry::polytope::{ConvexSet, HPolytope, Realization, Topology};
use ncode_core::geometry::rational::{frac, int, Point, Rational};
use ncode_core::{Code, Codeword, SimplicialComplex};
use rand::Rng;

pub fn code(n: usize, words: &[&[usize]]) -> Code {
    Code::from_words(n, words.iter().copied()).unwrap()
}

pub fn random_code<R: Rng>(rng: &mut R, n: usize, words: usize) -> Code {
    let ws: Vec<Codeword> = (0..words).map(|_| Codeword::from_bits(rng.gen_range(0..1u64 << n))).collect();
    Code::from_codewords(n, ws).unwrap()
}

pub fn random_ic_code<R: Rng>(rng: &mut R, n: usize) -> Code {
    let words = rng.gen_range(1..=n + 2);
    random_code(rng, n, words).intersection_completion()
}

/// A random complex strictly smaller than the full simplex, with at least
/// `min_facets` facets when possible.
pub fn random_proper_complex<R: Rng>(rng: &mut R, n: usize, min_facets: usize) -> SimplicialComplex {
    loop {
        let count = rng.gen_range(1..=n + 2);
        let gens: Vec<Codeword> = (0..count).map(|_| Codeword::from_bits(rng.gen_range(1..1u64 << n))).collect();
        let d = SimplicialComplex::from_facets(n, gens).unwrap();
        if !d.is_full_simplex() && d.facets().len() >= min_facets {
            return d;
        }
    }
}

/// Brute-force IC test over all pairs.
pub fn is_ic_oracle(c: &Code) -> bool {
    let words: Vec<u64> = c.iter().map(Codeword::bits).collect();
    let set: BTreeSet<u64> = words.iter().copied().collect();
    words.iter().all(|a| words.iter().all(|b| set.contains(&(a & b))))
}

/// Number of maximal words of `d` in the largest family whose union lies
/// under a codeword of `c`, by enumerating all families.
pub fn compute_k_oracle(c: &Code, d: &Code) -> usize {
    let words: Vec<u64> = d.iter().map(Codeword::bits).collect();
    let maximal: Vec<u64> = words
        .iter()
        .copied()
        .filter(|&w| !words.iter().any(|&o| o != w && o & w == w))
        .collect();
    let faces: Vec<u64> = c.iter().map(Codeword::bits).collect();
    let mut best = 0;
    for mask in 0u32..1 << maximal.len() {
        let union = (0..maximal.len()).filter(|i| mask >> i & 1 == 1).fold(0u64, |u, i| u | maximal[i]);
        if faces.iter().any(|&f| union & f == union) {
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}

/// An interval with rational endpoints, open or closed at both ends.
#[derive(Clone, Debug)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
    pub open: bool,
}

impl Interval {
    pub fn contains(&self, x: &Rational) -> bool {
        if self.open {
            self.lo < *x && *x < self.hi
        } else {
            self.lo <= *x && *x <= self.hi
        }
    }
}

pub fn random_interval<R: Rng>(rng: &mut R, open: bool, range: i64) -> Interval {
    let a = rng.gen_range(0..range);
    let b = loop {
        let b = rng.gen_range(0..range);
        if b != a || !open {
            break b;
        }
    };
    let (lo, hi) = (a.min(b), a.max(b));
    Interval { lo: frac(lo, 2), hi: frac(hi, 2), open }
}

fn interval_rows(iv: &Interval, axis: usize, dim: usize) -> Vec<(Point, Rational)> {
    let mut up = vec![int(0); dim];
    up[axis] = int(1);
    let mut down = vec![int(0); dim];
    down[axis] = int(-1);
    vec![(up, iv.hi.clone()), (down, -iv.lo.clone())]
}

/// Axis-parallel boxes (products of intervals) as H-polytopes.
pub fn boxes_realization(boxes: &[Vec<Interval>], open: bool) -> Realization {
    let dim = boxes[0].len();
    let sets = boxes
        .iter()
        .map(|b| {
            let rows = b.iter().enumerate().flat_map(|(axis, iv)| interval_rows(iv, axis, dim)).collect();
            ConvexSet::H(HPolytope::from_rows(dim, open, rows).unwrap())
        })
        .collect();
    Realization::new(dim, if open { Topology::Open } else { Topology::Closed }, sets).unwrap()
}

pub fn random_boxes<R: Rng>(rng: &mut R, n: usize, dim: usize, open: bool, range: i64) -> Vec<Vec<Interval>> {
    (0..n).map(|_| (0..dim).map(|_| random_interval(rng, open, range)).collect()).collect()
}

/// Sample coordinates that meet every cell of a line cut at the endpoints:
/// the endpoints themselves, midpoints between them, and one point beyond
/// each end.
fn sweep_coordinates(ivs: &[&Interval]) -> Vec<Rational> {
    let mut cuts: Vec<Rational> = ivs.iter().flat_map(|iv| [iv.lo.clone(), iv.hi.clone()]).collect();
    cuts.sort();
    cuts.dedup();
    let mut xs = cuts.clone();
    for w in cuts.windows(2) {
        xs.push((&w[0] + &w[1]) / int(2));
    }
    if let (Some(first), Some(last)) = (cuts.first(), cuts.last()) {
        xs.push(first - int(1));
        xs.push(last + int(1));
    } else {
        xs.push(int(0));
    }
    xs
}

/// The code of a family of intervals by sweeping the line.
pub fn interval_sweep_code(ivs: &[Interval]) -> Code {
    let refs: Vec<&Interval> = ivs.iter().collect();
    let words = sweep_coordinates(&refs).into_iter().map(|x| {
        ivs.iter()
            .enumerate()
            .filter(|(_, iv)| iv.contains(&x))
            .fold(Codeword::EMPTY, |w, (i, _)| w.with(i + 1))
    });
    Code::from_codewords(ivs.len(), words).unwrap()
}

/// The code of a family of boxes in the plane from the product of the two
/// axis sweeps.
pub fn box_sweep_code(boxes: &[Vec<Interval>]) -> Code {
    let xs = sweep_coordinates(&boxes.iter().map(|b| &b[0]).collect::<Vec<_>>());
    let ys = sweep_coordinates(&boxes.iter().map(|b| &b[1]).collect::<Vec<_>>());
    let mut words = BTreeSet::new();
    for x in &xs {
        for y in &ys {
            let w = boxes
                .iter()
                .enumerate()
                .filter(|(_, b)| b[0].contains(x) && b[1].contains(y))
                .fold(Codeword::EMPTY, |w, (i, _)| w.with(i + 1));
            words.insert(w);
        }
    }
    Code::from_codewords(boxes.len(), words).unwrap()
}

/// Whether `x` is a convex combination of `points`, checked by exhaustive
/// search over supports of size at most `dim + 1` (Carathéodory) and solving
/// the affine system on each.
pub fn in_hull_oracle(x: &[Rational], points: &[Point]) -> bool {
    use ncode_core::geometry::linalg::solve;
    let dim = x.len();
    let k_max = (dim + 1).min(points.len());
    let n = points.len();
    for mask in 1u32..1 << n {
        let support: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if support.len() > k_max {
            continue;
        }
        // Rows: coordinates, then the weights summing to one.
        let mut a: Vec<Point> = (0..dim).map(|r| support.iter().map(|&i| points[i][r].clone()).collect()).collect();
        a.push(vec![int(1); support.len()]);
        let mut b: Point = x.to_vec();
        b.push(int(1));
        if let Some(w) = solve(&a, &b) {
            if w.iter().all(|t| *t >= int(0)) {
                return true;
            }
        }
    }
    false
}
