//! Flexible sunflowers: explicit constructions, random trials of the
//! "hull of petal points meets the center" property, and Tverberg partitions.

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::code::{Code, Codeword};
use crate::error::{Error, Result};
use crate::geometry::arrangement::{code_with_witnesses, CodeOptions};
use crate::geometry::hull::hull_meets;
use crate::geometry::linalg::{solve, transpose};
use crate::geometry::lp::{LinearProgram, LpOutcome, Relation};
use crate::geometry::polytope::{ConvexSet, HPolytope, Halfspace, Realization, Topology};
use crate::geometry::rational::{dot, frac, int, one, Point, Rational};

/// Smallest `k` for which the code is that of a `k`-flexible sunflower:
/// `[n]` is a codeword and every other codeword has weight at most `k`.
pub fn is_k_flexible(c: &Code) -> Option<usize> {
    let top = c.full_word();
    if !c.contains(top) {
        return None;
    }
    Some(c.iter().filter(|&w| w != top).map(Codeword::weight).max().unwrap_or(0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certification {
    /// The petal code was enumerated and checked.
    CodeChecked,
    /// Too large to enumerate; flexibility follows from the construction.
    ByConstruction,
}

/// Open petals in `R^d` meant to form a `k`-flexible sunflower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SunflowerSpec {
    pub d: usize,
    pub k: usize,
    pub petals: Vec<HPolytope>,
    pub certification: Certification,
}

impl SunflowerSpec {
    pub fn n(&self) -> usize {
        self.petals.len()
    }

    /// The intersection of all petals.
    pub fn center(&self) -> HPolytope {
        self.petals
            .iter()
            .skip(1)
            .fold(self.petals[0].clone(), |acc, p| acc.intersect(p).expect("petals share dimension and topology"))
    }

    pub fn realization(&self) -> Result<Realization> {
        Realization::new(self.d, Topology::Open, self.petals.iter().cloned().map(ConvexSet::H).collect())
    }

    pub fn code(&self) -> Result<Code> {
        Ok(code_with_witnesses(&self.realization()?, CodeOptions::default())?.code)
    }

    /// Checks `k`-flexibility by enumerating the code; leaves the spec
    /// marked as certified by construction if the enumeration would exceed a cap.
    pub fn certify(&mut self) -> Result<()> {
        match self.code() {
            Ok(code) => match is_k_flexible(&code) {
                Some(k) if k <= self.k => {
                    self.certification = Certification::CodeChecked;
                    Ok(())
                }
                _ => Err(Error::Internal(format!("petals are not {}-flexible: code {code}", self.k))),
            },
            Err(e) if e.is_cap() => {
                self.certification = Certification::ByConstruction;
                Ok(())
            }
            Err(e) => Err(e),
        }
    }
}

/// The open cube `(-1/2, 1/2)^d` swept along `[0, v]`, where `v` has at most
/// two nonzero coordinates `i` (the main direction) and `s`.
fn swept_cube(d: usize, i: usize, s: usize, vi: &Rational, vs: &Rational) -> HPolytope {
    let half = frac(1, 2);
    let zero = int(0);
    let axis = |l: usize, sign: i64| -> Point {
        let mut a = vec![int(0); d];
        a[l] = int(sign);
        a
    };
    let mut rows = Vec::new();
    for l in 0..d {
        let (lo, hi) = if l == i {
            (vi.clone().min(zero.clone()), vi.clone().max(zero.clone()))
        } else if l == s {
            (vs.clone().min(zero.clone()), vs.clone().max(zero.clone()))
        } else {
            (zero.clone(), zero.clone())
        };
        rows.push((axis(l, 1), hi + &half));
        rows.push((axis(l, -1), half.clone() - lo));
    }
    if *vs != zero && s != i {
        // Sides parallel to v in the (i, s) plane: n = (-vs, vi) and -n.
        let mut n = vec![int(0); d];
        n[i] = -vs.clone();
        n[s] = vi.clone();
        let reach = (vs.abs() + vi.abs()) * &half;
        rows.push((n.clone(), reach.clone()));
        rows.push((n.iter().map(|x| -x).collect(), reach));
    }
    HPolytope::from_rows(d, true, rows).expect("nonzero normals")
}

pub const DEFAULT_PETAL_LENGTH: i64 = 10;

/// A `k`-flexible sunflower with `dk` petals in `R^d` and one point per petal
/// whose hull misses the center. Petals sweep the unit cube along `M·e_i`;
/// with `skew`, copy `j` of petal `i` sweeps along `M(e_i - jδ e_{i+1})`
/// instead, `δ = 1/(4k)`, so the copies fan out.
pub fn build_counterexample(d: usize, k: usize, skew: bool) -> Result<(SunflowerSpec, Vec<Point>)> {
    build_counterexample_with(d, k, skew, &int(DEFAULT_PETAL_LENGTH), &frac(1, 4 * k.max(1) as i64))
}

pub fn build_counterexample_with(
    d: usize,
    k: usize,
    skew: bool,
    length: &Rational,
    delta: &Rational,
) -> Result<(SunflowerSpec, Vec<Point>)> {
    if d < 2 {
        return Err(Error::precondition("in dimension 1 every flexible sunflower has the hull property; need d >= 2"));
    }
    if k == 0 {
        return Err(Error::precondition("k must be at least 1"));
    }
    if d * k > crate::code::MAX_NEURONS {
        return Err(Error::cap("petals", d * k, crate::code::MAX_NEURONS));
    }
    let mut petals = Vec::new();
    let mut points = Vec::new();
    for i in 0..d {
        let s = (i + 1) % d;
        for j in 0..k {
            let tilt = if skew { -(length * delta * int(j as i64)) } else { int(0) };
            petals.push(swept_cube(d, i, s, length, &tilt));
            let mut p = vec![int(0); d];
            p[i] = length.clone();
            p[s] = tilt;
            points.push(p);
        }
    }
    let mut spec = SunflowerSpec { d, k, petals, certification: Certification::ByConstruction };
    spec.certify()?;
    for (p, petal) in points.iter().zip(&spec.petals) {
        debug_assert!(petal.contains(p));
    }
    if hull_meets(&points, &ConvexSet::H(spec.center()))? {
        return Err(Error::precondition("petals are too short: the sampled hull reaches the center"));
    }
    Ok((spec, points))
}

/// Number of weight-`k` codewords of the petal code other than `[n]`.
pub fn weight_k_census(spec: &SunflowerSpec) -> Result<usize> {
    let code = spec.code()?;
    let top = code.full_word();
    Ok(code.iter().filter(|&w| w != top && w.weight() == spec.k).count())
}

fn random_rational<R: Rng>(rng: &mut R, bound: i64, max_den: i64) -> Rational {
    let q = rng.gen_range(1..=max_den);
    frac(rng.gen_range(-bound * q..=bound * q), q)
}

/// Applies `x ↦ A x + t` to an open polytope.
fn map_polytope(p: &HPolytope, a: &[Point], t: &Point) -> HPolytope {
    let at = transpose(a);
    let hs = p
        .halfspaces()
        .iter()
        .map(|h| {
            // a·x < b with x = A^{-1}(y - t) becomes (A^{-T} a)·y < b + (A^{-T} a)·t.
            let na = solve(&at, &h.a).expect("invertible map");
            let nb = &h.b + dot(&na, t);
            Halfspace { a: na, b: nb, strict: true }
        })
        .collect();
    HPolytope::new(p.dim(), true, hs).expect("an invertible map keeps normals nonzero")
}

fn map_point(p: &Point, a: &[Point], t: &Point) -> Point {
    a.iter().zip(t).map(|(row, ti)| dot(row, p) + ti).collect()
}

/// A random `k`-flexible sunflower with `n` petals and one point per petal.
///
/// Petals sweep the unit cube along `±e_i`, assigned round-robin to the `2d`
/// directions with random lengths in `5..=20`, so only petals sharing a
/// direction meet outside the cube; this needs `n <= 2dk`. The whole picture
/// is then moved by a random invertible rational affine map. Points are drawn
/// on the grid of eighths inside each petal before mapping.
pub fn random_sunflower(d: usize, k: usize, n: usize, seed: u64) -> Result<(SunflowerSpec, Vec<Point>)> {
    let sample = Sample::draw(d, k, n, seed)?;
    Ok(sample.mapped())
}

/// A random sunflower before and after its affine map.
struct Sample {
    base: SunflowerSpec,
    points: Vec<Point>,
    a: Vec<Point>,
    t: Point,
}

impl Sample {
    fn draw(d: usize, k: usize, n: usize, seed: u64) -> Result<Self> {
        if d == 0 || k == 0 || n == 0 {
            return Err(Error::precondition("d, k and n must be positive"));
        }
        if n > 2 * d * k {
            return Err(Error::precondition(format!(
                "{n} petals cannot share {} directions at most {k} per direction",
                2 * d
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut petals = Vec::with_capacity(n);
        let mut points = Vec::with_capacity(n);
        for idx in 0..n {
            let axis = idx % d;
            let sign = if (idx / d) % 2 == 0 { 1 } else { -1 };
            let reach: i64 = rng.gen_range(5..=20);
            petals.push(swept_cube(d, axis, axis, &int(reach * sign), &int(0)));
            // Grid points strictly inside: coordinates in eighths.
            let p: Point = (0..d)
                .map(|l| {
                    if l == axis {
                        frac(rng.gen_range(-3..=reach * 8 + 3) * sign, 8)
                    } else {
                        frac(rng.gen_range(-3..=3), 8)
                    }
                })
                .collect();
            points.push(p);
        }
        let (a, t) = loop {
            let a: Vec<Point> = (0..d).map(|_| (0..d).map(|_| random_rational(&mut rng, 3, 4)).collect()).collect();
            if crate::geometry::linalg::rank(&a) == d {
                let t: Point = (0..d).map(|_| random_rational(&mut rng, 3, 4)).collect();
                break (a, t);
            }
        };
        let base = SunflowerSpec { d, k, petals, certification: Certification::ByConstruction };
        Ok(Sample { base, points, a, t })
    }

    fn mapped(&self) -> (SunflowerSpec, Vec<Point>) {
        let petals = self.base.petals.iter().map(|p| map_polytope(p, &self.a, &self.t)).collect();
        let points = self.points.iter().map(|p| map_point(p, &self.a, &self.t)).collect();
        (SunflowerSpec { petals, ..self.base.clone() }, points)
    }
}

/// One random trial: whether the hull of the sampled petal points meets the
/// center. With `verify`, the petal code is enumerated first, on the
/// arrangement before the affine map (a bijection, so the code is the same).
pub fn flexible_trial(d: usize, k: usize, n: usize, seed: u64, verify: bool) -> Result<bool> {
    let mut sample = Sample::draw(d, k, n, seed)?;
    if verify {
        sample.base.certify()?;
    }
    let (spec, points) = sample.mapped();
    for (p, petal) in points.iter().zip(&spec.petals) {
        if !petal.contains(p) {
            return Err(Error::Internal("sampled point left its petal".into()));
        }
    }
    hull_meets(&points, &ConvexSet::H(spec.center()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialSummary {
    pub trials: usize,
    pub hits: usize,
    /// Seeds whose hull missed the center.
    pub misses: Vec<u64>,
}

/// Runs trials with seeds `seed, seed+1, …` on the rayon pool.
pub fn run_trials(d: usize, k: usize, n: usize, trials: usize, seed: u64, verify: bool) -> Result<TrialSummary> {
    let results: Vec<(u64, bool)> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let s = seed.wrapping_add(t);
            flexible_trial(d, k, n, s, verify).map(|hit| (s, hit))
        })
        .collect::<Result<_>>()?;
    let misses: Vec<u64> = results.iter().filter(|r| !r.1).map(|r| r.0).collect();
    Ok(TrialSummary { trials, hits: trials - misses.len(), misses })
}

pub const MAX_TVERBERG_POINTS: usize = 12;

/// `(d+1)(r-1)+1`, the number of points that always admits a partition.
pub fn tverberg_number(d: usize, r: usize) -> usize {
    (d + 1) * (r.max(1) - 1) + 1
}

/// A point common to the hulls of the parts, if any.
fn parts_meet(points: &[Point], parts: &[Vec<usize>], d: usize) -> Option<Point> {
    // Variables: x (free), then one weight per point.
    let nv = d + points.len();
    let mut lp = LinearProgram::new(nv);
    for j in 0..d {
        lp.set_free(j);
    }
    for part in parts {
        let mut sum = vec![int(0); nv];
        for &p in part {
            sum[d + p] = one();
        }
        lp.add(sum, Relation::Eq, one());
        for coord in 0..d {
            let mut row = vec![int(0); nv];
            row[coord] = -one();
            for &p in part {
                row[d + p] = points[p][coord].clone();
            }
            lp.add(row, Relation::Eq, int(0));
        }
    }
    match lp.solve() {
        LpOutcome::Optimal { mut x, .. } => {
            x.truncate(d);
            Some(x)
        }
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TverbergPartition {
    /// Indices into the input, each part increasing.
    pub parts: Vec<Vec<usize>>,
    /// A point in the hull of every part.
    pub point: Point,
}

/// A partition of the points into `r` parts whose hulls share a point, found
/// by trying every partition; `None` if there is none.
pub fn tverberg_partition(points: &[Point], r: usize) -> Result<Option<TverbergPartition>> {
    if points.len() > MAX_TVERBERG_POINTS {
        return Err(Error::cap("points for partition search", points.len(), MAX_TVERBERG_POINTS));
    }
    if r == 0 {
        return Err(Error::precondition("need at least one part"));
    }
    let Some(d) = points.first().map(Vec::len) else {
        return Ok(None);
    };
    if points.iter().any(|p| p.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: points.iter().map(Vec::len).find(|&l| l != d).unwrap() });
    }
    if r > points.len() {
        return Ok(None);
    }
    // Restricted growth strings: label[i] <= 1 + max(label[..i]).
    let n = points.len();
    let mut label = vec![0usize; n];
    loop {
        let used = label.iter().max().map_or(0, |m| m + 1);
        if used == r {
            let mut parts = vec![Vec::new(); r];
            for (i, &l) in label.iter().enumerate() {
                parts[l].push(i);
            }
            if let Some(point) = parts_meet(points, &parts, d) {
                return Ok(Some(TverbergPartition { parts, point }));
            }
        }
        // Next string in lexicographic order, capped at r labels.
        let mut i = n;
        loop {
            if i <= 1 {
                return Ok(None);
            }
            i -= 1;
            let prefix_max = label[..i].iter().max().copied().unwrap_or(0);
            if label[i] <= prefix_max && label[i] + 1 < r {
                label[i] += 1;
                for l in &mut label[i + 1..] {
                    *l = 0;
                }
                break;
            }
        }
    }
}
