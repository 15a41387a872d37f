//! Convex hulls: membership, facet enumeration, and intersection tests.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::linalg::{independent_rows, null_space, rank, solve, transpose};
use super::lp::{find_point, LinearProgram, LpOutcome, Relation};
use super::polytope::{ConvexSet, HPolytope, Halfspace, VPolytope};
use super::rational::{dot, sub, Point, Rational};
use crate::error::{Error, Result};

/// Largest ambient dimension accepted by [`vrep_to_hrep`].
pub const MAX_HULL_DIM: usize = 4;
/// Cap on candidate facet subsets examined by [`vrep_to_hrep`].
pub const MAX_FACET_CANDIDATES: usize = 2_000_000;

/// Whether `p` is a convex combination of the points of `v`.
pub fn point_in_vpolytope(p: &[Rational], v: &VPolytope) -> bool {
    if v.points().iter().any(|q| q.as_slice() == p) {
        return true;
    }
    in_hull(p, v.points())
}

fn in_hull(p: &[Rational], points: &[Point]) -> bool {
    if points.is_empty() {
        return false;
    }
    let k = points.len();
    let mut lp = LinearProgram::new(k);
    for (t, target) in p.iter().enumerate() {
        lp.add(points.iter().map(|q| q[t].clone()).collect(), Relation::Eq, target.clone());
    }
    lp.add(vec![Rational::one(); k], Relation::Eq, Rational::one());
    lp.solve() != LpOutcome::Infeasible
}

/// Points of `points` that are not in the hull of the others (deduplicated).
pub fn extreme_points(points: &[Point]) -> Vec<Point> {
    let mut uniq: Vec<Point> = Vec::new();
    for p in points {
        if !uniq.contains(p) {
            uniq.push(p.clone());
        }
    }
    if uniq.len() <= 2 {
        return uniq;
    }
    let mut keep = Vec::new();
    for i in 0..uniq.len() {
        let others: Vec<Point> = uniq
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q.clone())
            .collect();
        if !in_hull(&uniq[i], &others) {
            keep.push(uniq[i].clone());
        }
    }
    keep
}

fn n_choose_k(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// Scales a halfspace so that its first nonzero normal entry has magnitude 1.
/// Scales `a·x ≤ b` by a positive factor so that all coefficients are
/// coprime integers. Equal halfspaces get equal keys.
pub(crate) fn normalize(a: &[Rational], b: &Rational) -> (Vec<Rational>, Rational) {
    let mut den = BigInt::one();
    for x in a.iter().chain(std::iter::once(b)) {
        den = den.lcm(x.denom());
    }
    let ints: Vec<BigInt> = a.iter().chain(std::iter::once(b)).map(|x| x.numer() * (&den / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let g = if g.is_zero() { BigInt::one() } else { g };
    let mut out: Vec<Rational> = ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect();
    let b = out.pop().expect("b present");
    (out, b)
}

/// Facets of a full-dimensional point set in `R^r`, as `(c, e)` with `c·y ≤ e`.
pub(crate) fn full_dim_facets(ys: &[Point], r: usize) -> Result<Vec<(Point, Rational)>> {
    if r == 1 {
        let min = ys.iter().map(|y| &y[0]).min().unwrap().clone();
        let max = ys.iter().map(|y| &y[0]).max().unwrap().clone();
        return Ok(vec![(vec![Rational::one()], max), (vec![-Rational::one()], -min)]);
    }
    let candidates = n_choose_k(ys.len(), r);
    if candidates > MAX_FACET_CANDIDATES {
        return Err(Error::cap("candidate facet subsets", candidates, MAX_FACET_CANDIDATES));
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        let base = &ys[idx[0]];
        let diffs: Vec<Point> = idx[1..].iter().map(|&i| sub(&ys[i], base)).collect();
        if rank(&diffs) == r - 1 {
            let c = null_space(&diffs, r).pop().expect("corank one");
            let e = dot(&c, base);
            let vals: Vec<Rational> = ys.iter().map(|y| dot(&c, y)).collect();
            let below = vals.iter().all(|v| *v <= e);
            let above = vals.iter().all(|v| *v >= e);
            let oriented = if below {
                Some((c, e))
            } else if above {
                Some((c.iter().map(|x| -x).collect(), -e))
            } else {
                None
            };
            if let Some((c, e)) = oriented {
                let key = normalize(&c, &e);
                if seen.insert(key.clone()) {
                    out.push(key);
                }
            }
        }
        // Next r-subset in lexicographic order.
        let mut i = r;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if idx[i] < ys.len() - r + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Exact H-representation of a V-polytope (closed). Lower-dimensional hulls
/// get their affine hull as paired opposite inequalities.
pub fn vrep_to_hrep(v: &VPolytope) -> Result<HPolytope> {
    let d = v.dim();
    if d > MAX_HULL_DIM {
        return Err(Error::cap(
            "ambient dimension for hull conversion (use witness checks instead)",
            d,
            MAX_HULL_DIM,
        ));
    }
    let pts = extreme_points(v.points());
    let p0 = pts[0].clone();
    let dirs: Vec<Point> = pts[1..].iter().map(|p| sub(p, &p0)).collect();
    let mut halfspaces = Vec::new();
    let mut push = |a: Vec<Rational>, b: Rational| -> Result<()> {
        halfspaces.push(Halfspace::new(a, b, false)?);
        Ok(())
    };
    for nrm in null_space(&dirs, d) {
        let (nrm, b) = normalize(&nrm, &dot(&nrm, &p0));
        push(nrm.iter().map(|x| -x).collect(), -b.clone())?;
        push(nrm, b)?;
    }
    let basis_idx = independent_rows(&dirs);
    let r = basis_idx.len();
    if r > 0 {
        let basis: Vec<Point> = basis_idx.iter().map(|&i| dirs[i].clone()).collect();
        // Coordinates on the affine hull read off r independent axes.
        let bt = transpose(&basis);
        let axes = independent_rows(&bt);
        let s: Vec<Point> = axes.iter().map(|&t| bt[t].clone()).collect();
        let st = transpose(&s);
        let coords = |x: &Point| -> Point {
            let z: Point = axes.iter().map(|&t| &x[t] - &p0[t]).collect();
            solve(&s, &z).expect("axes are independent")
        };
        let ys: Vec<Point> = pts.iter().map(coords).collect();
        for (c, e) in full_dim_facets(&ys, r)? {
            let w = solve(&st, &c).expect("axes are independent");
            let mut a = vec![Rational::zero(); d];
            let mut b = e;
            for (wt, &t) in w.iter().zip(&axes) {
                a[t] = wt.clone();
                b += wt * &p0[t];
            }
            let (a, b) = normalize(&a, &b);
            push(a, b)?;
        }
    }
    HPolytope::new(d, false, halfspaces)
}

/// Whether `conv(points)` meets `target`.
pub fn hull_meets(points: &[Point], target: &ConvexSet) -> Result<bool> {
    if points.is_empty() {
        return Ok(false);
    }
    let d = points[0].len();
    if let Some(td) = target.dim() {
        if td != d {
            return Err(Error::DimensionMismatch { expected: td, found: d });
        }
    }
    for p in points {
        if p.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: p.len() });
        }
    }
    let k = points.len();
    match target {
        ConvexSet::Empty => Ok(false),
        ConvexSet::H(h) => {
            // Variables λ_1..λ_k, with x = Σ λ_i p_i substituted into each row.
            let mut rows: Vec<(Vec<Rational>, Rational, bool)> = Vec::new();
            for i in 0..k {
                let mut a = vec![Rational::zero(); k];
                a[i] = -Rational::one();
                rows.push((a, Rational::zero(), false));
            }
            rows.push((vec![Rational::one(); k], Rational::one(), false));
            rows.push((vec![-Rational::one(); k], -Rational::one(), false));
            for hs in h.halfspaces() {
                let a: Vec<Rational> = points.iter().map(|p| dot(&hs.a, p)).collect();
                rows.push((a, hs.b.clone(), hs.strict));
            }
            Ok(find_point(k, rows.iter().map(|(a, b, s)| (a.as_slice(), b, *s))).is_some())
        }
        ConvexSet::V(v) => {
            let q = v.points();
            let mut lp = LinearProgram::new(k + q.len());
            for t in 0..d {
                let mut a: Vec<Rational> = points.iter().map(|p| p[t].clone()).collect();
                a.extend(q.iter().map(|p| -&p[t]));
                lp.add(a, Relation::Eq, Rational::zero());
            }
            let mut a = vec![Rational::one(); k];
            a.extend(vec![Rational::zero(); q.len()]);
            lp.add(a, Relation::Eq, Rational::one());
            let mut a = vec![Rational::zero(); k];
            a.extend(vec![Rational::one(); q.len()]);
            lp.add(a, Relation::Eq, Rational::one());
            Ok(lp.solve() != LpOutcome::Infeasible)
        }
    }
}
