//! Polar duals and Schlegel diagrams.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::linalg::solve;
use crate::geometry::rational::{add, centroid, dot, frac, scale, sub, Point, Rational};

/// The coarsest dyadic rounding of `target` (coordinates multiples of
/// `2^-k`, smallest `k`) accepted by `ok`; `target` itself if none is.
pub fn snap(target: &Point, ok: impl Fn(&Point) -> bool) -> Point {
    for k in 0..=32u32 {
        let scale = Rational::from_integer(BigInt::one() << k);
        let cand: Point = target.iter().map(|x| (x * &scale).round() / &scale).collect();
        if ok(&cand) {
            return cand;
        }
    }
    target.clone()
}

/// Translates the points so that a simple point near their centroid, still
/// strictly inside every given facet, becomes the origin. Facets are
/// 0-indexed vertex lists.
pub fn center(points: &[Point], facets: &[Vec<usize>]) -> (Vec<Point>, Point) {
    let g = centroid(points);
    let c = snap(&g, |c| {
        let moved: Vec<Point> = points.iter().map(|p| sub(p, c)).collect();
        polar_dual(&moved, facets).is_ok()
    });
    (points.iter().map(|p| sub(p, &c)).collect(), c)
}

/// One dual vertex per facet: the `a` with `a·v = 1` for each vertex `v` of
/// the facet (0-indexed vertex lists). The origin must be strictly interior.
pub fn polar_dual(vertices: &[Point], facets: &[Vec<usize>]) -> Result<Vec<Point>> {
    let mut out = Vec::with_capacity(facets.len());
    for f in facets {
        let rows: Vec<Point> = f.iter().map(|&i| vertices[i].clone()).collect();
        let rhs = vec![Rational::one(); rows.len()];
        let a = solve(&rows, &rhs)
            .ok_or_else(|| Error::Internal(format!("facet {f:?} does not span a hyperplane")))?;
        for (i, v) in vertices.iter().enumerate() {
            let val = dot(&a, v);
            let on = f.contains(&i);
            if (on && val != Rational::one()) || (!on && val >= Rational::one()) {
                return Err(Error::precondition(
                    "the origin is not strictly inside the polytope, or the facet list is wrong",
                ));
            }
        }
        out.push(a);
    }
    Ok(out)
}

/// A Schlegel diagram: every vertex mapped into the affine hull of the base
/// facet, written in coordinates of `R^{D-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schlegel {
    pub viewpoint: Point,
    pub points: Vec<Point>,
    pub on_base: Vec<bool>,
    /// Coordinate dropped to identify the base hyperplane with `R^{D-1}`.
    pub dropped: usize,
}

/// Projects the vertices of a full-dimensional polytope `{x | a_j·x ≤ b_j}`
/// from a point just beyond facet `base` onto that facet's hyperplane.
pub fn schlegel(vertices: &[Point], facets: &[(Point, Rational)], base: usize) -> Result<Schlegel> {
    let (a0, b0) = &facets[base];
    let on_base: Vec<bool> = vertices.iter().map(|v| dot(a0, v) == *b0).collect();
    let base_pts: Vec<Point> = vertices.iter().zip(&on_base).filter(|(_, &on)| on).map(|(v, _)| v.clone()).collect();
    if base_pts.is_empty() {
        return Err(Error::precondition("base facet has no vertices"));
    }
    let g = centroid(&base_pts);
    let mut lambda = Rational::one();
    let valid = |y: &Point| {
        dot(a0, y) > *b0
            && facets
                .iter()
                .enumerate()
                .all(|(j, (a, b))| j == base || dot(a, y) < *b)
    };
    let viewpoint = loop {
        let y = add(&g, &scale(a0, &lambda));
        if valid(&y) {
            break snap(&y, valid);
        }
        lambda *= frac(1, 2);
        if lambda < frac(1, 1 << 40) {
            return Err(Error::Internal("no viewpoint beyond the base facet".into()));
        }
    };
    let dropped = a0
        .iter()
        .position(|x| !x.is_zero())
        .ok_or_else(|| Error::precondition("base facet normal is zero"))?;
    let ay = dot(a0, &viewpoint);
    let points = vertices
        .iter()
        .zip(&on_base)
        .map(|(v, &on)| {
            let p = if on {
                v.clone()
            } else {
                let s = (&ay - b0) / (&ay - dot(a0, v));
                add(&viewpoint, &scale(&sub(v, &viewpoint), &s))
            };
            p.into_iter()
                .enumerate()
                .filter(|(k, _)| *k != dropped)
                .map(|(_, x)| x)
                .collect()
        })
        .collect();
    Ok(Schlegel { viewpoint, points, on_base, dropped })
}
