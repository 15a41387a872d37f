//! Exact dense linear algebra over the rationals.

use num_traits::{One, Zero};

use super::rational::{Point, Rational};

pub type Matrix = Vec<Vec<Rational>>;

/// Reduces `m` in place to reduced row echelon form and returns the pivot
/// columns in order.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Point]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// A basis of `{v : rows · v = 0}` in `ncols` unknowns.
pub fn null_space(rows: &[Point], ncols: usize) -> Vec<Point> {
    let mut m: Matrix = rows.to_vec();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// The unique solution of `a·x = b`, or `None` if there is none or many.
/// Extra rows are fine as long as the system is consistent.
pub fn solve(a: &[Point], b: &[Rational]) -> Option<Point> {
    let n = a.first()?.len();
    let mut m: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(m.into_iter().take(n).map(|mut r| r.pop().unwrap()).collect())
}

/// Indices of a maximal linearly independent subset of `rows`, greedily in order.
pub fn independent_rows(rows: &[Point]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Matrix = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        basis.push(r.clone());
        if rank(&basis) == basis.len() {
            chosen.push(i);
        } else {
            basis.pop();
        }
    }
    chosen
}

pub fn transpose(m: &[Point]) -> Matrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|c| m.iter().map(|r| r[c].clone()).collect()).collect()
}
