//! Cyclic polytopes: points on the moment curve and their facets.

use crate::error::{Error, Result};
use crate::geometry::rational::{int, Point};

pub const MAX_CYCLIC_DIM: usize = 8;
pub const MAX_CYCLIC_VERTICES: usize = 12;

/// `(t, t², …, t^D)` for `t = 1..=N`.
pub fn moment_curve(dim: usize, count: usize) -> Vec<Point> {
    (1..=count as i64)
        .map(|t| (1..=dim as u32).map(|k| int(t.pow(k))).collect())
        .collect()
}

/// Whether `s` (sorted, 1-indexed) passes Gale's evenness condition in `[count]`:
/// between any two non-members lies an even number of members.
fn gale_even(s: &[usize], count: usize) -> bool {
    let inside = |t: usize| s.binary_search(&t).is_ok();
    let outside: Vec<usize> = (1..=count).filter(|&t| !inside(t)).collect();
    outside
        .windows(2)
        .all(|w| s.iter().filter(|&&x| w[0] < x && x < w[1]).count() % 2 == 0)
}

/// Facets of the cyclic polytope with `count` vertices in `R^dim`, as sorted
/// 1-indexed vertex sets.
pub fn cyclic_facets(dim: usize, count: usize) -> Result<Vec<Vec<usize>>> {
    if !(2..=MAX_CYCLIC_DIM).contains(&dim) {
        return Err(Error::precondition(format!(
            "cyclic polytope dimension must be in 2..={MAX_CYCLIC_DIM}, got {dim}"
        )));
    }
    if count > MAX_CYCLIC_VERTICES {
        return Err(Error::cap("cyclic polytope vertices", count, MAX_CYCLIC_VERTICES));
    }
    if count < dim + 1 {
        return Err(Error::precondition(format!(
            "a cyclic polytope in R^{dim} needs at least {} vertices",
            dim + 1
        )));
    }
    let mut out = Vec::new();
    let mut s: Vec<usize> = (1..=dim).collect();
    loop {
        if gale_even(&s, count) {
            out.push(s.clone());
        }
        let mut i = dim;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if s[i] < count - dim + i + 1 {
                break;
            }
        }
        s[i] += 1;
        for j in i + 1..dim {
            s[j] = s[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::hull::full_dim_facets;
    use crate::geometry::rational::dot;
    use std::collections::BTreeSet;

    fn brute_force(dim: usize, count: usize) -> BTreeSet<Vec<usize>> {
        let pts = moment_curve(dim, count);
        full_dim_facets(&pts, dim)
            .unwrap()
            .into_iter()
            .map(|(c, e)| (0..count).filter(|&t| dot(&c, &pts[t]) == e).map(|t| t + 1).collect())
            .collect()
    }

    #[test]
    fn small_examples() {
        let sq: BTreeSet<_> = cyclic_facets(2, 4).unwrap().into_iter().collect();
        assert_eq!(sq, [vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]].into_iter().collect());
        let c35: BTreeSet<_> = cyclic_facets(3, 5).unwrap().into_iter().collect();
        let expect: BTreeSet<Vec<usize>> =
            [[1, 2, 3], [1, 2, 5], [1, 4, 5], [1, 3, 4], [3, 4, 5], [2, 3, 5]].iter().map(|s| s.to_vec()).collect();
        assert_eq!(c35, expect);
        assert_eq!(cyclic_facets(4, 5).unwrap().len(), 5);
    }

    #[test]
    fn matches_brute_force_hulls() {
        for dim in 2..=4 {
            for count in dim + 1..=8 {
                let gale: BTreeSet<_> = cyclic_facets(dim, count).unwrap().into_iter().collect();
                assert_eq!(gale, brute_force(dim, count), "C({dim}, {count})");
            }
        }
    }

    #[test]
    fn neighborly() {
        for dim in 2..=6 {
            for count in dim + 1..=10 {
                let facets = cyclic_facets(dim, count).unwrap();
                let half = dim / 2;
                let mut sub: Vec<usize> = (1..=half).collect();
                loop {
                    assert!(facets.iter().any(|f| sub.iter().all(|x| f.contains(x))));
                    let Some(i) = (0..half).rev().find(|&i| sub[i] < count - half + i + 1) else { break };
                    sub[i] += 1;
                    for j in i + 1..half {
                        sub[j] = sub[j - 1] + 1;
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(cyclic_facets(1, 4).is_err());
        assert!(cyclic_facets(3, 3).is_err());
        assert!(cyclic_facets(3, 13).unwrap_err().is_cap());
    }
}
