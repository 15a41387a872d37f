//! The code of a realization, found by exact search.
//!
//! First every nonempty intersection `U_σ` is found by a depth-first search
//! that stops growing `σ` once the intersection is empty. Then `σ` is a
//! codeword exactly when `U_σ` is not covered by the other sets that meet
//! it. Outside a polyhedron `U_j` splits into disjoint pieces (the first
//! violated inequality is the `k`-th one, the earlier ones hold), so the
//! covering question is another search over pieces, stopped at the first
//! uncovered point.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use super::hull::normalize;
use super::lp::find_point;
use super::polytope::{ConvexSet, Halfspace, Realization};
use super::rational::{dot, int, Point, Rational};
use crate::code::{Code, Codeword};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_HYPERPLANES: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeOptions {
    pub max_hyperplanes: usize,
    /// Check candidate codewords on the rayon pool.
    pub parallel: bool,
    /// Record only atoms with nonempty interior.
    pub interior_only: bool,
}

impl Default for CodeOptions {
    fn default() -> Self {
        CodeOptions {
            max_hyperplanes: DEFAULT_MAX_HYPERPLANES,
            parallel: false,
            interior_only: false,
        }
    }
}

/// The code of a realization plus one witness point per codeword.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomCensus {
    pub code: Code,
    pub witnesses: BTreeMap<Codeword, Point>,
}

/// Number of distinct hyperplanes (ignoring orientation) over all H-sets.
pub fn count_hyperplanes(r: &Realization) -> usize {
    let mut seen = HashSet::new();
    for s in r.sets() {
        if let ConvexSet::H(h) = s {
            for hs in h.halfspaces() {
                let (a, b) = normalize(&hs.a, &hs.b);
                let lead_negative = a.iter().find(|x| **x != int(0)).is_some_and(|x| *x < int(0));
                let key = if lead_negative {
                    (a.iter().map(|x| -x).collect::<Vec<_>>(), -b)
                } else {
                    (a, b)
                };
                seen.insert(key);
            }
        }
    }
    seen.len()
}

pub fn code_of_realization(r: &Realization) -> Result<Code> {
    Ok(code_with_witnesses(r, CodeOptions::default())?.code)
}

type Row = (Vec<Rational>, Rational, bool);

fn satisfies(p: &[Rational], rows: &[Row]) -> bool {
    rows.iter().all(|(a, b, strict)| {
        let v = dot(a, p);
        if *strict {
            v < *b
        } else {
            v <= *b
        }
    })
}

struct Search {
    dim: usize,
    /// Inequalities of each set; `None` for the empty set.
    inside: Vec<Option<Vec<Row>>>,
    /// Disjoint pieces of each complement.
    pieces: Vec<Vec<Vec<Row>>>,
}

impl Search {
    fn new(r: &Realization, interior_only: bool) -> Search {
        let inside: Vec<Option<Vec<Row>>> = r
            .sets()
            .iter()
            .map(|s| match s {
                ConvexSet::H(h) => Some(
                    h.halfspaces()
                        .iter()
                        .map(|hs| (hs.a.clone(), hs.b.clone(), hs.strict || interior_only))
                        .collect(),
                ),
                ConvexSet::Empty => None,
                ConvexSet::V(_) => unreachable!("converted to H-form first"),
            })
            .collect();
        let pieces = inside
            .iter()
            .map(|rows| match rows {
                None => vec![Vec::new()],
                Some(rows) => (0..rows.len())
                    .map(|k| {
                        let mut piece: Vec<Row> = rows[..k].to_vec();
                        let flipped = Halfspace {
                            a: rows[k].0.clone(),
                            b: rows[k].1.clone(),
                            strict: rows[k].2,
                        }
                        .complement();
                        piece.push((flipped.a, flipped.b, flipped.strict || interior_only));
                        piece
                    })
                    .collect(),
            })
            .collect();
        Search { dim: r.dim(), inside, pieces }
    }

    /// A point of `rows ∧ add`, reusing `witness` when it already fits.
    fn extend(&self, rows: &[Row], add: &[Row], witness: &Point) -> Option<(Vec<Row>, Point)> {
        let mut all = rows.to_vec();
        all.extend(add.iter().cloned());
        let p = if satisfies(witness, add) {
            witness.clone()
        } else {
            find_point(self.dim, all.iter().map(|(a, b, s)| (a.as_slice(), b, *s)))?
        };
        Some((all, p))
    }

    /// Every nonempty `U_σ`, with its system and a point in it.
    fn intersections(&self, start: usize, bits: u64, rows: &[Row], witness: &Point, out: &mut Vec<(u64, Vec<Row>, Point)>) {
        out.push((bits, rows.to_vec(), witness.clone()));
        for i in start..self.inside.len() {
            let Some(add) = &self.inside[i] else { continue };
            if let Some((all, p)) = self.extend(rows, add, witness) {
                self.intersections(i + 1, bits | (1 << i), &all, &p, out);
            }
        }
    }

    /// A point of `rows` outside every set in `others`, if one exists.
    fn uncovered(&self, rows: &[Row], witness: &Point, others: &[usize]) -> Option<Point> {
        let Some((&j, rest)) = others.split_first() else {
            return Some(witness.clone());
        };
        // Try the piece holding the witness first: it needs no LP.
        let pieces = &self.pieces[j];
        let home = pieces.iter().position(|piece| satisfies(witness, piece));
        let order = home.into_iter().chain((0..pieces.len()).filter(|&k| Some(k) != home));
        for k in order {
            if let Some((all, p)) = self.extend(rows, &pieces[k], witness) {
                if let Some(found) = self.uncovered(&all, &p, rest) {
                    return Some(found);
                }
            }
        }
        None
    }
}

/// Enumerates the nonempty atoms. Errors if the hyperplane cap is exceeded or
/// if the sets cover all of `R^d` (the code would lack `∅`).
pub fn code_with_witnesses(r: &Realization, opts: CodeOptions) -> Result<AtomCensus> {
    let r = r.to_h_form()?;
    let planes = count_hyperplanes(&r);
    if planes > opts.max_hyperplanes {
        return Err(Error::cap("defining hyperplanes", planes, opts.max_hyperplanes));
    }
    let search = Search::new(&r, opts.interior_only);
    let origin: Point = vec![int(0); r.dim()];
    let mut meets = Vec::new();
    search.intersections(0, 0, &[], &origin, &mut meets);
    let nonempty: HashSet<u64> = meets.iter().map(|m| m.0).collect();
    let atom = |(bits, rows, w): &(u64, Vec<Row>, Point)| -> Option<(Codeword, Point)> {
        let others: Vec<usize> = (0..r.n())
            .filter(|&j| bits >> j & 1 == 0 && nonempty.contains(&(bits | 1 << j)))
            .collect();
        search.uncovered(rows, w, &others).map(|p| (Codeword::from_bits(*bits), p))
    };
    let found: Vec<(Codeword, Point)> = if opts.parallel {
        meets.par_iter().filter_map(atom).collect()
    } else {
        meets.iter().filter_map(atom).collect()
    };
    let witnesses: BTreeMap<Codeword, Point> = found.into_iter().collect();
    if !witnesses.contains_key(&Codeword::EMPTY) {
        return Err(Error::precondition(
            "the sets cover every point, so the code has no empty codeword",
        ));
    }
    let code = Code::from_codewords(r.n(), witnesses.keys().copied())?;
    Ok(AtomCensus { code, witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::polytope::{HPolytope, Topology, VPolytope};
    use crate::geometry::rational::point;

    fn interval(lo: i64, hi: i64, open: bool) -> ConvexSet {
        ConvexSet::H(
            HPolytope::from_rows(1, open, vec![(point(&[1]), int(hi)), (point(&[-1]), int(-lo))]).unwrap(),
        )
    }

    fn code(n: usize, words: &[&[usize]]) -> Code {
        Code::from_words(n, words.iter().copied()).unwrap()
    }

    #[test]
    fn closed_intervals() {
        let r = Realization::new(
            1,
            Topology::Closed,
            vec![interval(0, 2, false), interval(1, 4, false), interval(3, 6, false)],
        )
        .unwrap();
        assert_eq!(
            code_of_realization(&r).unwrap(),
            code(3, &[&[1], &[1, 2], &[2], &[2, 3], &[3]])
        );
    }

    #[test]
    fn touching_closed_intervals_share_a_point() {
        let r = Realization::new(
            1,
            Topology::Closed,
            vec![interval(1, 2, false), interval(1, 4, false), interval(2, 6, false)],
        )
        .unwrap();
        assert_eq!(
            code_of_realization(&r).unwrap(),
            code(3, &[&[1, 2, 3], &[1, 2], &[2, 3], &[3]])
        );
        let census = code_with_witnesses(&r, CodeOptions::default()).unwrap();
        for (c, p) in &census.witnesses {
            assert_eq!(r.pattern_at(p), *c);
        }
    }

    #[test]
    fn open_square_and_empty_set() {
        let sq = HPolytope::from_rows(
            2,
            true,
            vec![
                (point(&[1, 0]), int(1)),
                (point(&[-1, 0]), int(1)),
                (point(&[0, 1]), int(1)),
                (point(&[0, -1]), int(1)),
            ],
        )
        .unwrap();
        let r = Realization::new(2, Topology::Open, vec![ConvexSet::H(sq), ConvexSet::Empty]).unwrap();
        assert_eq!(code_of_realization(&r).unwrap(), code(2, &[&[1]]));
    }

    #[test]
    fn open_intervals_sharing_an_endpoint_are_disjoint() {
        let r = Realization::new(1, Topology::Open, vec![interval(0, 1, true), interval(1, 2, true)]).unwrap();
        assert_eq!(code_of_realization(&r).unwrap(), code(2, &[&[1], &[2]]));
    }

    #[test]
    fn covering_everything_is_rejected() {
        let half = ConvexSet::H(HPolytope::from_rows(1, false, vec![(point(&[1]), int(0))]).unwrap());
        let other = ConvexSet::H(HPolytope::from_rows(1, false, vec![(point(&[-1]), int(0))]).unwrap());
        let r = Realization::new(1, Topology::Closed, vec![half, other]).unwrap();
        assert!(matches!(code_of_realization(&r), Err(Error::Precondition(_))));
    }

    #[test]
    fn v_sets_and_interior_atoms() {
        // Two closed triangles sharing an edge: 12 is an atom but has no interior.
        let t1 = VPolytope::new(2, vec![point(&[0, 0]), point(&[2, 0]), point(&[0, 2])]).unwrap();
        let t2 = VPolytope::new(2, vec![point(&[2, 0]), point(&[0, 2]), point(&[2, 2])]).unwrap();
        let r = Realization::new(2, Topology::Closed, vec![ConvexSet::V(t1), ConvexSet::V(t2)]).unwrap();
        assert_eq!(code_of_realization(&r).unwrap(), code(2, &[&[1, 2], &[1], &[2]]));
        let inner = code_with_witnesses(&r, CodeOptions { interior_only: true, ..Default::default() }).unwrap();
        assert_eq!(inner.code, code(2, &[&[1], &[2]]));
    }

    #[test]
    fn hyperplane_cap() {
        let r = Realization::new(1, Topology::Closed, vec![interval(0, 2, false), interval(2, 4, false)]).unwrap();
        assert_eq!(count_hyperplanes(&r), 3);
        let err = code_with_witnesses(&r, CodeOptions { max_hyperplanes: 2, ..Default::default() }).unwrap_err();
        assert!(err.is_cap());
    }
}
