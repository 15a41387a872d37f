//! Closed convex realizations of intersection complete codes in dimension
//! `min{2d+1, n-1}`, built from a polytopal complex whose facets meet in
//! distinct faces.
//!
//! The complex comes either from a simplex (when `m = n-1`) or from the
//! Schlegel diagram of the polar dual of a cyclic polytope. Each codeword
//! `c` gets a point `p_c` in the relative interior of the face where the
//! cells of `c` meet, and `V_i` is the hull of the points of codewords
//! containing `i`.

pub mod cyclic;
pub mod dual;

use std::collections::BTreeMap;
use std::fmt;

use crate::code::{Code, Codeword};
use crate::error::{Error, Result};
use crate::geometry::arrangement::{code_with_witnesses, CodeOptions};
use crate::geometry::hull::point_in_vpolytope;
use crate::geometry::polytope::{ConvexSet, Realization, Topology, VPolytope};
use crate::geometry::rational::{centroid, frac, int, one, Point, Rational};

pub use cyclic::{cyclic_facets, moment_curve};
pub use dual::{center, polar_dual, schlegel, Schlegel};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Cells are the simplices joining the barycenter to the facets of a simplex.
    Simplex,
    /// Cells are the Schlegel images of the facets of a dual cyclic polytope.
    Cyclic,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Simplex => "simplex",
            Route::Cyclic => "cyclic",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopalRealizationPlan {
    pub code: Code,
    pub m: usize,
    pub route: Route,
    /// Facets of the neighborly polytope on `n+1` vertices (1-indexed).
    pub neighborly_facets: Vec<Vec<usize>>,
    /// One dual vertex per neighborly facet, in `R^{m+1}` (cyclic route only).
    pub dual_vertices: Vec<Point>,
    /// Vertices of the polytopal complex in `R^m`.
    pub complex_vertices: Vec<Point>,
    /// Cell `P_i` as indices into `complex_vertices`.
    pub cells: Vec<Vec<usize>>,
    /// `p_c` for every codeword; `p_∅` lies outside every cell.
    pub face_points: BTreeMap<Codeword, Point>,
    pub realization: Realization,
}

/// The ambient dimension used for `C`: `min{2d+1, n-1}`, at least 1.
pub fn target_dimension(c: &Code) -> usize {
    let d = c.dim();
    let m = (2 * d + 1).min(c.n() as i64 - 1);
    m.max(1) as usize
}

/// Vertices of the complex with, for each, the set of cells containing it.
struct Complex {
    route: Route,
    neighborly_facets: Vec<Vec<usize>>,
    dual_vertices: Vec<Point>,
    vertices: Vec<Point>,
    labels: Vec<Codeword>,
}

fn simplex_complex(n: usize) -> Complex {
    // v_j = e_j for j < n, v_n = 0, plus the barycenter, all in R^{n-1}.
    let m = n - 1;
    let mut vertices: Vec<Point> = (0..n)
        .map(|j| (0..m).map(|k| if k == j { one() } else { int(0) }).collect())
        .collect();
    vertices.push(vec![frac(1, n as i64); m]);
    let full = Codeword::full(n);
    let mut labels: Vec<Codeword> = (1..=n).map(|j| full.difference(Codeword::singleton(j))).collect();
    labels.push(full);
    let neighborly_facets = (1..=n + 1)
        .rev()
        .map(|skip| (1..=n + 1).filter(|&t| t != skip).collect())
        .collect();
    Complex { route: Route::Simplex, neighborly_facets, dual_vertices: Vec::new(), vertices, labels }
}

fn cyclic_complex(n: usize, m: usize) -> Result<Complex> {
    let dim = m + 1;
    let count = n + 1;
    let facets = cyclic_facets(dim, count)?;
    let zero_based: Vec<Vec<usize>> = facets.iter().map(|f| f.iter().map(|t| t - 1).collect()).collect();
    let (verts, _) = center(&moment_curve(dim, count), &zero_based);
    let dual_vertices = polar_dual(&verts, &zero_based)?;
    // Facet t of the dual is {x | v_t·x ≤ 1}; look through the last one.
    let dual_facets: Vec<(Point, Rational)> = verts.iter().map(|v| (v.clone(), one())).collect();
    let diagram = schlegel(&dual_vertices, &dual_facets, count - 1)?;
    let labels = facets
        .iter()
        .map(|f| Codeword::from_neurons(n, &f.iter().copied().filter(|&t| t <= n).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Complex {
        route: Route::Cyclic,
        neighborly_facets: facets,
        dual_vertices,
        vertices: diagram.points,
        labels,
    })
}

/// Runs the construction without checking intersection completeness; the
/// result realizes the intersection completion of `C`.
pub fn construct(c: &Code) -> Result<PolytopalRealizationPlan> {
    let n = c.n();
    if n < 2 {
        return Err(Error::precondition("the polytopal construction needs at least 2 neurons"));
    }
    let m = target_dimension(c);
    let complex = if m == n - 1 { simplex_complex(n) } else { cyclic_complex(n, m)? };
    assemble(c, m, complex)
}

fn assemble(c: &Code, m: usize, complex: Complex) -> Result<PolytopalRealizationPlan> {
    let n = c.n();
    let cells: Vec<Vec<usize>> = (1..=n)
        .map(|i| (0..complex.vertices.len()).filter(|&k| complex.labels[k].contains(i)).collect())
        .collect();
    let mut face_points = BTreeMap::new();
    for word in c.iter().filter(|w| !w.is_empty()) {
        let members: Vec<Point> = (0..complex.vertices.len())
            .filter(|&k| word.is_subset_of(complex.labels[k]))
            .map(|k| complex.vertices[k].clone())
            .collect();
        if members.is_empty() {
            return Err(Error::Internal(format!("cells of {word} share no vertex")));
        }
        face_points.insert(word, centroid(&members));
    }
    let far = complex
        .vertices
        .iter()
        .map(|v| v[0].clone())
        .max()
        .expect("complex has vertices")
        + one();
    let mut outside = vec![int(0); m];
    outside[0] = far;
    face_points.insert(Codeword::EMPTY, outside);
    let sets = (1..=n)
        .map(|i| {
            let pts: Vec<Point> = c
                .iter()
                .filter(|w| w.contains(i))
                .map(|w| face_points[&w].clone())
                .collect();
            if pts.is_empty() {
                Ok(ConvexSet::Empty)
            } else {
                VPolytope::new(m, pts).map(ConvexSet::V)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PolytopalRealizationPlan {
        code: c.clone(),
        m,
        route: complex.route,
        neighborly_facets: complex.neighborly_facets,
        dual_vertices: complex.dual_vertices,
        complex_vertices: complex.vertices,
        cells,
        face_points,
        realization: Realization::new(m, Topology::Closed, sets)?,
    })
}

/// A closed realization of an intersection complete code in `R^m`,
/// `m = min{2d+1, n-1}`, with the plan that certifies it.
pub fn realize_closed(c: &Code) -> Result<(Realization, PolytopalRealizationPlan)> {
    if let Some((a, b)) = c.first_missing_intersection() {
        return Err(Error::NotIntersectionComplete(format!(
            "{a} and {b} are codewords but their intersection is not; the construction would realize the intersection completion instead"
        )));
    }
    let plan = construct(c)?;
    Ok((plan.realization.clone(), plan))
}

/// Realizes the intersection completion; the flag says whether it differs
/// from `C`.
pub fn realize_closed_completion(c: &Code) -> Result<(Realization, PolytopalRealizationPlan, bool)> {
    let completion = c.intersection_completion();
    let changed = completion != *c;
    let (r, plan) = realize_closed(&completion)?;
    Ok((r, plan, changed))
}

pub const MAX_GEOMETRIC_CHECK_DIM: usize = 3;

/// Outcome of the three certificate layers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PlanCheck {
    /// The code equals its completion (trunk criterion) and matches the plan.
    pub combinatorial: bool,
    /// Every `p_c` lies in exactly the cells and sets indexed by `c`.
    pub witness: bool,
    /// Full atom enumeration agrees with `C`; `None` when not run.
    pub geometric: Option<bool>,
    pub notes: Vec<String>,
}

impl PlanCheck {
    pub fn passed(&self) -> bool {
        self.combinatorial && self.witness && self.geometric != Some(false)
    }
}

fn check_combinatorial(c: &Code, plan: &PolytopalRealizationPlan, notes: &mut Vec<String>) -> Result<bool> {
    let mut ok = true;
    if plan.code != *c {
        notes.push("the plan was built for a different code".into());
        ok = false;
    }
    // Only codewords of C or of its completion can disagree.
    for sigma in c.intersection_completion().iter() {
        if c.completion_membership(sigma)? != c.contains(sigma) {
            notes.push(format!("{sigma} is in the intersection completion but not in the code"));
            ok = false;
        }
    }
    Ok(ok)
}

fn check_witnesses(c: &Code, plan: &PolytopalRealizationPlan, notes: &mut Vec<String>) -> Result<bool> {
    let r = &plan.realization;
    if r.n() != c.n() || r.dim() != plan.m || plan.cells.len() != c.n() {
        notes.push("plan shape does not match the code".into());
        return Ok(false);
    }
    let cells = plan
        .cells
        .iter()
        .map(|idx| {
            let pts = idx
                .iter()
                .map(|&k| {
                    plan.complex_vertices
                        .get(k)
                        .cloned()
                        .ok_or_else(|| Error::Parse(format!("cell vertex {k} out of range")))
                })
                .collect::<Result<Vec<_>>>()?;
            VPolytope::new(plan.m, pts)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut ok = true;
    for word in c.iter() {
        let Some(p) = plan.face_points.get(&word) else {
            notes.push(format!("no point for codeword {word}"));
            ok = false;
            continue;
        };
        for i in 1..=c.n() {
            let expected = word.contains(i);
            if r.sets()[i - 1].contains(p) != expected {
                notes.push(format!("point of {word} is wrongly {} set {i}", if expected { "outside" } else { "inside" }));
                ok = false;
            }
            if point_in_vpolytope(p, &cells[i - 1]) != expected {
                notes.push(format!("point of {word} is wrongly {} cell {i}", if expected { "outside" } else { "inside" }));
                ok = false;
            }
        }
    }
    Ok(ok)
}

/// Checks a plan against `C`. The geometric layer runs only when `deep` is
/// set and `m ≤ 3`; it is skipped (left `None`) if it would exceed a cap.
pub fn verify_plan(c: &Code, plan: &PolytopalRealizationPlan, deep: bool) -> Result<PlanCheck> {
    verify_plan_with(c, plan, deep, CodeOptions::default())
}

/// [`verify_plan`] with explicit options for the geometric layer.
pub fn verify_plan_with(c: &Code, plan: &PolytopalRealizationPlan, deep: bool, opts: CodeOptions) -> Result<PlanCheck> {
    let mut check = PlanCheck::default();
    check.combinatorial = check_combinatorial(c, plan, &mut check.notes)?;
    check.witness = check_witnesses(c, plan, &mut check.notes)?;
    if deep {
        if plan.m > MAX_GEOMETRIC_CHECK_DIM {
            check.notes.push(format!("geometric layer skipped: dimension {} > {MAX_GEOMETRIC_CHECK_DIM}", plan.m));
        } else {
            match code_with_witnesses(&plan.realization, opts) {
                Ok(census) => {
                    let same = census.code == *c;
                    if !same {
                        check.notes.push(format!("realized code is {}", census.code));
                    }
                    check.geometric = Some(same);
                }
                Err(e) if e.is_cap() => check.notes.push(format!("geometric layer skipped: {e}")),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::arrangement::code_of_realization;

    fn code(n: usize, words: &[&[usize]]) -> Code {
        Code::from_words(n, words.iter().copied()).unwrap()
    }

    #[test]
    fn three_cell_example() {
        let c = code(3, &[&[1, 2, 3], &[1, 2], &[1], &[2], &[3]]);
        let (r, plan) = realize_closed(&c).unwrap();
        assert_eq!(plan.m, 2);
        assert_eq!(plan.route, Route::Simplex);
        let dims: Vec<usize> = r
            .sets()
            .iter()
            .map(|s| match s {
                ConvexSet::V(v) => v.affine_dim(),
                _ => panic!("expected V-sets"),
            })
            .collect();
        assert_eq!(dims, vec![2, 2, 1]);
        let check = verify_plan(&c, &plan, true).unwrap();
        assert!(check.passed() && check.geometric == Some(true), "{check:?}");
    }

    #[test]
    fn single_point_and_empty_set() {
        let c = code(2, &[&[1]]);
        let (r, plan) = realize_closed(&c).unwrap();
        assert_eq!(plan.m, 1);
        match &r.sets()[0] {
            ConvexSet::V(v) => assert_eq!(v.affine_dim(), 0),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(r.sets()[1], ConvexSet::Empty);
        assert!(verify_plan(&c, &plan, true).unwrap().passed());
    }

    #[test]
    fn cyclic_route_for_sparse_codes() {
        // d = 1, n = 5: m = 3 < 4.
        let c = code(5, &[&[1, 2], &[2, 3], &[2], &[3, 4], &[3], &[4, 5], &[4], &[5], &[1]]);
        assert!(c.is_intersection_complete());
        let (_, plan) = realize_closed(&c).unwrap();
        assert_eq!((plan.m, plan.route), (3, Route::Cyclic));
        let check = verify_plan(&c, &plan, true).unwrap();
        assert!(check.passed(), "{check:?}");
    }

    #[test]
    fn cyclic_and_simplex_routes_agree_on_simplex_case() {
        // A cyclic polytope with D+1 vertices is a simplex, so both routes apply.
        let c = code(3, &[&[1, 2], &[2, 3], &[2], &[1], &[3]]);
        let plan = construct(&c).unwrap();
        assert_eq!(plan.route, Route::Simplex);
        assert!(verify_plan(&c, &plan, true).unwrap().passed());
        let via_cyclic = assemble(&c, 2, cyclic_complex(3, 2).unwrap()).unwrap();
        assert_eq!(via_cyclic.complex_vertices.len(), 4);
        let check = verify_plan(&c, &via_cyclic, true).unwrap();
        assert!(check.passed() && check.geometric == Some(true), "{check:?}");
    }

    #[test]
    fn face_points_lie_in_exactly_their_cells() {
        let c = code(6, &[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[5, 6], &[1], &[2], &[3], &[4], &[5], &[6]]);
        let plan = construct(&c).unwrap();
        assert_eq!(plan.route, Route::Cyclic);
        let cells: Vec<VPolytope> = plan
            .cells
            .iter()
            .map(|idx| VPolytope::new(plan.m, idx.iter().map(|&k| plan.complex_vertices[k].clone()).collect()).unwrap())
            .collect();
        for (w, p) in &plan.face_points {
            for i in 1..=6 {
                assert_eq!(point_in_vpolytope(p, &cells[i - 1]), w.contains(i), "{w} cell {i}");
            }
        }
    }

    #[test]
    fn non_complete_codes_realize_their_completion() {
        let c = code(3, &[&[1, 2], &[1, 3]]);
        assert!(matches!(realize_closed(&c), Err(Error::NotIntersectionComplete(_))));
        let raw = construct(&c).unwrap();
        assert_eq!(code_of_realization(&raw.realization).unwrap(), c.intersection_completion());
        let (_, plan, changed) = realize_closed_completion(&c).unwrap();
        assert!(changed);
        assert!(verify_plan(&c.intersection_completion(), &plan, true).unwrap().passed());
        let against_original = verify_plan(&c, &plan, false).unwrap();
        assert!(!against_original.combinatorial);
    }

    #[test]
    fn corrupted_face_point_fails_witness_layer() {
        let c = code(3, &[&[1, 2, 3], &[1, 2], &[1], &[2], &[3]]);
        let (_, mut plan) = realize_closed(&c).unwrap();
        let far = plan.face_points[&Codeword::EMPTY].clone();
        plan.face_points.insert(Codeword::from_bits(0b011), far);
        let check = verify_plan(&c, &plan, false).unwrap();
        assert!(check.combinatorial && !check.witness);
    }

    #[test]
    fn only_empty_word() {
        let c = Code::empty(4);
        let (r, plan) = realize_closed(&c).unwrap();
        assert_eq!(plan.m, 1);
        assert!(r.sets().iter().all(|s| *s == ConvexSet::Empty));
        assert!(verify_plan(&c, &plan, true).unwrap().passed());
        assert!(realize_closed(&Code::empty(1)).is_err());
    }
}
