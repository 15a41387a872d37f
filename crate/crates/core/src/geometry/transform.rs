//! Moving between open and closed realizations: trimming, closure, inflation.
//!
//! Distances are measured in the L∞ norm, so pushing the hyperplane of
//! `a·x ≤ b` by `ε` changes the right-hand side by `ε‖a‖₁`.

use num_traits::{Signed, Zero};

use super::arrangement::{code_with_witnesses, AtomCensus, CodeOptions};
use super::lp::{LinearProgram, LpOutcome, Relation};
use super::polytope::{ConvexSet, HPolytope, Halfspace, Realization, Topology};
use super::rational::{dot, frac, l1_norm, Rational};
use crate::code::{Code, Codeword};
use crate::error::{Error, Result};

/// Retries with a halved `ε` before giving up.
const MAX_HALVINGS: usize = 8;

fn shifted(p: &HPolytope, delta: &Rational, open: bool) -> HPolytope {
    let hs = p
        .halfspaces()
        .iter()
        .map(|h| Halfspace {
            a: h.a.clone(),
            b: &h.b + delta * l1_norm(&h.a),
            strict: open,
        })
        .collect();
    HPolytope::new(p.dim(), open, hs).expect("shifting keeps normals and dimensions")
}

fn check_eps(eps: &Rational) -> Result<()> {
    if !eps.is_positive() {
        return Err(Error::precondition("ε must be positive"));
    }
    Ok(())
}

/// Points at L∞ distance more than `ε` from the boundary, with the same
/// strictness as `p`.
pub fn trim(p: &HPolytope, eps: &Rational) -> Result<HPolytope> {
    check_eps(eps)?;
    Ok(shifted(p, &-eps, p.is_open()))
}

/// The open L∞ `ε`-neighbourhood of `p`.
pub fn inflate(p: &HPolytope, eps: &Rational) -> Result<HPolytope> {
    check_eps(eps)?;
    Ok(shifted(p, eps, true))
}

/// Trims every set of an open realization by the same `ε`.
pub fn trim_all(r: &Realization, eps: &Rational) -> Result<Realization> {
    if !r.topology().is_open() {
        return Err(Error::precondition("trimming expects an open realization"));
    }
    let sets = r
        .sets()
        .iter()
        .map(|s| match s {
            ConvexSet::H(h) => trim(h, eps).map(ConvexSet::H),
            other => Ok(other.clone()),
        })
        .collect::<Result<Vec<_>>>()?;
    Realization::new(r.dim(), Topology::Open, sets)
}

/// Inflates every set of a closed realization by the same `ε`.
pub fn inflate_all(r: &Realization, eps: &Rational) -> Result<Realization> {
    if r.topology().is_open() {
        return Err(Error::precondition("inflation expects a closed realization"));
    }
    let r = r.to_h_form()?;
    let sets = r
        .sets()
        .iter()
        .map(|s| match s {
            ConvexSet::H(h) => inflate(h, eps).map(ConvexSet::H),
            other => Ok(other.clone()),
        })
        .collect::<Result<Vec<_>>>()?;
    Realization::new(r.dim(), Topology::Open, sets)
}

/// Replaces each open set by its closure; empty sets stay empty.
pub fn close_realization(r: &Realization) -> Result<Realization> {
    if !r.topology().is_open() {
        return Ok(r.clone());
    }
    let sets = r
        .sets()
        .iter()
        .map(|s| match s {
            ConvexSet::H(h) if h.is_empty() => ConvexSet::Empty,
            ConvexSet::H(h) => ConvexSet::H(h.closure()),
            other => other.clone(),
        })
        .collect();
    Realization::new(r.dim(), Topology::Closed, sets)
}

/// Options for the verification passes, which see up to twice the
/// hyperplanes of the input (opposite halfspaces split when shifted).
fn doubled(opts: CodeOptions) -> CodeOptions {
    CodeOptions {
        max_hyperplanes: opts.max_hyperplanes * 2,
        interior_only: false,
        ..opts
    }
}

/// Trims an open realization of an intersection complete code so that the
/// trimmed sets and their closures still realize the same code. Returns the
/// trimmed realization and the `ε` used.
pub fn trim_realization(r: &Realization, opts: CodeOptions) -> Result<(Realization, Rational)> {
    if !r.topology().is_open() {
        return Err(Error::precondition("trimming expects an open realization"));
    }
    let AtomCensus { code, witnesses } = code_with_witnesses(r, CodeOptions { interior_only: false, ..opts })?;
    if let Some((a, b)) = code.first_missing_intersection() {
        return Err(Error::NotIntersectionComplete(format!(
            "the realized code has {a} and {b} but not their intersection, so trimming may change it"
        )));
    }
    // Each witness keeps a positive margin to every set it lies in.
    let mut eps: Option<Rational> = None;
    for (c, p) in &witnesses {
        for i in c.iter() {
            if let ConvexSet::H(h) = &r.sets()[i - 1] {
                for hs in h.halfspaces() {
                    let slack = (&hs.b - dot(&hs.a, p)) / l1_norm(&hs.a);
                    if eps.as_ref().is_none_or(|e| slack < *e) {
                        eps = Some(slack);
                    }
                }
            }
        }
    }
    let mut eps = eps.unwrap_or_else(|| Rational::from_integer(1.into())) * frac(1, 2);
    for _ in 0..=MAX_HALVINGS {
        let trimmed = trim_all(r, &eps)?;
        let same_open = code_with_witnesses(&trimmed, doubled(opts))?.code == code;
        if same_open && code_with_witnesses(&close_realization(&trimmed)?, doubled(opts))?.code == code {
            return Ok((trimmed, eps));
        }
        eps *= frac(1, 2);
    }
    Err(Error::Internal("trimming did not preserve the code".into()))
}

/// Minimal codewords outside a simplicial complex: every proper subset is a face.
fn minimal_non_faces(code: &Code) -> Vec<Codeword> {
    let mut out = std::collections::BTreeSet::new();
    for c in code.iter() {
        for i in 1..=code.n() {
            if c.contains(i) {
                continue;
            }
            let rho = c.with(i);
            if !code.contains(rho) && rho.iter().all(|j| code.contains(rho.difference(Codeword::singleton(j)))) {
                out.insert(rho);
            }
        }
    }
    out.into_iter().collect()
}

/// Smallest `ε ≥ 0` at which the closed `ε`-neighbourhoods of the given
/// polytopes meet, or `None` if they never do.
fn meeting_distance(polys: &[&HPolytope], dim: usize) -> Option<Rational> {
    let mut lp = LinearProgram::new(dim + 1);
    for j in 0..dim {
        lp.set_free(j);
    }
    for p in polys {
        for h in p.halfspaces() {
            let mut row = h.a.clone();
            row.push(-l1_norm(&h.a));
            lp.add(row, Relation::Le, h.b.clone());
        }
    }
    let mut obj = vec![Rational::zero(); dim + 1];
    obj[dim] = Rational::from_integer((-1).into());
    lp.maximize(obj);
    match lp.solve() {
        LpOutcome::Optimal { value, .. } => Some(-value),
        _ => None,
    }
}

/// Inflates a closed realization of a simplicial complex code into an open
/// realization of the same code. Returns the open realization and the `ε`.
///
/// `ε` is kept below (i) the distance from each codeword's witness to every
/// set it avoids, and (ii) half the distance at which the sets of any minimal
/// non-face start to meet.
pub fn inflate_realization(r: &Realization, opts: CodeOptions) -> Result<(Realization, Rational)> {
    if r.topology().is_open() {
        return Err(Error::precondition("inflation expects a closed realization"));
    }
    let r = r.to_h_form()?;
    let AtomCensus { code, witnesses } = code_with_witnesses(&r, CodeOptions { interior_only: false, ..opts })?;
    if !code.is_simplicial_complex() {
        return Err(Error::NotSimplicialComplex(
            "inflating only preserves codes that are simplicial complexes".into(),
        ));
    }
    let polys: Vec<Option<&HPolytope>> = r
        .sets()
        .iter()
        .map(|s| match s {
            ConvexSet::H(h) => Some(h),
            _ => None,
        })
        .collect();
    let mut bound: Option<Rational> = None;
    let mut lower = |v: Rational| {
        if bound.as_ref().is_none_or(|b| v < *b) {
            bound = Some(v);
        }
    };
    for (c, p) in &witnesses {
        for (j, poly) in polys.iter().enumerate() {
            let Some(poly) = poly else { continue };
            if c.contains(j + 1) {
                continue;
            }
            let worst = poly
                .halfspaces()
                .iter()
                .map(|h| (dot(&h.a, p) - &h.b) / l1_norm(&h.a))
                .max()
                .ok_or_else(|| Error::Internal("witness avoids the whole space".into()))?;
            lower(worst);
        }
    }
    for rho in minimal_non_faces(&code) {
        let members: Option<Vec<&HPolytope>> = rho.iter().map(|i| polys[i - 1]).collect();
        let Some(members) = members else { continue };
        if let Some(d) = meeting_distance(&members, r.dim()) {
            lower(d * frac(1, 2));
        }
    }
    let mut eps = bound.unwrap_or_else(|| Rational::from_integer(1.into())) * frac(1, 2);
    if !eps.is_positive() {
        return Err(Error::Internal("inflation margin is not positive".into()));
    }
    for _ in 0..=MAX_HALVINGS {
        let inflated = inflate_all(&r, &eps)?;
        if code_with_witnesses(&inflated, doubled(opts))?.code == code {
            return Ok((inflated, eps));
        }
        eps *= frac(1, 2);
    }
    Err(Error::Internal("inflation did not preserve the code".into()))
}
