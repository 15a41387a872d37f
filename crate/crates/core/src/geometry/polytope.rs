//! Halfspaces, H- and V-polytopes, and realizations.

use std::fmt;

use super::lp::find_point;
use super::rational::{dot, is_zero_vec, Point, Rational};
use crate::error::{Error, Result};

/// `{x | a·x ≤ b}`, or `{x | a·x < b}` when strict.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Halfspace {
    pub a: Vec<Rational>,
    pub b: Rational,
    pub strict: bool,
}

impl Halfspace {
    pub fn new(a: Vec<Rational>, b: Rational, strict: bool) -> Result<Self> {
        if is_zero_vec(&a) {
            return Err(Error::precondition("halfspace normal must be nonzero"));
        }
        Ok(Halfspace { a, b, strict })
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        let v = dot(&self.a, p);
        if self.strict {
            v < self.b
        } else {
            v <= self.b
        }
    }

    /// The complementary halfspace `a·x ≥ b` (resp. `> b`), written as `≤`.
    pub fn complement(&self) -> Halfspace {
        Halfspace {
            a: self.a.iter().map(|x| -x).collect(),
            b: -&self.b,
            strict: !self.strict,
        }
    }

    pub(crate) fn row(&self) -> (&[Rational], &Rational, bool) {
        (&self.a, &self.b, self.strict)
    }
}

/// An intersection of halfspaces that are either all strict or all closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope {
    dim: usize,
    open: bool,
    halfspaces: Vec<Halfspace>,
}

impl HPolytope {
    pub fn new(dim: usize, open: bool, halfspaces: Vec<Halfspace>) -> Result<Self> {
        for h in &halfspaces {
            if h.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: h.dim() });
            }
            if is_zero_vec(&h.a) {
                return Err(Error::precondition("halfspace normal must be nonzero"));
            }
            if h.strict != open {
                return Err(Error::precondition(
                    "a polytope must use only strict or only non-strict inequalities",
                ));
            }
        }
        Ok(HPolytope { dim, open, halfspaces })
    }

    /// Builds from `(a, b)` pairs, all strict when `open`.
    pub fn from_rows(dim: usize, open: bool, rows: Vec<(Vec<Rational>, Rational)>) -> Result<Self> {
        let hs = rows
            .into_iter()
            .map(|(a, b)| Halfspace::new(a, b, open))
            .collect::<Result<Vec<_>>>()?;
        HPolytope::new(dim, open, hs)
    }

    /// The whole space `R^d`, with the given topology flag.
    pub fn whole_space(dim: usize, open: bool) -> Self {
        HPolytope { dim, open, halfspaces: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_open(&self) -> bool {
        self.open
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        self.halfspaces.iter().all(|h| h.contains(p))
    }

    /// Drops strictness: the closure of a nonempty open polytope.
    pub fn closure(&self) -> HPolytope {
        HPolytope {
            dim: self.dim,
            open: false,
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| Halfspace { strict: false, ..h.clone() })
                .collect(),
        }
    }

    pub fn intersect(&self, other: &HPolytope) -> Result<HPolytope> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        if self.open != other.open {
            return Err(Error::precondition("cannot intersect an open and a closed polytope"));
        }
        let mut hs = self.halfspaces.clone();
        hs.extend(other.halfspaces.iter().cloned());
        Ok(HPolytope { dim: self.dim, open: self.open, halfspaces: hs })
    }

    /// A point of the polytope, if it is nonempty.
    pub fn interior_point(&self) -> Option<Point> {
        find_point(self.dim, self.halfspaces.iter().map(Halfspace::row))
    }

    pub fn is_empty(&self) -> bool {
        self.interior_point().is_none()
    }
}

/// The convex hull of finitely many points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolytope {
    dim: usize,
    points: Vec<Point>,
}

impl VPolytope {
    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::precondition("a V-polytope needs at least one point; use an empty set instead"));
        }
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
            }
        }
        Ok(VPolytope { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> usize {
        let base = &self.points[0];
        let dirs: Vec<Point> = self.points[1..]
            .iter()
            .map(|p| super::rational::sub(p, base))
            .collect();
        super::linalg::rank(&dirs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConvexSet {
    H(HPolytope),
    V(VPolytope),
    Empty,
}

impl ConvexSet {
    pub fn dim(&self) -> Option<usize> {
        match self {
            ConvexSet::H(h) => Some(h.dim()),
            ConvexSet::V(v) => Some(v.dim()),
            ConvexSet::Empty => None,
        }
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        match self {
            ConvexSet::H(h) => h.contains(p),
            ConvexSet::V(v) => super::hull::point_in_vpolytope(p, v),
            ConvexSet::Empty => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Topology {
    Open,
    Closed,
}

impl Topology {
    pub fn is_open(self) -> bool {
        self == Topology::Open
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Topology::Open => "open",
            Topology::Closed => "closed",
        })
    }
}

/// Convex sets `U_1, ..., U_n` in `R^d`, all open or all closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    dim: usize,
    topology: Topology,
    sets: Vec<ConvexSet>,
}

impl Realization {
    pub fn new(dim: usize, topology: Topology, sets: Vec<ConvexSet>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::precondition("a realization needs dimension at least 1"));
        }
        if sets.len() > crate::code::MAX_NEURONS {
            return Err(Error::InvalidNeuronCount(sets.len()));
        }
        for s in &sets {
            if let Some(d) = s.dim() {
                if d != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: d });
                }
            }
            match s {
                ConvexSet::H(h) if !h.halfspaces().is_empty() && h.is_open() != topology.is_open() => {
                    return Err(Error::precondition(format!(
                        "set strictness does not match the {topology} topology"
                    )));
                }
                ConvexSet::V(_) if topology.is_open() => {
                    return Err(Error::precondition("V-polytopes are closed; they cannot appear in an open realization"));
                }
                _ => {}
            }
        }
        Ok(Realization { dim, topology, sets })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn sets(&self) -> &[ConvexSet] {
        &self.sets
    }

    pub fn n(&self) -> usize {
        self.sets.len()
    }

    /// `{i | p ∈ U_i}` as a codeword.
    pub fn pattern_at(&self, p: &[Rational]) -> crate::code::Codeword {
        let mut bits = 0u64;
        for (i, s) in self.sets.iter().enumerate() {
            if s.contains(p) {
                bits |= 1 << i;
            }
        }
        crate::code::Codeword::from_bits(bits)
    }

    /// Removes set `i` (1-indexed), shifting later sets down.
    pub fn without(&self, i: usize) -> Result<Realization> {
        if i == 0 || i > self.sets.len() {
            return Err(Error::precondition(format!("no set with index {i}")));
        }
        let mut sets = self.sets.clone();
        sets.remove(i - 1);
        Ok(Realization { dim: self.dim, topology: self.topology, sets })
    }

    /// Every set in H-form (V-sets converted, `d <= 4`).
    pub fn to_h_form(&self) -> Result<Realization> {
        let sets = self
            .sets
            .iter()
            .map(|s| match s {
                ConvexSet::V(v) => super::hull::vrep_to_hrep(v).map(ConvexSet::H),
                other => Ok(other.clone()),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Realization { dim: self.dim, topology: self.topology, sets })
    }
}

/// Whether `rows` (halfspaces in `R^d`) have a common point.
pub fn lp_feasible(constraints: &[Halfspace], dim: usize) -> Result<bool> {
    if dim == 0 {
        return Err(Error::precondition("dimension must be at least 1"));
    }
    for h in constraints {
        if h.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: h.dim() });
        }
    }
    Ok(find_point(dim, constraints.iter().map(Halfspace::row)).is_some())
}
