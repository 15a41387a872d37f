//! Exact rational convex geometry: LP feasibility, polytopes, hulls, and
//! codes of realizations.

pub mod arrangement;
pub mod hull;
pub mod linalg;
pub mod lp;
pub mod polytope;
pub mod rational;
pub mod transform;

pub use arrangement::{code_of_realization, code_with_witnesses, AtomCensus, CodeOptions};
pub use polytope::{lp_feasible, ConvexSet, HPolytope, Halfspace, Realization, Topology, VPolytope};
pub use rational::{Point, Rational};
pub use transform::{close_realization, inflate_realization, trim_realization};
