//! Intersection complete neural codes: combinatorics, embedding-dimension
//! bounds, and exact rational convex realizations.

pub mod bounds;
pub mod code;
pub mod error;
pub mod families;
pub mod geometry;
pub mod io;
pub mod morphisms;
pub mod realize;
pub mod sunflower;

pub use code::{Code, Codeword, SimplicialComplex};
pub use error::{Error, Result};
