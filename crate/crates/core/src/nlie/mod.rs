//! Filippov (n-Lie) algebras over ℚ given by structure constants.

mod algebra;
pub mod examples;
mod representation;
mod wedge;

pub use algebra::{FiWitness, NLieAlgebra};
pub use representation::{OOperatorWitness, Representation, RepresentationWitness};
pub use wedge::WedgeElement;

/// Linear maps between coordinate spaces are plain rational matrices.
pub type LinearMap = crate::arith::RationalMatrix;

#[cfg(test)]
mod tests;
