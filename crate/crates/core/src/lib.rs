//! Exact-arithmetic deformation theory of Filippov (n-Lie) algebras.
//!
//! The crate is organized bottom-up:
//!
//! * [`arith`]: rationals, sparse multivariate polynomials and polynomial
//!   vector fields.
//! * [`nlie`]: n-Lie algebras given by structure constants, the fundamental
//!   identity, the Leibniz bracket on `L = Λ^{n-1}`, representations,
//!   semidirect products and O-operators.
//! * [`cochains`]: the graded Lie algebra of multiderivations, circle
//!   products, the graded bracket and the deformation differential.
//! * [`cohomology`]: exact linear algebra and the cohomology `H^k_F`.
//! * [`deform`]: one-parameter and finite-order deformations, Nijenhuis
//!   operators, obstructions, extension and rigidity probing.
//! * [`algebroid`]: Filippov algebroids over a polynomial base.
//! * [`json`]: the JSON file formats used by the command-line tool.

pub mod algebroid;
pub mod arith;
pub mod cochains;
pub mod cohomology;
pub mod combinat;
pub mod deform;
pub mod error;
pub mod json;
pub mod nlie;
pub mod report;

pub use arith::{MultiPoly, PolyVectorField, Rational};
pub use cochains::{Cochain, Complex};
pub use error::{Error, Result};
pub use nlie::{LinearMap, NLieAlgebra, Representation, WedgeElement};
pub use report::Verdict;
