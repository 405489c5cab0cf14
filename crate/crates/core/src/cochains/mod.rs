//! The graded Lie algebra of Filippov multiderivations over a point and its
//! deformation differential.

mod cochain;
mod complex;
mod product;

pub use crate::combinat::{shuffles, Shuffle};
pub use cochain::{basis, cochain_dim, Cochain, CochainEntry};
pub use complex::{coboundary_explicit, differential, is_filippov_derivation, Complex};
pub use product::{circle, gla_bracket, gla_bracket_at, maurer_cartan_defect};
