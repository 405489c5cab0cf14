//! Matrices of the deformation differential and the cohomology `H^k_F`.
//!
//! Degrees here are complex degrees: `C^k_F = Der^{k−1}`, so `C^0_F` is
//! `Λ^{n−1}`, `C^1_F` the linear maps and `C^2_F` the brackets.

mod lie;
mod linalg;

pub use lie::{ce_differential_matrix, embed_form, reduce_lie, LieDegreeComparison, LieReduction};
pub use linalg::{inconsistency_certificate, pivot_columns, rank, rank_nullspace, solve, RankNullspace};

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::RationalMatrix;
use crate::cochains::{cochain_dim, Cochain, Complex};
use crate::error::{Error, Result};
use crate::nlie::{LinearMap, NLieAlgebra};

/// Highest complex degree computed unless explicitly lifted.
pub const DEFAULT_MAX_DEGREE: usize = 3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CohomologyReport {
    /// Complex degree `k`.
    pub degree: usize,
    pub dim_cochains: usize,
    pub rank_d_out: usize,
    pub rank_d_in: usize,
    pub betti: usize,
    /// Cocycles whose classes form a basis of `H^k_F`.
    pub representatives: Vec<Cochain>,
}

/// Matrix of `δ_F : C^k_F → C^{k+1}_F` in the elementary bases.
pub fn differential_matrix(alg: &NLieAlgebra, k: usize) -> Result<RationalMatrix> {
    let cx = Complex::new(alg)?;
    differential_matrix_of(&cx, k)
}

/// Same as [`differential_matrix`] for an already validated complex.
pub fn differential_matrix_of(cx: &Complex, k: usize) -> Result<RationalMatrix> {
    let alg = cx.algebra();
    let (n, m) = (alg.arity(), alg.dim());
    let p = k as i32 - 1;
    let rows = cochain_dim(m, n, p + 1);
    let cols = (0..cochain_dim(m, n, p))
        .into_par_iter()
        .map(|i| {
            let b = Cochain::basis_element(n, m, p, i)?;
            Ok(cx.differential(&b)?.into_values())
        })
        .collect::<Result<Vec<_>>>()?;
    RationalMatrix::from_columns(rows, cols)
}

/// `H^k_F` for `k ≤ DEFAULT_MAX_DEGREE`.
pub fn cohomology(alg: &NLieAlgebra, k: usize) -> Result<CohomologyReport> {
    if k > DEFAULT_MAX_DEGREE {
        return Err(Error::InvalidArgument(format!(
            "degree {k} exceeds the default cap {DEFAULT_MAX_DEGREE}; use cohomology_uncapped"
        )));
    }
    cohomology_uncapped(alg, k)
}

/// `H^k_F` without the degree cap. The cochain space grows like
/// `C(m, n−1)^{k−2}`, so this can be slow.
pub fn cohomology_uncapped(alg: &NLieAlgebra, k: usize) -> Result<CohomologyReport> {
    let cx = Complex::new(alg)?;
    let (n, m) = (alg.arity(), alg.dim());
    let p = k as i32 - 1;
    let dim = cochain_dim(m, n, p);
    let d_out = differential_matrix_of(&cx, k)?;
    let RankNullspace {
        rank: rank_d_out,
        nullspace: cocycles,
    } = rank_nullspace(&d_out);
    let d_in = if k == 0 {
        RationalMatrix::zero(dim, 0)
    } else {
        differential_matrix_of(&cx, k - 1)?
    };
    let rank_d_in = rank(&d_in);
    let betti = dim - rank_d_out - rank_d_in;

    // pivots of [im δ | cocycles] beyond the image pick out the classes
    let z = RationalMatrix::from_columns(dim, cocycles.clone())?;
    let joint = d_in.hstack(&z)?;
    let representatives = pivot_columns(&joint)
        .into_iter()
        .filter(|&c| c >= d_in.cols())
        .map(|c| Cochain::from_values(n, m, p, cocycles[c - d_in.cols()].clone()))
        .collect::<Result<Vec<_>>>()?;
    debug_assert_eq!(representatives.len(), betti);
    Ok(CohomologyReport {
        degree: k,
        dim_cochains: dim,
        rank_d_out,
        rank_d_in,
        betti,
        representatives,
    })
}

/// Representatives of `H^1_F`: derivations modulo inner ones.
pub fn outer_derivations(alg: &NLieAlgebra) -> Result<Vec<LinearMap>> {
    cohomology(alg, 1)?
        .representatives
        .iter()
        .map(Cochain::to_linear_map)
        .collect()
}
