use rayon::prelude::*;
use serde::Serialize;

use super::DeformationPath;
use crate::arith::{axpy, unit_vec, QVec, Rational};
use crate::cochains::Cochain;
use crate::combinat::sorted_tuples;
use crate::error::{dim_err, Error, Result};
use crate::nlie::{LinearMap, NLieAlgebra, OOperatorWitness, Representation};
use crate::report::{ser_idx, ser_qvec, Verdict};

/// First sorted basis tuple where `[Nx_1, …, Nx_n] ≠ N([x_1, …, x_n]^{n−1}_N)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NijenhuisWitness {
    #[serde(serialize_with = "ser_idx")]
    pub on: Vec<usize>,
    #[serde(serialize_with = "ser_qvec")]
    pub lhs: QVec,
    #[serde(serialize_with = "ser_qvec")]
    pub rhs: QVec,
}

fn check_square(alg: &NLieAlgebra, n_op: &LinearMap) -> Result<()> {
    if n_op.rows() != alg.dim() || n_op.cols() != alg.dim() {
        return Err(dim_err("operator must be an m x m matrix"));
    }
    Ok(())
}

/// `[x]^0_N, …, [x]^k_N` on one basis tuple, where
/// `[x]^j_N = Σ_{|S|=j} [x with N applied on S] − N [x]^{j−1}_N`.
fn deformed_brackets(alg: &NLieAlgebra, n_op: &LinearMap, t: &[usize], k: usize) -> Result<Vec<QVec>> {
    let m = alg.dim();
    let plain: Vec<QVec> = t.iter().map(|&i| unit_vec(m, i)).collect();
    let applied: Vec<QVec> = t.iter().map(|&i| n_op.column(i)).collect();
    let mut out = vec![alg.bracket_vecs(&plain)];
    for j in 1..=k {
        let mut v = n_op.apply(&out[j - 1])?;
        for x in v.iter_mut() {
            *x = -x.clone();
        }
        for s in sorted_tuples(t.len(), j) {
            let args: Vec<QVec> = (0..t.len())
                .map(|l| {
                    if s.contains(&l) {
                        applied[l].clone()
                    } else {
                        plain[l].clone()
                    }
                })
                .collect();
            axpy(&mut v, &Rational::from_integer(1.into()), &alg.bracket_vecs(&args));
        }
        out.push(v);
    }
    Ok(out)
}

/// The deformed bracket `[·]^k_N` as a degree 1 cochain, `1 ≤ k ≤ n−1`.
pub fn nijenhuis_bracket(alg: &NLieAlgebra, n_op: &LinearMap, k: usize) -> Result<Cochain> {
    check_square(alg, n_op)?;
    let n = alg.arity();
    if k < 1 || k > n - 1 {
        return Err(Error::InvalidArgument(format!(
            "bracket level {k} outside 1..={}",
            n - 1
        )));
    }
    let mut c = Cochain::zero(n, alg.dim(), 1)?;
    for t in sorted_tuples(alg.dim(), n) {
        let v = deformed_brackets(alg, n_op, &t, k)?.pop().expect("k ≥ 1");
        c.add_entry(&[], &t, &v)?;
    }
    Ok(c)
}

/// Exhaustive check of `[Nx_1, …, Nx_n] = N([x_1, …, x_n]^{n−1}_N)`.
pub fn check_nijenhuis(alg: &NLieAlgebra, n_op: &LinearMap) -> Result<Verdict<NijenhuisWitness>> {
    check_square(alg, n_op)?;
    if !alg.check_fundamental_identity().is_holds() {
        return Err(Error::FundamentalIdentity);
    }
    Ok(nijenhuis_unchecked(alg, n_op))
}

fn nijenhuis_unchecked(alg: &NLieAlgebra, n_op: &LinearMap) -> Verdict<NijenhuisWitness> {
    let n = alg.arity();
    let failures: Vec<Option<NijenhuisWitness>> = sorted_tuples(alg.dim(), n)
        .into_par_iter()
        .map(|t| {
            let applied: Vec<QVec> = t.iter().map(|&i| n_op.column(i)).collect();
            let lhs = alg.bracket_vecs(&applied);
            let top = deformed_brackets(alg, n_op, &t, n - 1).expect("shapes checked");
            let rhs = n_op.apply(&top[n - 1]).expect("shapes checked");
            (lhs != rhs).then_some(NijenhuisWitness { on: t, lhs, rhs })
        })
        .collect();
    match failures.into_iter().flatten().next() {
        None => Verdict::holds(),
        Some(w) => Verdict::fails(w),
    }
}

/// The order `n−1` path `φ_i = [·]^i_N` generated by a Nijenhuis operator.
pub fn deformation_from_nijenhuis(alg: &NLieAlgebra, n_op: &LinearMap) -> Result<DeformationPath> {
    if !check_nijenhuis(alg, n_op)?.is_holds() {
        return Err(Error::NotNijenhuis);
    }
    let terms = (1..alg.arity())
        .map(|k| nijenhuis_bracket(alg, n_op, k))
        .collect::<Result<Vec<_>>>()?;
    DeformationPath::new(alg.clone(), terms)
}

/// `T̃ = [[0, T], [0, 0]]` on `L ⋉_ρ E` and both verdicts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OOperatorLift {
    #[serde(serialize_with = "crate::report::ser_matrix")]
    pub n_tilde: LinearMap,
    pub o_operator: Verdict<OOperatorWitness>,
    pub nijenhuis: Verdict<NijenhuisWitness>,
    pub agree: bool,
}

pub fn o_operator_lift(alg: &NLieAlgebra, rho: &Representation, t: &LinearMap) -> Result<OOperatorLift> {
    let semi = rho.semidirect_product(alg)?;
    let o_operator = rho.check_o_operator(alg, t)?;
    let (m, r) = (alg.dim(), rho.module_dim());
    let n_tilde = LinearMap::block(
        &LinearMap::zero(m, m),
        t,
        &LinearMap::zero(r, m),
        &LinearMap::zero(r, r),
    )?;
    // the semidirect product satisfies FI because ρ is a representation
    let nijenhuis = nijenhuis_unchecked(&semi, &n_tilde);
    let agree = o_operator.is_holds() == nijenhuis.is_holds();
    Ok(OOperatorLift {
        n_tilde,
        o_operator,
        nijenhuis,
        agree,
    })
}
