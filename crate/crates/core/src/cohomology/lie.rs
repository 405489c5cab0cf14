//! The `n = 2` reduction: for a Lie algebra the deformation complex carries
//! the Chevalley–Eilenberg complex of the adjoint representation.
//!
//! A `k`-form `ψ ∈ Λ^k g* ⊗ g` sits in `C^k_F` as the cochain
//! `(x_1, …, x_{k−1}, x_k ∧ z) ↦ ψ(x_1, …, x_k, z)`. On forms of degree
//! `k ≥ 1` the two differentials agree; on vectors they differ by a sign,
//! since `δ(v) = ad_v` while `d_CE v = −ad_v`.

use num_traits::Zero;
use serde::Serialize;

use super::linalg::rank;
use crate::arith::{zero_vec, QVec, Rational, RationalMatrix};
use crate::cochains::{Cochain, Complex};
use crate::combinat::{all_tuples, sort_sign, sorted_tuples, TupleIndex};
use crate::error::{Error, Result};
use crate::nlie::{NLieAlgebra, WedgeElement};

fn require_lie(alg: &NLieAlgebra) -> Result<()> {
    if alg.arity() != 2 {
        return Err(Error::InvalidArgument(format!(
            "the Lie reduction needs arity 2, got {}",
            alg.arity()
        )));
    }
    Ok(())
}

/// Alternating form stored on sorted tuples.
struct Form<'a> {
    index: &'a TupleIndex,
    m: usize,
    values: &'a [Rational],
}

impl Form<'_> {
    fn at(&self, t: &[usize]) -> QVec {
        let mut s = t.to_vec();
        let Some(sign) = sort_sign(&mut s) else {
            return zero_vec(self.m);
        };
        let i = self.index.rank(&s).expect("sorted tuple in range");
        let v = &self.values[i * self.m..(i + 1) * self.m];
        if sign > 0 {
            v.to_vec()
        } else {
            v.iter().map(|x| -x).collect()
        }
    }

    /// `ψ(Σ_l v_l e_l, x_2, …)`.
    fn at_first(&self, v: &[Rational], rest: &[usize]) -> QVec {
        let mut out = zero_vec(self.m);
        for (l, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut t = vec![l];
            t.extend_from_slice(rest);
            for (o, x) in out.iter_mut().zip(self.at(&t)) {
                *o += c * x;
            }
        }
        out
    }
}

fn lie_bracket_vec(alg: &NLieAlgebra, a: usize, v: &[Rational]) -> QVec {
    let m = alg.dim();
    let mut out = zero_vec(m);
    for (l, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(alg.bracket_basis(&[a, l])) {
            *o += c * x;
        }
    }
    out
}

/// Matrix of `d_CE: Λ^k g* ⊗ g → Λ^{k+1} g* ⊗ g` on the basis of sorted
/// tuples times coordinates,
/// `d ψ(x_0, …, x_k) = Σ_i (−1)^i [x_i, ψ(…x̂_i…)] + Σ_{i<j} (−1)^{i+j} ψ([x_i, x_j], …x̂_i…x̂_j…)`.
pub fn ce_differential_matrix(alg: &NLieAlgebra, k: usize) -> Result<RationalMatrix> {
    require_lie(alg)?;
    let m = alg.dim();
    let src = TupleIndex::new(m, k);
    let dst = sorted_tuples(m, k + 1);
    let sgn = |e: usize| Rational::from_integer(if e.is_multiple_of(2) { 1.into() } else { (-1).into() });
    let mut cols = Vec::with_capacity(src.len() * m);
    for j in 0..src.len() * m {
        let mut values = zero_vec(src.len() * m);
        values[j] = Rational::from_integer(1.into());
        let psi = Form {
            index: &src,
            m,
            values: &values,
        };
        let mut col = Vec::with_capacity(dst.len() * m);
        for xs in &dst {
            let mut out = zero_vec(m);
            for i in 0..xs.len() {
                let rest: Vec<usize> = xs
                    .iter()
                    .enumerate()
                    .filter(|&(l, _)| l != i)
                    .map(|(_, &x)| x)
                    .collect();
                for (o, x) in out.iter_mut().zip(lie_bracket_vec(alg, xs[i], &psi.at(&rest))) {
                    *o += sgn(i) * x;
                }
                for jj in i + 1..xs.len() {
                    let bij = alg.bracket_basis(&[xs[i], xs[jj]]);
                    let rest: Vec<usize> = xs
                        .iter()
                        .enumerate()
                        .filter(|&(l, _)| l != i && l != jj)
                        .map(|(_, &x)| x)
                        .collect();
                    for (o, x) in out.iter_mut().zip(psi.at_first(&bij, &rest)) {
                        *o += sgn(i + jj) * x;
                    }
                }
            }
            col.extend(out);
        }
        cols.push(col);
    }
    RationalMatrix::from_columns(dst.len() * m, cols)
}

/// The cochain of degree `k − 1` carrying the alternating `k`-form whose
/// values on sorted tuples are `values`.
pub fn embed_form(m: usize, k: usize, values: &[Rational]) -> Result<Cochain> {
    let index = TupleIndex::new(m, k);
    if values.len() != index.len() * m {
        return Err(crate::error::dim_err("form has the wrong number of values"));
    }
    let form = Form {
        index: &index,
        m,
        values,
    };
    if k == 0 {
        return Cochain::from_wedge(2, &WedgeElement::from_vectors(m, &[values.to_vec()])?);
    }
    let mut c = Cochain::zero(2, m, k as i32 - 1)?;
    if k == 1 {
        for z in 0..m {
            c.add_entry(&[], &[z], &form.at(&[z]))?;
        }
        return Ok(c);
    }
    for head in all_tuples(m, k - 2) {
        let blocks: Vec<Vec<usize>> = head.iter().map(|&i| vec![i]).collect();
        for w in sorted_tuples(m, 2) {
            let mut t = head.clone();
            t.extend(&w);
            c.add_entry(&blocks, &w, &form.at(&t))?;
        }
    }
    Ok(c)
}

/// Agreement of the two differentials on one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LieDegreeComparison {
    /// Form degree `k`; the generic side acts on `C^k_F`.
    pub degree: usize,
    pub rank_generic: usize,
    pub rank_ce: usize,
    /// Sign relating the two: `δ ∘ embed = sign · embed ∘ d_CE`.
    pub sign: i32,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LieReduction {
    pub dim: usize,
    pub degrees: Vec<LieDegreeComparison>,
    pub agree: bool,
}

/// Runs the generic differential and the Chevalley–Eilenberg differential on
/// every basis form of degree `k ∈ degrees` and compares the resulting
/// matrices in the cochain basis of `C^{k+1}_F`.
pub fn reduce_lie(alg: &NLieAlgebra, degrees: &[usize]) -> Result<LieReduction> {
    require_lie(alg)?;
    let cx = Complex::new(alg)?;
    let m = alg.dim();
    let mut out = Vec::new();
    for &k in degrees {
        let d_ce = ce_differential_matrix(alg, k)?;
        let n_src = d_ce.cols();
        let sign: i32 = if k == 0 { -1 } else { 1 };
        let mut generic_cols = Vec::with_capacity(n_src);
        let mut ce_cols = Vec::with_capacity(n_src);
        for j in 0..n_src {
            let mut e = zero_vec(n_src);
            e[j] = Rational::from_integer(1.into());
            let image = cx.differential(&embed_form(m, k, &e)?)?;
            let ce = embed_form(m, k + 1, &d_ce.column(j))?.scale(&Rational::from_integer(sign.into()));
            generic_cols.push(image.into_values());
            ce_cols.push(ce.into_values());
        }
        let rows = generic_cols.first().map_or(0, Vec::len);
        let generic = RationalMatrix::from_columns(rows, generic_cols)?;
        let ce = RationalMatrix::from_columns(rows, ce_cols)?;
        out.push(LieDegreeComparison {
            degree: k,
            rank_generic: rank(&generic),
            rank_ce: rank(&d_ce),
            sign,
            agree: generic == ce,
        });
    }
    let agree = out.iter().all(|d| d.agree);
    Ok(LieReduction {
        dim: m,
        degrees: out,
        agree,
    })
}
