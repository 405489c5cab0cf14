use num_traits::{One, Zero};
use rayon::prelude::*;

use super::cochain::{Cochain, Space};
use crate::arith::{axpy, unit_vec, zero_vec, QVec, Rational};
use crate::combinat::shuffles;
use crate::error::{Error, Result};
use crate::nlie::WedgeElement;

fn sign_q(s: i32) -> Rational {
    Rational::from_integer(s.into())
}

fn nonnegative(d: &Cochain) -> Result<usize> {
    usize::try_from(d.degree()).map_err(|_| Error::InvalidArgument("circle products need degrees ≥ 0".into()))
}

/// `(D_1 ∘ D_2)(X_1, …, X_{p+q}, z)` on arbitrary arguments.
///
/// For `k < p` and every `(k, q)`-shuffle `σ`, `D_2` is inserted into each
/// factor of `X_{k+q+1}` with sign `sgn σ · (−1)^{kq}`; the `k = p` term
/// composes `D_2` into the section slot with sign `sgn σ · (−1)^{pq}`.
pub(crate) fn circle_eval(sp: &Space, d1: &Cochain, d2: &Cochain, xs: &[&WedgeElement], z: &[Rational]) -> QVec {
    let m = sp.m;
    let p = d1.degree() as usize;
    let q = d2.degree() as usize;
    let mut out = zero_vec(m);
    let one = Rational::one();

    for k in 0..p {
        let kq_sign = if (k * q).is_multiple_of(2) { 1 } else { -1 };
        let target = xs[k + q];
        let tail = &xs[k + q + 1..];
        for sh in shuffles(k, q) {
            let a: Vec<&WedgeElement> = sh.perm[..k].iter().map(|&i| xs[i]).collect();
            let b: Vec<&WedgeElement> = sh.perm[k..].iter().map(|&i| xs[i]).collect();
            // Σ_s (x_1 ∧ … ∧ D_2(b, x_s) ∧ … ∧ x_{n−1})
            let mut inserted = WedgeElement::zero(sp.n - 1, m);
            for (t, c) in target.terms() {
                for s in 0..sp.n - 1 {
                    let mut v = zero_vec(m);
                    d2.eval_acc(sp, &b, &unit_vec(m, t[s]), &one, &mut v);
                    let mut u = t.clone();
                    for (l, vl) in v.iter().enumerate() {
                        if vl.is_zero() {
                            continue;
                        }
                        u[s] = l;
                        inserted.add_basis(&u, c * vl);
                    }
                }
            }
            if inserted.is_zero() {
                continue;
            }
            let mut args = a;
            args.push(&inserted);
            args.extend_from_slice(tail);
            d1.eval_acc(sp, &args, z, &sign_q(sh.sign * kq_sign), &mut out);
        }
    }

    let pq_sign = if (p * q).is_multiple_of(2) { 1 } else { -1 };
    for sh in shuffles(p, q) {
        let a: Vec<&WedgeElement> = sh.perm[..p].iter().map(|&i| xs[i]).collect();
        let b: Vec<&WedgeElement> = sh.perm[p..].iter().map(|&i| xs[i]).collect();
        let mut inner = zero_vec(m);
        d2.eval_acc(sp, &b, z, &one, &mut inner);
        d1.eval_acc(sp, &a, &inner, &sign_q(sh.sign * pq_sign), &mut out);
    }
    out
}

/// Assembles a degree `r` cochain from its values on the canonical basis
/// arguments of every key.
pub(crate) fn assemble<F>(sp: &Space, r: i32, f: F) -> Cochain
where
    F: Fn(&[&WedgeElement], &[Rational]) -> QVec + Sync,
{
    let m = sp.m;
    let keys = sp.keys(r);
    let vals: Vec<QVec> = (0..keys)
        .into_par_iter()
        .map(|key| {
            if r == 0 {
                f(&[], &unit_vec(m, key))
            } else {
                let (xs, z) = sp.key_args(r, key);
                let refs: Vec<&WedgeElement> = xs.iter().collect();
                f(&refs, &z)
            }
        })
        .collect();
    Cochain::from_values(sp.n, m, r, vals.into_iter().flatten().collect()).expect("assembled shape")
}

/// Full circle product `D_1 ∘ D_2` of degree `p + q`.
pub fn circle(d1: &Cochain, d2: &Cochain) -> Result<Cochain> {
    d1.same_space(d2)?;
    let r = (nonnegative(d1)? + nonnegative(d2)?) as i32;
    let sp = Space::new(d1.arity(), d1.dim());
    if d1.is_zero() || d2.is_zero() {
        return Cochain::zero(d1.arity(), d1.dim(), r);
    }
    Ok(assemble(&sp, r, |xs, z| circle_eval(&sp, d1, d2, xs, z)))
}

/// Graded bracket `[D_1, D_2] = (−1)^{pq} D_1 ∘ D_2 − D_2 ∘ D_1`.
pub fn gla_bracket(d1: &Cochain, d2: &Cochain) -> Result<Cochain> {
    d1.same_space(d2)?;
    let p = nonnegative(d1)?;
    let q = nonnegative(d2)?;
    let r = (p + q) as i32;
    if d1.is_zero() || d2.is_zero() {
        return Cochain::zero(d1.arity(), d1.dim(), r);
    }
    let sp = Space::new(d1.arity(), d1.dim());
    Ok(assemble(&sp, r, |xs, z| bracket_eval(&sp, d1, d2, p, q, xs, z)))
}

fn bracket_eval(
    sp: &Space,
    d1: &Cochain,
    d2: &Cochain,
    p: usize,
    q: usize,
    xs: &[&WedgeElement],
    z: &[Rational],
) -> QVec {
    let mut out = circle_eval(sp, d1, d2, xs, z);
    if (p * q) % 2 == 1 {
        for x in &mut out {
            *x = -x.clone();
        }
    }
    axpy(&mut out, &-Rational::one(), &circle_eval(sp, d2, d1, xs, z));
    out
}

/// `[D_1, D_2](X_1, …, X_{p+q}, z)` evaluated directly on arbitrary
/// arguments, without going through the stored representation.
///
/// Comparing this with the stored bracket on non-canonical splits of the
/// final wedge tests that the bracket stays skew in its last `n` slots.
pub fn gla_bracket_at(d1: &Cochain, d2: &Cochain, blocks: &[WedgeElement], z: &[Rational]) -> Result<QVec> {
    d1.same_space(d2)?;
    let p = nonnegative(d1)?;
    let q = nonnegative(d2)?;
    if blocks.len() != p + q || z.len() != d1.dim() {
        return Err(crate::error::dim_err("wrong number of arguments for the bracket"));
    }
    let sp = Space::new(d1.arity(), d1.dim());
    let refs: Vec<&WedgeElement> = blocks.iter().collect();
    Ok(bracket_eval(&sp, d1, d2, p, q, &refs, z))
}

/// `[D, D]` for a degree 1 cochain; zero exactly when `D` is a Filippov
/// bracket.
pub fn maurer_cartan_defect(d: &Cochain) -> Result<Cochain> {
    if d.degree() != 1 {
        return Err(Error::InvalidArgument(format!(
            "Maurer-Cartan defect needs degree 1, got {}",
            d.degree()
        )));
    }
    gla_bracket(d, d)
}
