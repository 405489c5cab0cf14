//! Polynomials in `t` with vector or matrix coefficients, optionally
//! truncated above a given power.

use crate::arith::{axpy, zero_vec, QVec, Rational};
use crate::nlie::{LinearMap, NLieAlgebra};

/// Coefficient `i` is the `t^i` part.
pub(crate) type Series = Vec<QVec>;

fn cap(len: usize, max: Option<usize>) -> usize {
    max.map_or(len, |m| len.min(m + 1))
}

/// `(Σ t^i A_i)(Σ t^j v_j)`.
pub(crate) fn apply(maps: &[LinearMap], v: &Series, max: Option<usize>) -> Series {
    let dim = maps[0].rows();
    let len = cap(maps.len() + v.len() - 1, max);
    let mut out = vec![zero_vec(dim); len];
    for (i, a) in maps.iter().enumerate() {
        for (j, x) in v.iter().enumerate() {
            if i + j < len {
                let y = a.apply(x).expect("square maps of matching size");
                axpy(&mut out[i + j], &Rational::from_integer(1.into()), &y);
            }
        }
    }
    out
}

/// `Σ_a t^a [args]_a` with every argument a series, expanded
/// multilinearly.
pub(crate) fn bracket(brackets: &[NLieAlgebra], args: &[Series], max: Option<usize>) -> Series {
    let dim = brackets[0].dim();
    let full = brackets.len() - 1 + args.iter().map(|s| s.len() - 1).sum::<usize>() + 1;
    let len = cap(full, max);
    let mut out = vec![zero_vec(dim); len];
    let mut pick = Vec::with_capacity(args.len());
    fn rec(brackets: &[NLieAlgebra], args: &[Series], pick: &mut Vec<QVec>, power: usize, out: &mut Series) {
        if power >= out.len() {
            return;
        }
        let slot = pick.len();
        if slot == args.len() {
            for (a, br) in brackets.iter().enumerate() {
                if power + a < out.len() {
                    let v = br.bracket_vecs(pick);
                    axpy(&mut out[power + a], &Rational::from_integer(1.into()), &v);
                }
            }
            return;
        }
        for (i, x) in args[slot].iter().enumerate() {
            pick.push(x.clone());
            rec(brackets, args, pick, power + i, out);
            pick.pop();
        }
    }
    rec(brackets, args, &mut pick, 0, &mut out);
    out
}

/// Coefficients of `(Σ t^i A_i)^{-1}` up to `t^order`, for `A_0 = Id`.
pub(crate) fn inverse(maps: &[LinearMap], order: usize) -> Vec<LinearMap> {
    let dim = maps[0].rows();
    let mut inv = vec![LinearMap::identity(dim)];
    for j in 1..=order {
        let mut acc = LinearMap::zero(dim, dim);
        for i in 1..=j.min(maps.len() - 1) {
            acc = acc.sub(&maps[i].mul(&inv[j - i]).expect("square")).expect("square");
        }
        inv.push(acc);
    }
    inv
}

/// `(Σ t^i A_i)(Σ t^j B_j)` up to `t^order`.
pub(crate) fn product(a: &[LinearMap], b: &[LinearMap], order: usize) -> Vec<LinearMap> {
    let dim = a[0].rows();
    (0..=order)
        .map(|r| {
            let mut acc = LinearMap::zero(dim, dim);
            for i in 0..=r.min(a.len() - 1) {
                if r - i < b.len() {
                    acc = acc.add(&a[i].mul(&b[r - i]).expect("square")).expect("square");
                }
            }
            acc
        })
        .collect()
}

pub(crate) fn pad(mut s: Series, len: usize, dim: usize) -> Series {
    while s.len() < len {
        s.push(zero_vec(dim));
    }
    s
}
