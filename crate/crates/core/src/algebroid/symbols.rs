use rayon::prelude::*;
use serde::Serialize;

use super::{function_family, PolyFilippovAlgebroid, PolyLinearBundleMap, PolySection};
use crate::arith::{MultiPoly, PolyVectorField};
use crate::combinat::sorted_tuples;
use crate::error::{dim_err, Error, Result};
use crate::report::{ser_idx, ser_one, Verdict};

fn check_map(abd: &PolyFilippovAlgebroid, n_op: &PolyLinearBundleMap) -> Result<()> {
    if n_op.rank() != abd.rank() || n_op.num_vars() != abd.num_vars() {
        return Err(dim_err("bundle map does not match the algebroid"));
    }
    Ok(())
}

fn with_n_on(n_op: &PolyLinearBundleMap, s: &[PolySection], on: &[usize]) -> Vec<PolySection> {
    s.iter()
        .enumerate()
        .map(|(i, x)| {
            if on.contains(&i) {
                n_op.apply(x).expect("shapes checked")
            } else {
                x.clone()
            }
        })
        .collect()
}

/// `[s_1, …, s_n]^k_N` on sections, where `[s]^0_N = [s]` and
/// `[s]^j_N = Σ_{|S|=j} [s with N applied on S] − N [s]^{j−1}_N`.
pub fn deformed_bracket(
    abd: &PolyFilippovAlgebroid,
    n_op: &PolyLinearBundleMap,
    s: &[PolySection],
    k: usize,
) -> Result<PolySection> {
    check_map(abd, n_op)?;
    let n = abd.arity();
    if k > n - 1 {
        return Err(Error::InvalidArgument(format!(
            "bracket level {k} outside 0..={}",
            n - 1
        )));
    }
    let mut cur = abd.section_bracket(s)?;
    for j in 1..=k {
        let mut next = n_op.apply(&cur)?.scale(&-crate::arith::one());
        for on in sorted_tuples(n, j) {
            next = next.add(&abd.section_bracket(&with_n_on(n_op, s, &on))?);
        }
        cur = next;
    }
    Ok(cur)
}

/// First input where the symbol of `[·]^k_N` differs from
/// `Σ_{i_1 < ⋯ < i_k} a(x_1, …, N x_{i_1}, …, N x_{i_k}, …, x_{n−1})`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NijenhuisSymbolWitness {
    pub level: usize,
    #[serde(serialize_with = "ser_idx")]
    pub on: Vec<usize>,
    #[serde(serialize_with = "ser_one")]
    pub z: usize,
    pub f: MultiPoly,
    pub lhs: PolySection,
    pub rhs: PolySection,
}

/// Verifies the symbols of the deformed brackets `[·]^k_N`, `1 ≤ k ≤ n−1`, by
/// evaluating both sides: `[x, f z]^k_N − f [x, z]^k_N` against the anchor sum
/// applied to `f`, times `z`.
///
/// Fails with [`Error::NotNijenhuis`] unless
/// `[N x_1, …, N x_n] = N [x_1, …, x_n]^{n−1}_N` on generators.
pub fn nijenhuis_symbol_check(
    abd: &PolyFilippovAlgebroid,
    n_op: &PolyLinearBundleMap,
) -> Result<Verdict<NijenhuisSymbolWitness>> {
    check_map(abd, n_op)?;
    let (n, r, nv) = (abd.arity(), abd.rank(), abd.num_vars());
    let gens = |t: &[usize]| t.iter().map(|&a| abd.generator(a)).collect::<Vec<_>>();
    for t in sorted_tuples(r, n) {
        let s = gens(&t);
        let all: Vec<usize> = (0..n).collect();
        let lhs = abd.section_bracket(&with_n_on(n_op, &s, &all))?;
        let rhs = n_op.apply(&deformed_bracket(abd, n_op, &s, n - 1)?)?;
        if lhs != rhs {
            return Err(Error::NotNijenhuis);
        }
    }

    let family = function_family(nv, 3);
    let mut cases = Vec::new();
    for k in 1..n {
        for x in sorted_tuples(r, n - 1) {
            for z in 0..r {
                for f in &family {
                    cases.push((k, x.clone(), z, f));
                }
            }
        }
    }
    let found = cases.into_par_iter().find_map_first(|(k, x, z, f)| {
        let xs = gens(&x);
        let zs = abd.generator(z);
        let at = |y: PolySection| {
            let mut args = xs.clone();
            args.push(y);
            deformed_bracket(abd, n_op, &args, k).expect("shapes checked")
        };
        let lhs = at(zs.mul_fn(f)).sub(&at(zs.clone()).mul_fn(f));
        let mut field = PolyVectorField::zero(nv);
        for on in sorted_tuples(n - 1, k) {
            field = field.add(&abd.anchor(&with_n_on(n_op, &xs, &on)).expect("shapes checked"));
        }
        let rhs = zs.mul_fn(&field.apply(f).expect("same base"));
        (lhs != rhs).then(|| NijenhuisSymbolWitness {
            level: k,
            on: x,
            z,
            f: f.clone(),
            lhs,
            rhs,
        })
    });
    Ok(match found {
        None => Verdict::holds(),
        Some(w) => Verdict::fails(w),
    })
}
