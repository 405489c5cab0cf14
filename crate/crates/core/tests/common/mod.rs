//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls the differentials, products or rank code of the
//! library. Structure constants are read directly; `embed` only uses cochain
//! storage.

#![allow(dead_code)]

use filippov::arith::{q, unit_vec, zero_vec, QVec, Rational};
use filippov::cochains::Cochain;
use filippov::combinat::{all_tuples, sorted_tuples};
use filippov::{LinearMap, NLieAlgebra};
use num_traits::{One, Zero};

/// Sorts a tuple, returning its sign, or `None` on repeated entries.
pub fn sorted_with_sign(t: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = t.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// Lie bracket of basis vectors read from structure constants (n = 2).
fn lie(alg: &NLieAlgebra, i: usize, j: usize) -> QVec {
    let m = alg.dim();
    match sorted_with_sign(&[i, j]) {
        None => zero_vec(m),
        Some((k, s)) => match alg.structure().get(&k) {
            None => zero_vec(m),
            Some(v) => v.iter().map(|x| x * q(s.into())).collect(),
        },
    }
}

/// An alternating `k`-form on `ℚ^m` with values in `ℚ^m`, stored on sorted
/// tuples.
#[derive(Clone, Debug)]
pub struct AltForm {
    pub m: usize,
    pub k: usize,
    pub values: std::collections::BTreeMap<Vec<usize>, QVec>,
}

impl AltForm {
    pub fn at(&self, t: &[usize]) -> QVec {
        match sorted_with_sign(t) {
            None => zero_vec(self.m),
            Some((s, sign)) => match self.values.get(&s) {
                None => zero_vec(self.m),
                Some(v) => v.iter().map(|x| x * q(sign.into())).collect(),
            },
        }
    }

    /// Multilinear evaluation with the first slot a general vector.
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

    /// Elementary forms `e_t ↦ e_k` for every sorted tuple `t`.
    pub fn basis(m: usize, k: usize) -> Vec<AltForm> {
        let mut out = Vec::new();
        for t in sorted_tuples(m, k) {
            for l in 0..m {
                let mut v = zero_vec(m);
                v[l] = Rational::one();
                out.push(AltForm {
                    m,
                    k,
                    values: [(t.clone(), v)].into_iter().collect(),
                });
            }
        }
        out
    }
}

/// Chevalley–Eilenberg differential of the adjoint representation, on basis
/// arguments `x_0, …, x_k`:
/// `Σ_i (−1)^i [x_i, ψ(..x̂_i..)] + Σ_{i<j} (−1)^{i+j} ψ([x_i, x_j], ..x̂_i..x̂_j..)`.
pub fn ce_differential_at(alg: &NLieAlgebra, psi: &AltForm, xs: &[usize]) -> QVec {
    let m = alg.dim();
    let mut out = zero_vec(m);
    let sgn = |e: usize| if e.is_multiple_of(2) { q(1) } else { q(-1) };
    for i in 0..xs.len() {
        let rest: Vec<usize> = xs
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != i)
            .map(|(_, &x)| x)
            .collect();
        let v = psi.at(&rest);
        for (l, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(lie(alg, xs[i], l)) {
                *o += sgn(i) * c * x;
            }
        }
        for j in i + 1..xs.len() {
            let bij = lie(alg, xs[i], xs[j]);
            let rest: Vec<usize> = xs
                .iter()
                .enumerate()
                .filter(|(l, _)| *l != i && *l != j)
                .map(|(_, &x)| x)
                .collect();
            for (o, x) in out.iter_mut().zip(psi.at_first(&bij, &rest)) {
                *o += sgn(i + j) * x;
            }
        }
    }
    out
}

/// `(α ∘ β)(x, y, z) = α(β(x, y), z) − α(x, β(y, z)) + α(y, β(x, z))` for
/// skew bilinear maps given as Lie-type algebras (n = 2).
pub fn nr_circle_at(alpha: &NLieAlgebra, beta: &NLieAlgebra, x: usize, y: usize, z: usize) -> QVec {
    let m = alpha.dim();
    let apply_first = |a: &NLieAlgebra, v: &[Rational], w: usize| -> QVec {
        let mut out = zero_vec(m);
        for (l, c) in v.iter().enumerate() {
            if !c.is_zero() {
                for (o, x) in out.iter_mut().zip(lie(a, l, w)) {
                    *o += c * x;
                }
            }
        }
        out
    };
    let apply_second =
        |a: &NLieAlgebra, w: usize, v: &[Rational]| -> QVec { apply_first(a, v, w).into_iter().map(|x| -x).collect() };
    let t1 = apply_first(alpha, &lie(beta, x, y), z);
    let t2 = apply_second(alpha, x, &lie(beta, y, z));
    let t3 = apply_second(alpha, y, &lie(beta, x, z));
    (0..m).map(|i| &t1[i] - &t2[i] + &t3[i]).collect()
}

/// Rank by plain Gaussian elimination over ℚ (no pivoting strategy, no
/// fraction-free tricks): deliberately naive.
pub fn naive_rank(rows: &[QVec]) -> usize {
    let mut a: Vec<QVec> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let piv = a[rank][c].clone();
        for r in 0..a.len() {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] / &piv;
                for cc in c..cols {
                    let d = &f * &a[rank][cc];
                    a[r][cc] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Chevalley–Eilenberg coboundary matrices of the adjoint representation,
/// built from [`ce_differential_at`] only.
pub fn ce_matrix(alg: &NLieAlgebra, k: usize) -> Vec<QVec> {
    let m = alg.dim();
    let forms = if k == 0 {
        (0..m)
            .map(|x| AltForm {
                m,
                k: 0,
                values: [(vec![], unit_vec(m, x))].into_iter().collect(),
            })
            .collect()
    } else {
        AltForm::basis(m, k)
    };
    // rows = basis forms, columns = output coordinates (transpose has the same rank)
    forms
        .iter()
        .map(|f| {
            sorted_tuples(m, k + 1)
                .iter()
                .flat_map(|t| ce_differential_at(alg, f, t))
                .collect()
        })
        .collect()
}

/// `dim H^k_CE(L, L)` with naive ranks.
pub fn ce_betti(alg: &NLieAlgebra, k: usize) -> usize {
    let m = alg.dim();
    let dim = if k == 0 { m } else { sorted_tuples(m, k).len() * m };
    let out = naive_rank(&ce_matrix(alg, k));
    let inn = if k == 0 { 0 } else { naive_rank(&ce_matrix(alg, k - 1)) };
    dim - out - inn
}

/// `[Nx_1..Nx_n]` and `N([x]^{n−1}_N)` evaluated from scratch: the deformed
/// brackets are expanded over all subsets with plain recursion.
pub fn nijenhuis_sides(alg: &NLieAlgebra, n_op: &LinearMap, t: &[usize]) -> (QVec, QVec) {
    let m = alg.dim();
    let n = t.len();
    let col = |i: usize| n_op.column(i);
    let lhs = bracket_oracle(alg, &t.iter().map(|&i| col(i)).collect::<Vec<_>>());
    let mut level = bracket_oracle(alg, &t.iter().map(|&i| unit_vec(m, i)).collect::<Vec<_>>());
    for k in 1..n {
        let mut next: QVec = n_op.apply(&level).unwrap().into_iter().map(|x| -x).collect();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let args: Vec<QVec> = (0..n)
                .map(|l| {
                    if mask & (1 << l) != 0 {
                        col(t[l])
                    } else {
                        unit_vec(m, t[l])
                    }
                })
                .collect();
            for (a, b) in next.iter_mut().zip(bracket_oracle(alg, &args)) {
                *a += b;
            }
        }
        level = next;
    }
    (lhs, n_op.apply(&level).unwrap())
}

pub fn oracle_is_nijenhuis(alg: &NLieAlgebra, n_op: &LinearMap) -> bool {
    sorted_tuples(alg.dim(), alg.arity()).iter().all(|t| {
        let (l, r) = nijenhuis_sides(alg, n_op, t);
        l == r
    })
}

/// Embeds an alternating form of degree `k ≥ 1` as a cochain of degree
/// `k − 1` (n = 2).
pub fn embed(form: &AltForm) -> Cochain {
    let m = form.m;
    let p = form.k as i32 - 1;
    let mut c = Cochain::zero(2, m, p).unwrap();
    if p == 0 {
        for z in 0..m {
            c.add_entry(&[], &[z], &form.at(&[z])).unwrap();
        }
        return c;
    }
    for head in all_tuples(m, form.k - 2) {
        for w in sorted_tuples(m, 2) {
            let blocks: Vec<Vec<usize>> = head.iter().map(|&i| vec![i]).collect();
            let mut t = head.clone();
            t.extend(&w);
            c.add_entry(&blocks, &w, &form.at(&t)).unwrap();
        }
    }
    c
}

/// `[v_1, …, v_n]` expanded multilinearly over basis indices.
pub fn bracket_oracle(alg: &NLieAlgebra, args: &[QVec]) -> QVec {
    let m = alg.dim();
    let mut out = zero_vec(m);
    for t in all_tuples(m, args.len()) {
        let c = t.iter().zip(args).fold(Rational::one(), |acc, (&i, v)| acc * &v[i]);
        if c.is_zero() {
            continue;
        }
        if let Some((s, sign)) = sorted_with_sign(&t) {
            if let Some(v) = alg.structure().get(&s) {
                for (o, x) in out.iter_mut().zip(v) {
                    *o += &c * x * q(sign.into());
                }
            }
        }
    }
    out
}

/// The fundamental identity on every pair of basis tuples:
/// `[x, [y_1..y_n]] = Σ_i [y_1..[x, y_i]..y_n]` with `x` an (n−1)-tuple.
pub fn oracle_fi_holds(alg: &NLieAlgebra) -> bool {
    let (n, m) = (alg.arity(), alg.dim());
    let e = |i: usize| unit_vec(m, i);
    let ad = |x: &[usize], v: QVec| {
        let mut args: Vec<QVec> = x.iter().map(|&i| e(i)).collect();
        args.push(v);
        bracket_oracle(alg, &args)
    };
    for x in sorted_tuples(m, n - 1) {
        for y in sorted_tuples(m, n) {
            let lhs = ad(&x, bracket_oracle(alg, &y.iter().map(|&i| e(i)).collect::<Vec<_>>()));
            let mut rhs = zero_vec(m);
            for i in 0..n {
                let args: Vec<QVec> = (0..n).map(|l| if l == i { ad(&x, e(y[l])) } else { e(y[l]) }).collect();
                for (o, v) in rhs.iter_mut().zip(bracket_oracle(alg, &args)) {
                    *o += v;
                }
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}
