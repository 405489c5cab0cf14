use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::NLieAlgebra;
use crate::arith::{axpy, is_zero_vec, unit_vec, zero_vec, QVec, Rational, RationalMatrix};
use crate::combinat::{sort_sign, sorted_tuples};
use crate::error::{dim_err, Error, Result};
use crate::report::{ser_idx, ser_qvec, Verdict};

/// Representation `ρ : Λ^{n−1} L × E → E` of an n-Lie algebra on `E = ℚ^r`.
///
/// Stored on (sorted algebra tuple, module basis index) pairs and extended
/// skew-multilinearly in the algebra slots and linearly in the module slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    arity: usize,
    algebra_dim: usize,
    module_dim: usize,
    action: BTreeMap<(Vec<usize>, usize), QVec>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RepresentationWitness {
    /// Which representation condition failed (1 or 2).
    pub condition: u8,
    #[serde(serialize_with = "ser_idx")]
    pub x: Vec<usize>,
    #[serde(serialize_with = "ser_idx")]
    pub y: Vec<usize>,
    /// Module basis index, 1-based when serialized.
    #[serde(serialize_with = "crate::report::ser_one")]
    pub xi: usize,
    #[serde(serialize_with = "ser_qvec")]
    pub lhs: QVec,
    #[serde(serialize_with = "ser_qvec")]
    pub rhs: QVec,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OOperatorWitness {
    /// Module basis tuple `ξ_1..ξ_n`.
    #[serde(serialize_with = "ser_idx")]
    pub xi: Vec<usize>,
    #[serde(serialize_with = "ser_qvec")]
    pub lhs: QVec,
    #[serde(serialize_with = "ser_qvec")]
    pub rhs: QVec,
}

impl Representation {
    pub fn zero(arity: usize, algebra_dim: usize, module_dim: usize) -> Result<Self> {
        if arity < 2 || algebra_dim == 0 || module_dim == 0 {
            return Err(Error::InvalidArgument(
                "representation needs n >= 2 and positive dimensions".into(),
            ));
        }
        Ok(Self {
            arity,
            algebra_dim,
            module_dim,
            action: BTreeMap::new(),
        })
    }

    /// Adds `value` to `ρ(e_on, ξ_of)`; `on` has length `n − 1`, any order.
    pub fn add_action(&mut self, on: &[usize], of: usize, value: &[Rational]) -> Result<()> {
        if on.len() != self.arity - 1 {
            return Err(dim_err("action key must have n-1 algebra indices"));
        }
        if on.iter().any(|&i| i >= self.algebra_dim) || of >= self.module_dim {
            return Err(dim_err("action index out of range"));
        }
        if value.len() != self.module_dim {
            return Err(dim_err("action value must lie in the module"));
        }
        let mut key = on.to_vec();
        let sign =
            sort_sign(&mut key).ok_or_else(|| Error::InvalidArgument("repeated algebra index in action key".into()))?;
        let k = (key, of);
        let entry = self
            .action
            .entry(k.clone())
            .or_insert_with(|| zero_vec(self.module_dim));
        axpy(entry, &Rational::from_integer(sign.into()), value);
        if is_zero_vec(entry) {
            self.action.remove(&k);
        }
        Ok(())
    }

    /// Adjoint representation `ρ(x_1..x_{n−1}, y) = [x_1..x_{n−1}, y]`.
    pub fn adjoint(alg: &NLieAlgebra) -> Self {
        let n = alg.arity();
        let m = alg.dim();
        let mut rep = Self::zero(n, m, m).expect("valid algebra");
        for t in sorted_tuples(m, n - 1) {
            for j in 0..m {
                let mut key = t.clone();
                key.push(j);
                let v = alg.bracket_basis(&key);
                if !is_zero_vec(&v) {
                    rep.add_action(&t, j, &v).expect("in range");
                }
            }
        }
        rep
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        out.action.retain(|_, _| !c.is_zero());
        for v in out.action.values_mut() {
            for x in v.iter_mut() {
                *x *= c;
            }
        }
        out
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn action(&self) -> &BTreeMap<(Vec<usize>, usize), QVec> {
        &self.action
    }

    /// `ρ(e_t, ξ_j)` for an arbitrary algebra tuple.
    pub fn act_basis(&self, t: &[usize], j: usize) -> QVec {
        let mut key = t.to_vec();
        match sort_sign(&mut key) {
            None => zero_vec(self.module_dim),
            Some(sign) => match self.action.get(&(key, j)) {
                None => zero_vec(self.module_dim),
                Some(v) if sign > 0 => v.clone(),
                Some(v) => v.iter().map(|x| -x).collect(),
            },
        }
    }

    /// `ρ(x_1, …, x_{n−1}, ξ)` on arbitrary vectors.
    pub fn act(&self, xs: &[QVec], xi: &[Rational]) -> Result<QVec> {
        if xs.len() != self.arity - 1 || xs.iter().any(|x| x.len() != self.algebra_dim) || xi.len() != self.module_dim {
            return Err(dim_err("representation arguments have wrong shape"));
        }
        Ok(self.act_vecs(xs, xi))
    }

    pub(crate) fn act_vecs(&self, xs: &[QVec], xi: &[Rational]) -> QVec {
        let mut out = zero_vec(self.module_dim);
        if self.action.is_empty() {
            return out;
        }
        let mut idx = Vec::new();
        self.expand(xs, xi, Rational::one(), &mut idx, &mut out);
        out
    }

    fn expand(&self, xs: &[QVec], xi: &[Rational], c: Rational, idx: &mut Vec<usize>, out: &mut QVec) {
        if idx.len() == xs.len() {
            for (j, xj) in xi.iter().enumerate() {
                if xj.is_zero() {
                    continue;
                }
                let v = self.act_basis(idx, j);
                axpy(out, &(&c * xj), &v);
            }
            return;
        }
        for (i, x) in xs[idx.len()].iter().enumerate() {
            if x.is_zero() || idx.contains(&i) {
                continue;
            }
            idx.push(i);
            self.expand(xs, xi, &c * x, idx, out);
            idx.pop();
        }
    }

    fn check_dims(&self, alg: &NLieAlgebra) -> Result<()> {
        if alg.arity() != self.arity || alg.dim() != self.algebra_dim {
            return Err(dim_err(format!(
                "representation of a {}-ary algebra of dimension {} used with a {}-ary algebra of dimension {}",
                self.arity,
                self.algebra_dim,
                alg.arity(),
                alg.dim()
            )));
        }
        Ok(())
    }

    /// Checks the two representation conditions on all basis tuples:
    ///
    /// 1. `ρ(x, ρ(y, ξ)) − ρ(y, ρ(x, ξ)) = Σ_i ρ(y_1, …, [x, y_i], …, y_{n−1}, ξ)`
    /// 2. `ρ(x_1..x_{n−2}, [y_1..y_n], ξ) = Σ_i (−1)^{n−i} ρ(y_1..ŷ_i..y_n, ρ(x_1..x_{n−2}, y_i, ξ))`
    ///
    /// The alternating sign in (2) is what makes the adjoint action of any
    /// n-Lie algebra a representation.
    pub fn check(&self, alg: &NLieAlgebra) -> Result<Verdict<RepresentationWitness>> {
        self.check_dims(alg)?;
        let n = self.arity;
        let m = self.algebra_dim;
        let e = |i: usize| unit_vec(m, i);
        let xi_vec = |j: usize| unit_vec(self.module_dim, j);
        let wedges = sorted_tuples(m, n - 1);
        for x in &wedges {
            for y in &wedges {
                for j in 0..self.module_dim {
                    let xv: Vec<QVec> = x.iter().map(|&i| e(i)).collect();
                    let yv: Vec<QVec> = y.iter().map(|&i| e(i)).collect();
                    let inner_y = self.act_basis(y, j);
                    let inner_x = self.act_basis(x, j);
                    let mut lhs = self.act_vecs(&xv, &inner_y);
                    let sub = self.act_vecs(&yv, &inner_x);
                    axpy(&mut lhs, &-Rational::one(), &sub);
                    let mut rhs = zero_vec(self.module_dim);
                    for i in 0..n - 1 {
                        let mut args = xv.clone();
                        args.push(yv[i].clone());
                        let mut ys = yv.clone();
                        ys[i] = alg.bracket_vecs(&args);
                        axpy(&mut rhs, &Rational::one(), &self.act_vecs(&ys, &xi_vec(j)));
                    }
                    if lhs != rhs {
                        return Ok(Verdict::fails(RepresentationWitness {
                            condition: 1,
                            x: x.clone(),
                            y: y.clone(),
                            xi: j,
                            lhs,
                            rhs,
                        }));
                    }
                }
            }
        }
        for x in sorted_tuples(m, n - 2) {
            for y in sorted_tuples(m, n) {
                for j in 0..self.module_dim {
                    let xv: Vec<QVec> = x.iter().map(|&i| e(i)).collect();
                    let yv: Vec<QVec> = y.iter().map(|&i| e(i)).collect();
                    let mut args = xv.clone();
                    args.push(alg.bracket_vecs(&yv));
                    let lhs = self.act_vecs(&args, &xi_vec(j));
                    let mut rhs = zero_vec(self.module_dim);
                    for i in 0..n {
                        let mut inner_args = xv.clone();
                        inner_args.push(yv[i].clone());
                        let inner = self.act_vecs(&inner_args, &xi_vec(j));
                        let hat: Vec<QVec> = (0..n).filter(|&l| l != i).map(|l| yv[l].clone()).collect();
                        // 0-based i: (−1)^{n−(i+1)}
                        let sign = if (n - 1 - i).is_multiple_of(2) {
                            Rational::one()
                        } else {
                            -Rational::one()
                        };
                        axpy(&mut rhs, &sign, &self.act_vecs(&hat, &inner));
                    }
                    if lhs != rhs {
                        return Ok(Verdict::fails(RepresentationWitness {
                            condition: 2,
                            x: x.clone(),
                            y: y.clone(),
                            xi: j,
                            lhs,
                            rhs,
                        }));
                    }
                }
            }
        }
        Ok(Verdict::holds())
    }

    /// Semidirect product `L ⋉_ρ E` on `ℚ^{m+r}` (algebra basis first):
    /// `[x_1+ξ_1, …, x_n+ξ_n] = [x_1..x_n] + Σ_i (−1)^{n−i} ρ(x_1..x̂_i..x_n, ξ_i)`.
    pub fn semidirect_product(&self, alg: &NLieAlgebra) -> Result<NLieAlgebra> {
        if !self.check(alg)?.is_holds() {
            return Err(Error::InvalidRepresentation);
        }
        self.semidirect_unchecked(alg)
    }

    pub(crate) fn semidirect_unchecked(&self, alg: &NLieAlgebra) -> Result<NLieAlgebra> {
        self.check_dims(alg)?;
        let m = self.algebra_dim;
        let r = self.module_dim;
        let mut out = NLieAlgebra::zero(self.arity, m + r)?;
        for (k, v) in alg.structure() {
            let mut val = v.clone();
            val.extend(zero_vec(r));
            out.add_bracket(k, &val)?;
        }
        // Sorted keys with exactly one module index have it in last position,
        // where the sign (−1)^{n−n} is +1.
        for ((t, j), v) in &self.action {
            let mut key = t.clone();
            key.push(m + j);
            let mut val = zero_vec(m);
            val.extend(v.iter().cloned());
            out.add_bracket(&key, &val)?;
        }
        Ok(out)
    }

    /// Checks `[Tξ_1..Tξ_n] = Σ_i (−1)^{n−i} T ρ(Tξ_1..T̂ξ_i..Tξ_n, ξ_i)` on
    /// sorted module basis tuples (both sides are skew in the `ξ`).
    pub fn check_o_operator(&self, alg: &NLieAlgebra, t: &RationalMatrix) -> Result<Verdict<OOperatorWitness>> {
        self.check_dims(alg)?;
        if t.rows() != self.algebra_dim || t.cols() != self.module_dim {
            return Err(dim_err("O-operator must be a map E -> L"));
        }
        let n = self.arity;
        for xi in sorted_tuples(self.module_dim, n) {
            let txi: Vec<QVec> = xi
                .iter()
                .map(|&j| t.apply(&unit_vec(self.module_dim, j)))
                .collect::<Result<_>>()?;
            let lhs = alg.bracket_vecs(&txi);
            let mut rhs = zero_vec(self.algebra_dim);
            for i in 0..n {
                let hat: Vec<QVec> = (0..n).filter(|&l| l != i).map(|l| txi[l].clone()).collect();
                let inner = self.act_vecs(&hat, &unit_vec(self.module_dim, xi[i]));
                let sign = if (n - 1 - i).is_multiple_of(2) {
                    Rational::one()
                } else {
                    -Rational::one()
                };
                axpy(&mut rhs, &sign, &t.apply(&inner)?);
            }
            if lhs != rhs {
                return Ok(Verdict::fails(OOperatorWitness { xi, lhs, rhs }));
            }
        }
        Ok(Verdict::holds())
    }
}
