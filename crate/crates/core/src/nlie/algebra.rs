use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::WedgeElement;
use crate::arith::{axpy, is_zero_vec, unit_vec, zero_vec, QVec, Rational, RationalMatrix};
use crate::combinat::{sort_sign, sorted_tuples};
use crate::error::{dim_err, Error, Result};
use crate::report::{ser_idx, ser_qvec, Verdict};

/// Filippov (n-Lie) algebra on `ℚ^m` given by structure constants.
///
/// The bracket is stored on strictly increasing index tuples only; any other
/// tuple is obtained by sorting with the permutation sign, and tuples with a
/// repeated index bracket to zero. Absent keys are zero brackets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NLieAlgebra {
    arity: usize,
    dim: usize,
    structure: BTreeMap<Vec<usize>, QVec>,
}

/// Failing instance of the fundamental identity
/// `[a, [b_1..b_n]] = Σ_i [b_1.., [a, b_i], ..b_n]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiWitness {
    #[serde(serialize_with = "ser_idx")]
    pub a: Vec<usize>,
    #[serde(serialize_with = "ser_idx")]
    pub b: Vec<usize>,
    #[serde(serialize_with = "ser_qvec")]
    pub lhs: QVec,
    #[serde(serialize_with = "ser_qvec")]
    pub rhs: QVec,
    /// `lhs − rhs`.
    #[serde(serialize_with = "ser_qvec")]
    pub defect: QVec,
}

impl NLieAlgebra {
    /// The zero bracket of the given arity on `ℚ^dim`.
    pub fn zero(arity: usize, dim: usize) -> Result<Self> {
        if arity < 2 {
            return Err(Error::InvalidArgument(format!("arity must be at least 2, got {arity}")));
        }
        if dim < 1 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        Ok(Self {
            arity,
            dim,
            structure: BTreeMap::new(),
        })
    }

    /// Builds from `(index tuple, value)` pairs with 0-based indices in any
    /// order (the value is adjusted by the sorting sign).
    pub fn from_brackets(
        arity: usize,
        dim: usize,
        brackets: impl IntoIterator<Item = (Vec<usize>, QVec)>,
    ) -> Result<Self> {
        let mut a = Self::zero(arity, dim)?;
        for (on, value) in brackets {
            a.add_bracket(&on, &value)?;
        }
        Ok(a)
    }

    /// Adds `value` to the bracket of the given basis tuple.
    pub fn add_bracket(&mut self, on: &[usize], value: &[Rational]) -> Result<()> {
        if on.len() != self.arity {
            return Err(dim_err(format!(
                "bracket key of length {} for arity {}",
                on.len(),
                self.arity
            )));
        }
        if value.len() != self.dim || on.iter().any(|&i| i >= self.dim) {
            return Err(dim_err("bracket entry out of range"));
        }
        let mut key = on.to_vec();
        let sign = sort_sign(&mut key)
            .ok_or_else(|| Error::InvalidArgument(format!("repeated index in bracket key {on:?}")))?;
        let entry = self.structure.entry(key.clone()).or_insert_with(|| zero_vec(self.dim));
        let s = Rational::from_integer(sign.into());
        axpy(entry, &s, value);
        if is_zero_vec(entry) {
            self.structure.remove(&key);
        }
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Nonzero structure constants keyed by sorted 0-based tuples.
    pub fn structure(&self) -> &BTreeMap<Vec<usize>, QVec> {
        &self.structure
    }

    pub fn is_zero_bracket(&self) -> bool {
        self.structure.is_empty()
    }

    /// Bracket of basis vectors `[e_{t1}, ..., e_{tn}]`.
    pub fn bracket_basis(&self, tuple: &[usize]) -> QVec {
        let mut key = tuple.to_vec();
        match sort_sign(&mut key) {
            None => zero_vec(self.dim),
            Some(sign) => match self.structure.get(&key) {
                None => zero_vec(self.dim),
                Some(v) if sign > 0 => v.clone(),
                Some(v) => v.iter().map(|x| -x).collect(),
            },
        }
    }

    /// Bracket of `n` arbitrary vectors by multilinear skew extension.
    pub fn bracket_eval(&self, args: &[QVec]) -> Result<QVec> {
        if args.len() != self.arity {
            return Err(dim_err(format!(
                "bracket takes {} arguments, got {}",
                self.arity,
                args.len()
            )));
        }
        if args.iter().any(|v| v.len() != self.dim) {
            return Err(dim_err("bracket argument has wrong length"));
        }
        Ok(self.bracket_vecs(args))
    }

    pub(crate) fn bracket_vecs(&self, args: &[QVec]) -> QVec {
        let mut out = zero_vec(self.dim);
        if self.structure.is_empty() {
            return out;
        }
        let mut idx = Vec::with_capacity(self.arity);
        self.expand(args, Rational::one(), &mut idx, &mut out);
        out
    }

    fn expand(&self, args: &[QVec], c: Rational, idx: &mut Vec<usize>, out: &mut QVec) {
        let depth = idx.len();
        if depth == args.len() {
            let mut key = idx.clone();
            if let Some(sign) = sort_sign(&mut key) {
                if let Some(v) = self.structure.get(&key) {
                    let c = if sign < 0 { -c } else { c };
                    axpy(out, &c, v);
                }
            }
            return;
        }
        for (i, x) in args[depth].iter().enumerate() {
            if x.is_zero() || idx.contains(&i) {
                continue;
            }
            idx.push(i);
            self.expand(args, &c * x, idx, out);
            idx.pop();
        }
    }

    /// Basis vectors as dense rational vectors.
    pub(crate) fn e(&self, i: usize) -> QVec {
        unit_vec(self.dim, i)
    }

    /// `[a_1..a_{n-1}, y]` for a wedge `a` of grade `n − 1`, extended
    /// linearly over the wedge coordinates.
    pub fn act(&self, x: &WedgeElement, y: &[Rational]) -> Result<QVec> {
        if x.grade() != self.arity - 1 || x.dim() != self.dim {
            return Err(dim_err("acting wedge must have grade n-1"));
        }
        if y.len() != self.dim {
            return Err(dim_err("vector has wrong length"));
        }
        let mut out = zero_vec(self.dim);
        for (t, c) in x.terms() {
            let mut args: Vec<QVec> = t.iter().map(|&i| self.e(i)).collect();
            args.push(y.to_vec());
            axpy(&mut out, c, &self.bracket_vecs(&args));
        }
        Ok(out)
    }

    /// Matrix of `ad_X : y ↦ [x_1, …, x_{n−1}, y]`.
    pub fn ad_map(&self, x: &WedgeElement) -> Result<RationalMatrix> {
        let cols = (0..self.dim)
            .map(|j| self.act(x, &self.e(j)))
            .collect::<Result<Vec<_>>>()?;
        RationalMatrix::from_columns(self.dim, cols)
    }

    /// Exhaustive check of the fundamental identity over sorted basis tuples.
    ///
    /// Both sides are multilinear and skew in the `a` and in the `b`
    /// arguments separately, so sorted tuples are sufficient. The reported
    /// witness is the lexicographically smallest failing `(a, b)`.
    pub fn check_fundamental_identity(&self) -> Verdict<FiWitness> {
        let n = self.arity;
        if self.structure.is_empty() {
            return Verdict::holds();
        }
        let a_tuples = sorted_tuples(self.dim, n - 1);
        let b_tuples = sorted_tuples(self.dim, n);
        for a in &a_tuples {
            for b in &b_tuples {
                let (lhs, rhs) = self.fi_sides(a, b);
                if lhs != rhs {
                    let defect = lhs.iter().zip(&rhs).map(|(l, r)| l - r).collect();
                    return Verdict::fails(FiWitness {
                        a: a.clone(),
                        b: b.clone(),
                        lhs,
                        rhs,
                        defect,
                    });
                }
            }
        }
        Verdict::holds()
    }

    /// Both sides of the fundamental identity on basis tuples.
    pub fn fi_sides(&self, a: &[usize], b: &[usize]) -> (QVec, QVec) {
        let av: Vec<QVec> = a.iter().map(|&i| self.e(i)).collect();
        let bv: Vec<QVec> = b.iter().map(|&i| self.e(i)).collect();
        self.fi_sides_vecs(&av, &bv)
    }

    /// Both sides of the fundamental identity on arbitrary vectors.
    pub fn fi_sides_vecs(&self, a: &[QVec], b: &[QVec]) -> (QVec, QVec) {
        let inner = self.bracket_vecs(b);
        let mut args = a.to_vec();
        args.push(inner);
        let lhs = self.bracket_vecs(&args);
        let mut rhs = zero_vec(self.dim);
        for i in 0..b.len() {
            let mut a_args = a.to_vec();
            a_args.push(b[i].clone());
            let adb = self.bracket_vecs(&a_args);
            let mut outer = b.to_vec();
            outer[i] = adb;
            let v = self.bracket_vecs(&outer);
            axpy(&mut rhs, &Rational::one(), &v);
        }
        (lhs, rhs)
    }

    /// Leibniz bracket on `Λ^{n−1}`:
    /// `[X, y_1∧…∧y_{n−1}] = Σ_i y_1 ∧ … ∧ [X, y_i] ∧ … ∧ y_{n−1}`.
    pub fn fundamental_bracket(&self, x: &WedgeElement, y: &WedgeElement) -> Result<WedgeElement> {
        let g = self.arity - 1;
        if x.grade() != g || y.grade() != g {
            return Err(dim_err(format!("fundamental bracket needs two wedges of grade {g}")));
        }
        if x.dim() != self.dim || y.dim() != self.dim {
            return Err(dim_err("wedge dimension differs from algebra dimension"));
        }
        let mut out = WedgeElement::zero(g, self.dim);
        for (yt, yc) in y.terms() {
            for i in 0..g {
                let v = self.act(x, &self.e(yt[i]))?;
                for (l, vl) in v.iter().enumerate() {
                    if vl.is_zero() {
                        continue;
                    }
                    let mut t = yt.clone();
                    t[i] = l;
                    out.add_basis(&t, yc * vl);
                }
            }
        }
        Ok(out)
    }

    /// Relabels the basis by `perm` (new index of old basis vector `i` is
    /// `perm[i]`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.dim {
            return Err(dim_err("permutation length must equal the dimension"));
        }
        let mut out = Self::zero(self.arity, self.dim)?;
        for (k, v) in &self.structure {
            let key: Vec<usize> = k.iter().map(|&i| perm[i]).collect();
            let mut val = zero_vec(self.dim);
            for (i, x) in v.iter().enumerate() {
                val[perm[i]] = x.clone();
            }
            out.add_bracket(&key, &val)?;
        }
        Ok(out)
    }

    /// Bracket transported along an invertible change of basis `g`:
    /// `[x_1..x_n]' = g [g⁻¹x_1, …, g⁻¹x_n]`, given `g` and its inverse.
    pub fn transport(&self, g: &RationalMatrix, g_inv: &RationalMatrix) -> Result<Self> {
        let mut out = Self::zero(self.arity, self.dim)?;
        for t in sorted_tuples(self.dim, self.arity) {
            let args = t.iter().map(|&i| g_inv.apply(&self.e(i))).collect::<Result<Vec<_>>>()?;
            let v = g.apply(&self.bracket_vecs(&args))?;
            if !is_zero_vec(&v) {
                out.add_bracket(&t, &v)?;
            }
        }
        Ok(out)
    }

    /// Multiplies every structure constant by `c`.
    pub fn scaled(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        if c.is_zero() {
            out.structure.clear();
            return out;
        }
        for v in out.structure.values_mut() {
            for x in v.iter_mut() {
                *x *= c;
            }
        }
        out
    }
}
