use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::arith::{QVec, Rational};
use crate::combinat::sort_sign;
use crate::error::{dim_err, Result};

/// Element of `Λ^g V` for `V = ℚ^m`, stored in the basis of sorted
/// `g`-tuples `e_{i1} ∧ ... ∧ e_{ig}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WedgeElement {
    grade: usize,
    dim: usize,
    coords: BTreeMap<Vec<usize>, Rational>,
}

impl WedgeElement {
    pub fn zero(grade: usize, dim: usize) -> Self {
        Self {
            grade,
            dim,
            coords: BTreeMap::new(),
        }
    }

    /// `c · e_{t1} ∧ ... ∧ e_{tg}` for an arbitrary (unsorted) index tuple.
    pub fn basis_scaled(dim: usize, tuple: &[usize], c: Rational) -> Result<Self> {
        let mut w = Self::zero(tuple.len(), dim);
        if tuple.iter().any(|&i| i >= dim) {
            return Err(dim_err("wedge index out of range"));
        }
        w.add_basis(tuple, c);
        Ok(w)
    }

    pub fn basis(dim: usize, tuple: &[usize]) -> Result<Self> {
        Self::basis_scaled(dim, tuple, Rational::one())
    }

    /// Wedge product of `grade` vectors.
    pub fn from_vectors(dim: usize, vectors: &[QVec]) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != dim) {
            return Err(dim_err("wedge factor has wrong length"));
        }
        let mut w = Self::zero(vectors.len(), dim);
        let mut idx = Vec::with_capacity(vectors.len());
        fn rec(vs: &[QVec], c: Rational, idx: &mut Vec<usize>, w: &mut WedgeElement) {
            if idx.len() == vs.len() {
                w.add_basis(idx, c);
                return;
            }
            let v = &vs[idx.len()];
            for (i, x) in v.iter().enumerate() {
                if x.is_zero() || idx.contains(&i) {
                    continue;
                }
                idx.push(i);
                rec(vs, &c * x, idx, w);
                idx.pop();
            }
        }
        rec(vectors, Rational::one(), &mut idx, &mut w);
        Ok(w)
    }

    /// Adds `c · e_tuple` with the sign of the sorting permutation; repeated
    /// indices contribute nothing.
    pub fn add_basis(&mut self, tuple: &[usize], c: Rational) {
        if c.is_zero() {
            return;
        }
        let mut t = tuple.to_vec();
        let Some(sign) = sort_sign(&mut t) else {
            return;
        };
        let c = if sign < 0 { -c } else { c };
        let e = self.coords.entry(t.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coords.remove(&t);
        }
    }

    pub fn add_scaled(&mut self, c: &Rational, other: &Self) {
        for (t, x) in &other.coords {
            self.add_basis(t, c * x);
        }
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.coords.iter()
    }

    pub fn coord(&self, sorted: &[usize]) -> Rational {
        self.coords.get(sorted).cloned().unwrap_or_else(Rational::zero)
    }
}
