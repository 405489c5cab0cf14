use num_traits::{One, Zero};

use crate::arith::{axpy, is_zero_vec, unit_vec, zero_vec, QVec, Rational, RationalMatrix};
use crate::combinat::{binomial, sort_sign, TupleIndex};
use crate::error::{dim_err, Error, Result};
use crate::nlie::{LinearMap, NLieAlgebra, WedgeElement};

/// Multiderivation of degree `p ≥ −1` on `ℚ^m` for an `n`-ary bracket, stored
/// densely.
///
/// * `p ≥ 1`: a value in `ℚ^m` for every `(p−1)` tensor blocks of sorted
///   `(n−1)`-tuples followed by one sorted `n`-tuple (the last block wedged
///   with the section argument). Flat index
///   `((b_1·B + b_2)·B + … )·W + w)·m + k`.
/// * `p = 0`: a linear map, index `z·m + k` holds the `k`-th coordinate of
///   `D(e_z)`.
/// * `p = −1`: an element of `Λ^{n−1}`, one coefficient per sorted tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    arity: usize,
    dim: usize,
    degree: i32,
    values: Vec<Rational>,
}

/// One nonzero entry of a cochain of degree `≥ 0`, with 0-based indices.
/// Degree 0 entries have no tensor blocks and a one-element `wedge`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainEntry {
    pub tensor_blocks: Vec<Vec<usize>>,
    pub wedge: Vec<usize>,
    pub value: QVec,
}

/// Number of coordinates of `Der^p` (`p ≥ −1`).
pub fn cochain_dim(m: usize, n: usize, p: i32) -> usize {
    match p {
        i32::MIN..=-2 => 0,
        -1 => binomial(m, n - 1),
        0 => m * m,
        _ => binomial(m, n - 1).pow(p as u32 - 1) * binomial(m, n) * m,
    }
}

/// The elementary basis of `Der^p`: indicator cochains in flat-index order.
pub fn basis(m: usize, n: usize, p: i32) -> Result<Vec<Cochain>> {
    let d = cochain_dim(m, n, p);
    (0..d).map(|i| Cochain::basis_element(n, m, p, i)).collect()
}

/// Index tables shared by the evaluation routines.
pub(crate) struct Space {
    pub n: usize,
    pub m: usize,
    pub blocks: TupleIndex,
    pub wedges: TupleIndex,
    /// `e_t` for every sorted `(n−1)`-tuple `t`, in rank order.
    pub basis_blocks: Vec<WedgeElement>,
}

impl Space {
    pub fn new(n: usize, m: usize) -> Self {
        let blocks = TupleIndex::new(m, n - 1);
        let wedges = TupleIndex::new(m, n);
        let basis_blocks = blocks
            .tuples()
            .iter()
            .map(|t| WedgeElement::basis(m, t).expect("indices in range"))
            .collect();
        Self {
            n,
            m,
            blocks,
            wedges,
            basis_blocks,
        }
    }

    /// Number of keys (value vectors) of a degree `p ≥ 0` cochain.
    pub fn keys(&self, p: i32) -> usize {
        match p {
            0 => self.m,
            _ => self.blocks.len().pow(p as u32 - 1) * self.wedges.len(),
        }
    }

    /// Basis arguments `(X_1, …, X_p, z)` for key `key` of degree `p ≥ 1`.
    pub fn key_args(&self, p: i32, key: usize) -> (Vec<WedgeElement>, QVec) {
        let p = p as usize;
        let w = key % self.wedges.len();
        let mut rest = key / self.wedges.len();
        let mut ranks = vec![0; p - 1];
        for slot in ranks.iter_mut().rev() {
            *slot = rest % self.blocks.len();
            rest /= self.blocks.len();
        }
        let wt = self.wedges.tuple(w);
        let mut xs: Vec<WedgeElement> = ranks.iter().map(|&r| self.basis_blocks[r].clone()).collect();
        xs.push(WedgeElement::basis(self.m, &wt[..self.n - 1]).expect("indices in range"));
        (xs, unit_vec(self.m, wt[self.n - 1]))
    }

    /// Tensor blocks and final wedge of key `key`, for `p ≥ 1`.
    pub fn key_tuples(&self, p: i32, key: usize) -> (Vec<Vec<usize>>, Vec<usize>) {
        let p = p as usize;
        let w = key % self.wedges.len();
        let mut rest = key / self.wedges.len();
        let mut blocks = vec![Vec::new(); p - 1];
        for slot in blocks.iter_mut().rev() {
            *slot = self.blocks.tuple(rest % self.blocks.len()).to_vec();
            rest /= self.blocks.len();
        }
        (blocks, self.wedges.tuple(w).to_vec())
    }
}

impl Cochain {
    fn check_shape(arity: usize, dim: usize, degree: i32) -> Result<()> {
        if arity < 2 {
            return Err(Error::InvalidArgument(format!("arity must be at least 2, got {arity}")));
        }
        if dim < 1 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        if degree < -1 {
            return Err(Error::InvalidArgument(format!("cochain degree {degree} below -1")));
        }
        Ok(())
    }

    pub fn zero(arity: usize, dim: usize, degree: i32) -> Result<Self> {
        Self::check_shape(arity, dim, degree)?;
        Ok(Self {
            arity,
            dim,
            degree,
            values: vec![Rational::zero(); cochain_dim(dim, arity, degree)],
        })
    }

    /// Indicator of flat coordinate `i`.
    pub fn basis_element(arity: usize, dim: usize, degree: i32, i: usize) -> Result<Self> {
        let mut c = Self::zero(arity, dim, degree)?;
        if i >= c.values.len() {
            return Err(dim_err(format!("basis index {i} out of range {}", c.values.len())));
        }
        c.values[i] = Rational::one();
        Ok(c)
    }

    pub fn from_values(arity: usize, dim: usize, degree: i32, values: Vec<Rational>) -> Result<Self> {
        Self::check_shape(arity, dim, degree)?;
        if values.len() != cochain_dim(dim, arity, degree) {
            return Err(dim_err(format!(
                "{} coordinates given, Der^{degree} has {}",
                values.len(),
                cochain_dim(dim, arity, degree)
            )));
        }
        Ok(Self {
            arity,
            dim,
            degree,
            values,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Degree in the `Der^p` grading; the complex degree is `p + 1`.
    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn complex_degree(&self) -> i32 {
        self.degree + 1
    }

    /// Flat coordinates.
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.values)
    }

    pub(crate) fn same_space(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity || self.dim != other.dim {
            return Err(dim_err(format!(
                "cochains over (n={}, m={}) and (n={}, m={})",
                self.arity, self.dim, other.arity, other.dim
            )));
        }
        Ok(())
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        self.same_space(other)?;
        if self.degree != other.degree {
            return Err(dim_err(format!(
                "cochain degrees {} and {} differ",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, c: &Rational, other: &Self) -> Result<()> {
        self.same_shape(other)?;
        axpy(&mut self.values, c, &other.values);
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), other)?;
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(&-Rational::one(), other)?;
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        for x in &mut out.values {
            *x *= c;
        }
        out
    }

    /// Flat offset of the value vector at the given key, and the sign that
    /// sorting introduced. `None` when a tuple repeats an index.
    fn locate(&self, sp: &Space, tensor_blocks: &[Vec<usize>], wedge: &[usize]) -> Result<Option<(usize, i32)>> {
        let n = self.arity;
        match self.degree {
            -1 => Err(Error::InvalidArgument(
                "degree -1 cochains have no keyed entries".into(),
            )),
            0 => {
                if !tensor_blocks.is_empty() || wedge.len() != 1 || wedge[0] >= self.dim {
                    return Err(dim_err("degree 0 entries are keyed by a single basis index"));
                }
                Ok(Some((wedge[0] * self.dim, 1)))
            }
            p => {
                if tensor_blocks.len() != p as usize - 1 {
                    return Err(dim_err(format!(
                        "degree {p} needs {} tensor blocks, got {}",
                        p - 1,
                        tensor_blocks.len()
                    )));
                }
                if tensor_blocks.iter().any(|b| b.len() != n - 1) || wedge.len() != n {
                    return Err(dim_err("tensor blocks need n-1 indices and the wedge n"));
                }
                if tensor_blocks.iter().flatten().chain(wedge).any(|&i| i >= self.dim) {
                    return Err(dim_err("cochain index out of range"));
                }
                let mut sign = 1;
                let mut off = 0;
                for b in tensor_blocks {
                    let Some((r, s)) = sp.blocks.rank_signed(b) else {
                        return Ok(None);
                    };
                    sign *= s;
                    off = off * sp.blocks.len() + r;
                }
                let Some((w, s)) = sp.wedges.rank_signed(wedge) else {
                    return Ok(None);
                };
                sign *= s;
                Ok(Some(((off * sp.wedges.len() + w) * self.dim, sign)))
            }
        }
    }

    /// Value at a basis key; index tuples may be unsorted.
    pub fn get(&self, tensor_blocks: &[Vec<usize>], wedge: &[usize]) -> Result<QVec> {
        let sp = Space::new(self.arity, self.dim);
        Ok(match self.locate(&sp, tensor_blocks, wedge)? {
            None => zero_vec(self.dim),
            Some((off, s)) => {
                let v = &self.values[off..off + self.dim];
                if s > 0 {
                    v.to_vec()
                } else {
                    v.iter().map(|x| -x).collect()
                }
            }
        })
    }

    /// Adds `value` at a basis key, adjusting for the sorting sign. Tuples
    /// with a repeated index are rejected.
    pub fn add_entry(&mut self, tensor_blocks: &[Vec<usize>], wedge: &[usize], value: &[Rational]) -> Result<()> {
        if value.len() != self.dim {
            return Err(dim_err("entry value has wrong length"));
        }
        let sp = Space::new(self.arity, self.dim);
        let (off, s) = self
            .locate(&sp, tensor_blocks, wedge)?
            .ok_or_else(|| Error::InvalidArgument("repeated index in cochain key".into()))?;
        let c = Rational::from_integer(s.into());
        axpy(&mut self.values[off..off + self.dim], &c, value);
        Ok(())
    }

    /// Nonzero entries in lexicographic key order (degree ≥ 0).
    pub fn entries(&self) -> Vec<CochainEntry> {
        let m = self.dim;
        let sp = Space::new(self.arity, self.dim);
        let mut out = Vec::new();
        if self.degree < 0 {
            return out;
        }
        for key in 0..sp.keys(self.degree) {
            let v = &self.values[key * m..(key + 1) * m];
            if is_zero_vec(v) {
                continue;
            }
            let (tensor_blocks, wedge) = if self.degree == 0 {
                (Vec::new(), vec![key])
            } else {
                sp.key_tuples(self.degree, key)
            };
            out.push(CochainEntry {
                tensor_blocks,
                wedge,
                value: v.to_vec(),
            });
        }
        out
    }

    /// `D(X_1, …, X_p, z)` with arbitrary arguments, expanded multilinearly;
    /// the last block is wedged with `z`.
    pub fn evaluate(&self, blocks: &[WedgeElement], z: &[Rational]) -> Result<QVec> {
        if self.degree < 0 {
            return Err(Error::InvalidArgument("degree -1 cochains are not evaluated".into()));
        }
        if blocks.len() != self.degree as usize {
            return Err(dim_err(format!(
                "degree {} cochain evaluated on {} blocks",
                self.degree,
                blocks.len()
            )));
        }
        if blocks
            .iter()
            .any(|b| b.grade() != self.arity - 1 || b.dim() != self.dim)
            || z.len() != self.dim
        {
            return Err(dim_err("evaluation arguments have the wrong shape"));
        }
        let sp = Space::new(self.arity, self.dim);
        let refs: Vec<&WedgeElement> = blocks.iter().collect();
        let mut out = zero_vec(self.dim);
        self.eval_acc(&sp, &refs, z, &Rational::one(), &mut out);
        Ok(out)
    }

    /// `out += c · D(blocks, z)`, unchecked.
    pub(crate) fn eval_acc(&self, sp: &Space, blocks: &[&WedgeElement], z: &[Rational], c: &Rational, out: &mut QVec) {
        let m = self.dim;
        if self.degree == 0 {
            for (j, zj) in z.iter().enumerate() {
                if !zj.is_zero() {
                    axpy(out, &(c * zj), &self.values[j * m..(j + 1) * m]);
                }
            }
            return;
        }
        let (last, tensor) = blocks.split_last().expect("degree ≥ 1 has blocks");
        self.eval_tensor(sp, tensor, last, z, 0, c.clone(), out);
    }

    #[allow(clippy::too_many_arguments)]
    fn eval_tensor(
        &self,
        sp: &Space,
        tensor: &[&WedgeElement],
        last: &WedgeElement,
        z: &[Rational],
        off: usize,
        c: Rational,
        out: &mut QVec,
    ) {
        if let Some((head, rest)) = tensor.split_first() {
            for (t, x) in head.terms() {
                let r = sp.blocks.rank(t).expect("wedge terms are sorted");
                self.eval_tensor(sp, rest, last, z, off * sp.blocks.len() + r, &c * x, out);
            }
            return;
        }
        let m = self.dim;
        let mut key = Vec::with_capacity(sp.n);
        for (t, x) in last.terms() {
            for (j, zj) in z.iter().enumerate() {
                if zj.is_zero() || t.contains(&j) {
                    continue;
                }
                key.clear();
                key.extend_from_slice(t);
                key.push(j);
                let s = sort_sign(&mut key).expect("distinct indices");
                let w = sp.wedges.rank(&key).expect("sorted key");
                let base = (off * sp.wedges.len() + w) * m;
                let mut coef = &c * x * zj;
                if s < 0 {
                    coef = -coef;
                }
                axpy(out, &coef, &self.values[base..base + m]);
            }
        }
    }

    /// The bracket of an algebra as a degree 1 cochain.
    pub fn from_algebra(alg: &NLieAlgebra) -> Self {
        let sp = Space::new(alg.arity(), alg.dim());
        let mut c = Self::zero(alg.arity(), alg.dim(), 1).expect("valid algebra shape");
        for (t, v) in alg.structure() {
            let w = sp.wedges.rank(t).expect("structure keys are sorted");
            let m = alg.dim();
            c.values[w * m..(w + 1) * m].clone_from_slice(v);
        }
        c
    }

    /// Inverse of [`Cochain::from_algebra`].
    pub fn to_algebra(&self) -> Result<NLieAlgebra> {
        if self.degree != 1 {
            return Err(Error::InvalidArgument(format!(
                "only degree 1 cochains are brackets, got degree {}",
                self.degree
            )));
        }
        let sp = Space::new(self.arity, self.dim);
        let m = self.dim;
        NLieAlgebra::from_brackets(
            self.arity,
            self.dim,
            sp.wedges
                .tuples()
                .iter()
                .enumerate()
                .map(|(w, t)| (t.clone(), self.values[w * m..(w + 1) * m].to_vec()))
                .filter(|(_, v)| !is_zero_vec(v)),
        )
    }

    /// A linear map `ℚ^m → ℚ^m` as a degree 0 cochain.
    pub fn from_linear_map(arity: usize, map: &LinearMap) -> Result<Self> {
        if !map.is_square() {
            return Err(dim_err("degree 0 cochains are square matrices"));
        }
        let m = map.rows();
        let mut c = Self::zero(arity, m, 0)?;
        for z in 0..m {
            for k in 0..m {
                c.values[z * m + k] = map.get(k, z).clone();
            }
        }
        Ok(c)
    }

    pub fn to_linear_map(&self) -> Result<LinearMap> {
        if self.degree != 0 {
            return Err(Error::InvalidArgument("only degree 0 cochains are linear maps".into()));
        }
        let m = self.dim;
        let mut out = RationalMatrix::zero(m, m);
        for z in 0..m {
            for k in 0..m {
                out.set(k, z, self.values[z * m + k].clone());
            }
        }
        Ok(out)
    }

    /// An element of `Λ^{n−1}` as a degree −1 cochain.
    pub fn from_wedge(arity: usize, x: &WedgeElement) -> Result<Self> {
        if x.grade() != arity - 1 {
            return Err(dim_err("degree -1 cochains are wedges of grade n-1"));
        }
        let sp = Space::new(arity, x.dim());
        let mut c = Self::zero(arity, x.dim(), -1)?;
        for (t, v) in x.terms() {
            c.values[sp.blocks.rank(t).expect("sorted")] = v.clone();
        }
        Ok(c)
    }

    pub fn to_wedge(&self) -> Result<WedgeElement> {
        if self.degree != -1 {
            return Err(Error::InvalidArgument("only degree -1 cochains are wedges".into()));
        }
        let sp = Space::new(self.arity, self.dim);
        let mut w = WedgeElement::zero(self.arity - 1, self.dim);
        for (t, v) in sp.blocks.tuples().iter().zip(&self.values) {
            w.add_basis(t, v.clone());
        }
        Ok(w)
    }
}
