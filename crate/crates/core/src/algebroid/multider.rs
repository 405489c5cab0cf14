use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{
    expand, function_family, leibniz_wedge, tensor_expand, PolyFilippovAlgebroid, PolyLinearBundleMap, PolySection,
};
use crate::arith::{one, MultiPoly, PolyVectorField, Rational};
use crate::cochains::Cochain;
use crate::combinat::{all_tuples, shuffles, sort_sign, sorted_tuples};
use crate::error::{dim_err, Error, Result};
use crate::report::{ser_idx_nested, ser_one, Verdict};

fn sign_q(s: i32) -> Rational {
    Rational::from_integer(s.into())
}

/// Sorts every block, returning the sorted blocks and the product of signs;
/// `None` when some block repeats an index.
fn sort_blocks(blocks: &[Vec<usize>]) -> Option<(Vec<Vec<usize>>, i32)> {
    let mut sign = 1;
    let mut out = Vec::with_capacity(blocks.len());
    for b in blocks {
        let mut s = b.clone();
        sign *= sort_sign(&mut s)?;
        out.push(s);
    }
    Some((out, sign))
}

fn check_block_key(key: &[Vec<usize>], lens: &[usize], rank: usize) -> Result<()> {
    if key.len() != lens.len() {
        return Err(dim_err(format!("key {key:?} should have {} blocks", lens.len())));
    }
    for (b, &l) in key.iter().zip(lens) {
        if b.len() != l || b.windows(2).any(|w| w[0] >= w[1]) || b.iter().any(|&i| i >= rank) {
            return Err(Error::InvalidArgument(format!(
                "key {key:?}: blocks must be strictly increasing generator tuples of the right length"
            )));
        }
    }
    Ok(())
}

/// Every `p`-tuple of sorted `(n−1)`-tuples of generators.
fn block_keys(rank: usize, arity: usize, p: usize) -> Vec<Vec<Vec<usize>>> {
    let wedges = sorted_tuples(rank, arity - 1);
    all_tuples(wedges.len(), p)
        .into_iter()
        .map(|t| t.into_iter().map(|i| wedges[i].clone()).collect())
        .collect()
}

/// Vector-field-valued map on `p` blocks of `n−1` sections, linear over
/// functions in every section, stored on sorted generator blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolMap {
    arity: usize,
    rank: usize,
    num_vars: usize,
    degree: usize,
    table: BTreeMap<Vec<Vec<usize>>, PolyVectorField>,
}

impl SymbolMap {
    pub fn zero(arity: usize, rank: usize, num_vars: usize, degree: usize) -> Self {
        Self {
            arity,
            rank,
            num_vars,
            degree,
            table: BTreeMap::new(),
        }
    }

    pub fn new(
        arity: usize,
        rank: usize,
        num_vars: usize,
        degree: usize,
        table: BTreeMap<Vec<Vec<usize>>, PolyVectorField>,
    ) -> Result<Self> {
        for (k, v) in &table {
            check_block_key(k, &vec![arity - 1; degree], rank)?;
            if v.num_vars() != num_vars {
                return Err(dim_err("symbol value lives on the wrong base"));
            }
        }
        Ok(Self {
            arity,
            rank,
            num_vars,
            degree,
            table: table.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn table(&self) -> &BTreeMap<Vec<Vec<usize>>, PolyVectorField> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    /// Value on generator blocks given in any order.
    pub fn at_generators(&self, blocks: &[Vec<usize>]) -> PolyVectorField {
        let zero = || PolyVectorField::zero(self.num_vars);
        let Some((key, sign)) = sort_blocks(blocks) else {
            return zero();
        };
        match self.table.get(&key) {
            Some(v) if sign == 1 => v.clone(),
            Some(v) => v.scale(&-one()),
            None => zero(),
        }
    }

    /// Value on blocks of polynomial sections.
    pub fn at(&self, blocks: &[Vec<PolySection>]) -> PolyVectorField {
        let w = self.arity - 1;
        let flat: Vec<&PolySection> = blocks.iter().flatten().collect();
        tensor_expand(&flat, self.num_vars, |g| {
            let gb: Vec<Vec<usize>> = g.chunks(w).map(<[usize]>::to_vec).collect();
            self.at_generators(&gb)
        })
    }
}

/// Multiderivation of degree `p ≥ 0` on the polynomial model.
///
/// Values are stored on generator keys: `p−1` sorted `(n−1)`-blocks followed
/// by the sorted final `n`-wedge (a single `[z]` when `p = 0`). Evaluation is
/// linear over functions in the first `p−1` blocks and a derivation with
/// symbol `σ` in the final wedge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMultiderivation {
    arity: usize,
    rank: usize,
    num_vars: usize,
    degree: usize,
    values: BTreeMap<Vec<Vec<usize>>, PolySection>,
    symbol: SymbolMap,
}

impl PolyMultiderivation {
    fn key_lens(arity: usize, degree: usize) -> Vec<usize> {
        if degree == 0 {
            vec![1]
        } else {
            let mut l = vec![arity - 1; degree - 1];
            l.push(arity);
            l
        }
    }

    pub fn new(
        arity: usize,
        rank: usize,
        num_vars: usize,
        degree: usize,
        values: BTreeMap<Vec<Vec<usize>>, PolySection>,
        symbol: SymbolMap,
    ) -> Result<Self> {
        if arity < 2 || rank == 0 {
            return Err(Error::InvalidArgument("need arity ≥ 2 and rank ≥ 1".into()));
        }
        let lens = Self::key_lens(arity, degree);
        for (k, s) in &values {
            check_block_key(k, &lens, rank)?;
            if s.rank() != rank || s.num_vars() != num_vars {
                return Err(dim_err("multiderivation value has the wrong shape"));
            }
        }
        if (symbol.arity, symbol.rank, symbol.num_vars, symbol.degree) != (arity, rank, num_vars, degree) {
            return Err(dim_err("symbol does not match the multiderivation"));
        }
        Ok(Self {
            arity,
            rank,
            num_vars,
            degree,
            values: values.into_iter().filter(|(_, s)| !s.is_zero()).collect(),
            symbol,
        })
    }

    /// The bracket of an algebroid as a degree 1 multiderivation; its symbol
    /// is the anchor.
    pub fn from_algebroid(abd: &PolyFilippovAlgebroid) -> Self {
        let (n, r, nv) = (abd.arity(), abd.rank(), abd.num_vars());
        let values = abd
            .brackets()
            .iter()
            .map(|(t, s)| (vec![t.clone()], s.clone()))
            .collect();
        let table = abd
            .anchor_table()
            .iter()
            .map(|(t, v)| (vec![t.clone()], v.clone()))
            .collect();
        Self::new(
            n,
            r,
            nv,
            1,
            values,
            SymbolMap::new(n, r, nv, 1, table).expect("anchor keys are valid"),
        )
        .expect("algebroid tables are valid")
    }

    /// Constant-coefficient multiderivation with zero symbol from a cochain
    /// of degree `≥ 0`.
    pub fn from_cochain(c: &Cochain, num_vars: usize) -> Result<Self> {
        let p = usize::try_from(c.degree())
            .map_err(|_| Error::InvalidArgument("only degrees ≥ 0 lift to multiderivations".into()))?;
        let constant =
            |v: &[Rational]| PolySection::new(v.iter().map(|x| MultiPoly::constant(num_vars, x.clone())).collect());
        let values = c
            .entries()
            .into_iter()
            .map(|e| {
                let mut key = e.tensor_blocks;
                key.push(e.wedge);
                Ok((key, constant(&e.value)?))
            })
            .collect::<Result<_>>()?;
        let (n, m) = (c.arity(), c.dim());
        Self::new(n, m, num_vars, p, values, SymbolMap::zero(n, m, num_vars, p))
    }

    /// Degree 0 multiderivation `z ↦ N z` with the given symbol, i.e.
    /// `D(f z) = f N z + σ(f) z`.
    pub fn from_bundle_map(arity: usize, map: &PolyLinearBundleMap, symbol: PolyVectorField) -> Result<Self> {
        let (r, nv) = (map.rank(), map.num_vars());
        let values = (0..r).map(|j| (vec![vec![j]], map.column(j))).collect();
        let mut table = BTreeMap::new();
        table.insert(Vec::new(), symbol);
        Self::new(arity, r, nv, 0, values, SymbolMap::new(arity, r, nv, 0, table)?)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &BTreeMap<Vec<Vec<usize>>, PolySection> {
        &self.values
    }

    pub fn symbol(&self) -> &SymbolMap {
        &self.symbol
    }

    fn zero_section(&self) -> PolySection {
        PolySection::zero(self.rank, self.num_vars)
    }

    /// Value on generator blocks given in any order; `wedge` is the final
    /// `n`-wedge (or `[z]` in degree 0).
    pub fn at_generators(&self, tensor: &[Vec<usize>], wedge: &[usize]) -> PolySection {
        let mut blocks = tensor.to_vec();
        blocks.push(wedge.to_vec());
        let Some((key, sign)) = sort_blocks(&blocks) else {
            return self.zero_section();
        };
        match self.values.get(&key) {
            Some(v) if sign == 1 => v.clone(),
            Some(v) => v.scale(&-one()),
            None => self.zero_section(),
        }
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if (self.arity, self.rank, self.num_vars) != (other.arity, other.rank, other.num_vars) {
            return Err(dim_err("multiderivations live on different bundles"));
        }
        Ok(())
    }

    /// `D(X_1, …, X_p, z)`; each block holds `n−1` sections and the last one
    /// is wedged with `z`.
    pub fn eval(&self, blocks: &[Vec<PolySection>], z: &PolySection) -> Result<PolySection> {
        if blocks.len() != self.degree || blocks.iter().any(|b| b.len() != self.arity - 1) {
            return Err(dim_err(format!(
                "degree {} multiderivation needs {} blocks of {} sections",
                self.degree,
                self.degree,
                self.arity - 1
            )));
        }
        if blocks
            .iter()
            .flatten()
            .chain([z])
            .any(|s| s.rank() != self.rank || s.num_vars() != self.num_vars)
        {
            return Err(dim_err("section does not match the bundle"));
        }
        Ok(self.eval_unchecked(blocks, z))
    }

    fn eval_unchecked(&self, blocks: &[Vec<PolySection>], z: &PolySection) -> PolySection {
        let (r, nv) = (self.rank, self.num_vars);
        if self.degree == 0 {
            return leibniz_wedge(
                &[z],
                r,
                nv,
                |a| self.at_generators(&[], a),
                |_| self.symbol.at_generators(&[]),
            );
        }
        let p = self.degree;
        let w = self.arity - 1;
        let tensor: Vec<&PolySection> = blocks[..p - 1].iter().flatten().collect();
        let mut fin: Vec<&PolySection> = blocks[p - 1].iter().collect();
        fin.push(z);
        let mut out = self.zero_section();
        for (gens, coefs) in expand(&tensor) {
            let tb: Vec<Vec<usize>> = gens.chunks(w).map(<[usize]>::to_vec).collect();
            let part = leibniz_wedge(
                &fin,
                r,
                nv,
                |a| self.at_generators(&tb, a),
                |a| {
                    let mut b = tb.clone();
                    b.push(a.to_vec());
                    self.symbol.at_generators(&b)
                },
            );
            if part.is_zero() {
                continue;
            }
            let c = coefs.iter().fold(MultiPoly::one(nv), |acc, f| &acc * f);
            out.add_mul(&c, &part);
        }
        out
    }
}

fn replaced(block: &[PolySection], s: usize, with: PolySection) -> Vec<PolySection> {
    let mut b = block.to_vec();
    b[s] = with;
    b
}

fn pick(blocks: &[Vec<PolySection>], idx: &[usize]) -> Vec<Vec<PolySection>> {
    idx.iter().map(|&i| blocks[i].clone()).collect()
}

fn parity(k: usize) -> i32 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `(D_1 ∘ D_2)(X_1, …, X_{p+q}, z)` on polynomial sections, with the same
/// shuffle signs as the constant-coefficient circle product.
pub fn circle_eval(
    d1: &PolyMultiderivation,
    d2: &PolyMultiderivation,
    blocks: &[Vec<PolySection>],
    z: &PolySection,
) -> Result<PolySection> {
    d1.same_shape(d2)?;
    let (p, q) = (d1.degree, d2.degree);
    check_args(d1, p + q, blocks, z)?;
    let mut out = d1.zero_section();
    for k in 0..p {
        let target = &blocks[k + q];
        let tail = &blocks[k + q + 1..];
        for sh in shuffles(k, q) {
            let a = pick(blocks, &sh.perm[..k]);
            let b = pick(blocks, &sh.perm[k..]);
            let sign = sign_q(sh.sign * parity(k * q));
            for s in 0..d1.arity - 1 {
                let inner = d2.eval_unchecked(&b, &target[s]);
                if inner.is_zero() {
                    continue;
                }
                let mut args = a.clone();
                args.push(replaced(target, s, inner));
                args.extend_from_slice(tail);
                out = out.add(&d1.eval_unchecked(&args, z).scale(&sign));
            }
        }
    }
    for sh in shuffles(p, q) {
        let a = pick(blocks, &sh.perm[..p]);
        let b = pick(blocks, &sh.perm[p..]);
        let inner = d2.eval_unchecked(&b, z);
        if inner.is_zero() {
            continue;
        }
        let sign = sign_q(sh.sign * parity(p * q));
        out = out.add(&d1.eval_unchecked(&a, &inner).scale(&sign));
    }
    Ok(out)
}

fn check_args(d: &PolyMultiderivation, count: usize, blocks: &[Vec<PolySection>], z: &PolySection) -> Result<()> {
    if blocks.len() != count || blocks.iter().any(|b| b.len() != d.arity - 1) {
        return Err(dim_err(format!("expected {count} blocks of {} sections", d.arity - 1)));
    }
    if blocks
        .iter()
        .flatten()
        .chain([z])
        .any(|s| s.rank() != d.rank || s.num_vars() != d.num_vars)
    {
        return Err(dim_err("section does not match the bundle"));
    }
    Ok(())
}

/// `[D_1, D_2] = (−1)^{pq} D_1 ∘ D_2 − D_2 ∘ D_1` evaluated on polynomial
/// sections.
pub fn bracket_eval(
    d1: &PolyMultiderivation,
    d2: &PolyMultiderivation,
    blocks: &[Vec<PolySection>],
    z: &PolySection,
) -> Result<PolySection> {
    let pq = parity(d1.degree * d2.degree);
    let a = circle_eval(d1, d2, blocks, z)?.scale(&sign_q(pq));
    Ok(a.sub(&circle_eval(d2, d1, blocks, z)?))
}

/// `σ_{D_1} ⊙ D_2`: `D_2` inserted into the wedge slots of the symbol.
fn odot(d1: &PolyMultiderivation, d2: &PolyMultiderivation, blocks: &[Vec<PolySection>]) -> PolyVectorField {
    let (p, q) = (d1.degree, d2.degree);
    let mut out = PolyVectorField::zero(d1.num_vars);
    for k in 0..p {
        let target = &blocks[k + q];
        let tail = &blocks[k + q + 1..];
        for sh in shuffles(k, q) {
            let a = pick(blocks, &sh.perm[..k]);
            let b = pick(blocks, &sh.perm[k..]);
            let sign = sign_q(sh.sign * parity(k * q));
            for s in 0..d1.arity - 1 {
                let inner = d2.eval_unchecked(&b, &target[s]);
                if inner.is_zero() {
                    continue;
                }
                let mut args = a.clone();
                args.push(replaced(target, s, inner));
                args.extend_from_slice(tail);
                out.add_scaled(&sign, &d1.symbol.at(&args));
            }
        }
    }
    out
}

/// `{σ_1, σ_2}`: shuffle-signed commutators of the two symbols.
fn symbol_commutator(
    d1: &PolyMultiderivation,
    d2: &PolyMultiderivation,
    blocks: &[Vec<PolySection>],
) -> PolyVectorField {
    let (p, q) = (d1.degree, d2.degree);
    let mut out = PolyVectorField::zero(d1.num_vars);
    for sh in shuffles(p, q) {
        let v = d1.symbol.at(&pick(blocks, &sh.perm[..p]));
        let w = d2.symbol.at(&pick(blocks, &sh.perm[p..]));
        if v.is_zero() || w.is_zero() {
            continue;
        }
        out.add_scaled(&sign_q(sh.sign), &v.bracket(&w).expect("same base"));
    }
    out
}

fn symbol_bracket_at(
    d1: &PolyMultiderivation,
    d2: &PolyMultiderivation,
    blocks: &[Vec<PolySection>],
) -> PolyVectorField {
    let mut out = odot(d1, d2, blocks).scale(&sign_q(parity(d1.degree * d2.degree)));
    out.add_scaled(&-one(), &odot(d2, d1, blocks));
    out.add(&symbol_commutator(d1, d2, blocks))
}

/// Symbol of `[D_1, D_2]`:
/// `(−1)^{pq} σ_{D_1} ⊙ D_2 − σ_{D_2} ⊙ D_1 + {σ_{D_1}, σ_{D_2}}`.
pub fn symbol_bracket(d1: &PolyMultiderivation, d2: &PolyMultiderivation) -> Result<SymbolMap> {
    d1.same_shape(d2)?;
    let (n, r, nv) = (d1.arity, d1.rank, d1.num_vars);
    let deg = d1.degree + d2.degree;
    let table = block_keys(r, n, deg)
        .into_par_iter()
        .map(|key| {
            let blocks: Vec<Vec<PolySection>> = key
                .iter()
                .map(|b| b.iter().map(|&a| PolySection::generator(r, nv, a)).collect())
                .collect();
            let v = symbol_bracket_at(d1, d2, &blocks);
            (key, v)
        })
        .collect();
    SymbolMap::new(n, r, nv, deg, table)
}

/// First generator input where the bracket breaks its Leibniz law with the
/// computed symbol.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymbolLeibnizWitness {
    #[serde(serialize_with = "ser_idx_nested")]
    pub blocks: Vec<Vec<usize>>,
    #[serde(serialize_with = "ser_one")]
    pub z: usize,
    pub f: MultiPoly,
    pub lhs: PolySection,
    pub rhs: PolySection,
}

/// Checks `[D_1, D_2](X, f z) = f [D_1, D_2](X, z) + σ(X)(f) z` on every
/// generator input and every function of [`function_family`] up to degree 3,
/// with `σ` from [`symbol_bracket`].
pub fn check_symbol_leibniz(
    abd: &PolyFilippovAlgebroid,
    d1: &PolyMultiderivation,
    d2: &PolyMultiderivation,
) -> Result<Verdict<SymbolLeibnizWitness>> {
    d1.same_shape(d2)?;
    if (d1.arity, d1.rank, d1.num_vars) != (abd.arity(), abd.rank(), abd.num_vars()) {
        return Err(dim_err("multiderivations do not live on the algebroid's bundle"));
    }
    let (n, r, nv) = (d1.arity, d1.rank, d1.num_vars);
    let sigma = symbol_bracket(d1, d2)?;
    let family = function_family(nv, 3);
    let mut cases = Vec::new();
    for key in block_keys(r, n, d1.degree + d2.degree) {
        for z in 0..r {
            for f in &family {
                cases.push((key.clone(), z, f));
            }
        }
    }
    let found = cases.into_par_iter().find_map_first(|(key, z, f)| {
        let blocks: Vec<Vec<PolySection>> = key
            .iter()
            .map(|b| b.iter().map(|&a| PolySection::generator(r, nv, a)).collect())
            .collect();
        let zs = PolySection::generator(r, nv, z);
        let lhs = bracket_eval(d1, d2, &blocks, &zs.mul_fn(f)).expect("shapes checked");
        let df = sigma.at_generators(&key).apply(f).expect("same base");
        let rhs = bracket_eval(d1, d2, &blocks, &zs)
            .expect("shapes checked")
            .mul_fn(f)
            .add(&zs.mul_fn(&df));
        (lhs != rhs).then(|| SymbolLeibnizWitness {
            blocks: key,
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
