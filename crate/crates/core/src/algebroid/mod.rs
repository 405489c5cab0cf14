//! Filippov algebroids over a polynomial base.
//!
//! The bundle is the trivial rank `r` bundle over `R^m`, and sections are
//! `r`-tuples of polynomials. A bracket is fixed by its values on generators
//! together with the anchor: rule (b) says how a function leaves the last
//! slot, and skew symmetry moves any slot to the last one. Pulling `f` out of
//! slot `j` (0-based, `n` slots) therefore costs
//! `(−1)^{n−1−j} a(x_1 ∧ ⋯ x̂_j ⋯ ∧ x_n)(f) x_j`.
//!
//! Nothing here computes cohomology; the cochain spaces are infinite
//! dimensional over the function ring. The module evaluates and verifies.

mod axioms;
mod multider;
mod section;
mod symbols;

use std::collections::BTreeMap;

use crate::arith::{MultiPoly, PolyVectorField};
use crate::combinat::sort_sign;
use crate::error::{dim_err, Error, Result};
use crate::nlie::NLieAlgebra;

pub use axioms::{check_algebroid_axioms, function_family, AlgebroidWitness};
pub use multider::{
    bracket_eval, check_symbol_leibniz, circle_eval, symbol_bracket, PolyMultiderivation, SymbolLeibnizWitness,
    SymbolMap,
};
pub use section::{PolyLinearBundleMap, PolySection};
pub use symbols::{deformed_bracket, nijenhuis_symbol_check, NijenhuisSymbolWitness};

use section::is_constant;

/// Rank `r` bundle over `R^m` with an `n`-ary bracket and an anchor.
///
/// `brackets` maps sorted generator `n`-tuples to sections and `anchor` maps
/// sorted `(n−1)`-tuples to vector fields; absent keys are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFilippovAlgebroid {
    num_vars: usize,
    rank: usize,
    arity: usize,
    brackets: BTreeMap<Vec<usize>, PolySection>,
    anchor: BTreeMap<Vec<usize>, PolyVectorField>,
}

fn check_key(t: &[usize], len: usize, rank: usize, what: &str) -> Result<()> {
    if t.len() != len {
        return Err(dim_err(format!("{what} key {t:?} should have {len} entries")));
    }
    if t.windows(2).any(|w| w[0] >= w[1]) || t.iter().any(|&i| i >= rank) {
        return Err(Error::InvalidArgument(format!(
            "{what} key {t:?} must be strictly increasing generator indices below {rank}"
        )));
    }
    Ok(())
}

impl PolyFilippovAlgebroid {
    pub fn new(
        num_vars: usize,
        rank: usize,
        arity: usize,
        brackets: BTreeMap<Vec<usize>, PolySection>,
        anchor: BTreeMap<Vec<usize>, PolyVectorField>,
    ) -> Result<Self> {
        if arity < 2 {
            return Err(Error::InvalidArgument("arity must be at least 2".into()));
        }
        if rank == 0 {
            return Err(Error::InvalidArgument("rank must be at least 1".into()));
        }
        for (t, s) in &brackets {
            check_key(t, arity, rank, "bracket")?;
            if s.rank() != rank || s.num_vars() != num_vars {
                return Err(dim_err(format!("bracket value on {t:?} has the wrong shape")));
            }
        }
        for (t, v) in &anchor {
            check_key(t, arity - 1, rank, "anchor")?;
            if v.num_vars() != num_vars {
                return Err(dim_err(format!("anchor value on {t:?} lives on the wrong base")));
            }
        }
        Ok(Self {
            num_vars,
            rank,
            arity,
            brackets: brackets.into_iter().filter(|(_, s)| !s.is_zero()).collect(),
            anchor: anchor.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn brackets(&self) -> &BTreeMap<Vec<usize>, PolySection> {
        &self.brackets
    }

    pub fn anchor_table(&self) -> &BTreeMap<Vec<usize>, PolyVectorField> {
        &self.anchor
    }

    pub fn generator(&self, a: usize) -> PolySection {
        PolySection::generator(self.rank, self.num_vars, a)
    }

    /// Bracket of generators in any order.
    pub fn bracket_generators(&self, t: &[usize]) -> PolySection {
        signed_lookup(&self.brackets, t).unwrap_or_else(|| PolySection::zero(self.rank, self.num_vars))
    }

    /// Anchor of a generator wedge in any order.
    pub fn anchor_generators(&self, t: &[usize]) -> PolyVectorField {
        signed_lookup(&self.anchor, t).unwrap_or_else(|| PolyVectorField::zero(self.num_vars))
    }

    fn check_sections(&self, s: &[PolySection], count: usize) -> Result<()> {
        if s.len() != count {
            return Err(dim_err(format!("expected {count} sections, got {}", s.len())));
        }
        if s.iter().any(|x| x.rank() != self.rank || x.num_vars() != self.num_vars) {
            return Err(dim_err("section does not match the bundle"));
        }
        Ok(())
    }

    /// `a(s_1 ∧ ⋯ ∧ s_{n−1})`, extended multilinearly over functions.
    pub fn anchor(&self, s: &[PolySection]) -> Result<PolyVectorField> {
        self.check_sections(s, self.arity - 1)?;
        let refs: Vec<&PolySection> = s.iter().collect();
        Ok(tensor_expand(&refs, self.num_vars, |a| self.anchor_generators(a)))
    }

    /// `[s_1, …, s_n]` on arbitrary polynomial sections.
    pub fn section_bracket(&self, s: &[PolySection]) -> Result<PolySection> {
        self.check_sections(s, self.arity)?;
        let refs: Vec<&PolySection> = s.iter().collect();
        Ok(leibniz_wedge(
            &refs,
            self.rank,
            self.num_vars,
            |a| self.bracket_generators(a),
            |a| self.anchor_generators(a),
        ))
    }
}

pub fn section_bracket(abd: &PolyFilippovAlgebroid, s: &[PolySection]) -> Result<PolySection> {
    abd.section_bracket(s)
}

/// Tangent bundle of `R^m` with `[∂_{i_1}, …, ∂_{i_n}] = f Σ c^k ∂_k` and zero
/// anchor, built from an `m`-dimensional Filippov algebra.
pub fn example_tangent_fc(alg: &NLieAlgebra, f: &MultiPoly) -> Result<PolyFilippovAlgebroid> {
    let m = alg.dim();
    if f.num_vars() != m {
        return Err(dim_err(format!(
            "the function must be a polynomial in {m} variables, got {}",
            f.num_vars()
        )));
    }
    if !alg.check_fundamental_identity().is_holds() {
        return Err(Error::FundamentalIdentity);
    }
    let brackets = alg
        .structure()
        .iter()
        .map(|(t, v)| {
            let coords = v.iter().map(|c| f.scale(c)).collect();
            Ok((t.clone(), PolySection::new(coords)?))
        })
        .collect::<Result<_>>()?;
    PolyFilippovAlgebroid::new(m, m, alg.arity(), brackets, BTreeMap::new())
}

/// Tangent bundle of `R^m` with zero bracket of arity `n+1` and anchor
/// `dx_1 ∧ ⋯ ∧ dx_n ⊗ ∂/∂x_1`.
pub fn example_tangent_topform(m_base: usize, n: usize) -> Result<PolyFilippovAlgebroid> {
    if n == 0 || n > m_base {
        return Err(Error::InvalidArgument(format!(
            "need 1 ≤ n ≤ m, got n = {n}, m = {m_base}"
        )));
    }
    let mut anchor = BTreeMap::new();
    anchor.insert((0..n).collect(), PolyVectorField::partial(m_base, 0));
    PolyFilippovAlgebroid::new(m_base, m_base, n + 1, BTreeMap::new(), anchor)
}

/// Table lookup on a generator tuple in any order; `None` on repeats or
/// absent keys.
pub(crate) fn signed_lookup<K, V>(table: &BTreeMap<K, V>, key: &[usize]) -> Option<V>
where
    K: Ord + std::borrow::Borrow<[usize]>,
    V: Clone + Negate,
{
    let mut s = key.to_vec();
    let sg = sort_sign(&mut s)?;
    let v = table.get(s.as_slice())?;
    Some(if sg == 1 { v.clone() } else { v.negate() })
}

pub(crate) trait Negate {
    fn negate(&self) -> Self;
}

impl Negate for PolyVectorField {
    fn negate(&self) -> Self {
        self.scale(&-crate::arith::one())
    }
}

impl Negate for PolySection {
    fn negate(&self) -> Self {
        self.scale(&-crate::arith::one())
    }
}

/// Every choice of one generator per section, with the product of the chosen
/// coefficients.
pub(crate) fn expand(args: &[&PolySection]) -> Vec<(Vec<usize>, Vec<MultiPoly>)> {
    let mut acc: Vec<(Vec<usize>, Vec<MultiPoly>)> = vec![(Vec::new(), Vec::new())];
    for s in args {
        let mut next = Vec::new();
        for (gens, coefs) in &acc {
            for (a, f) in s.terms() {
                let mut g = gens.clone();
                g.push(a);
                let mut c = coefs.clone();
                c.push(f.clone());
                next.push((g, c));
            }
        }
        acc = next;
    }
    acc
}

fn product(fs: &[MultiPoly], skip: Option<usize>, num_vars: usize) -> MultiPoly {
    let mut p = MultiPoly::one(num_vars);
    for (i, f) in fs.iter().enumerate() {
        if Some(i) != skip {
            p = &p * f;
        }
    }
    p
}

/// Extends a vector-field-valued map on generator tuples multilinearly over
/// functions.
pub(crate) fn tensor_expand(
    args: &[&PolySection],
    num_vars: usize,
    on_generators: impl Fn(&[usize]) -> PolyVectorField,
) -> PolyVectorField {
    let mut out = PolyVectorField::zero(num_vars);
    for (gens, coefs) in expand(args) {
        let v = on_generators(&gens);
        if !v.is_zero() {
            out = out.add(&v.mul_fn(&product(&coefs, None, num_vars)));
        }
    }
    out
}

/// Extends a map on generator wedges to sections, as a derivation in every
/// slot: `value` gives the generator values and `symbol` the vector field
/// attached to the remaining slots when a function is pulled out of one.
pub(crate) fn leibniz_wedge(
    args: &[&PolySection],
    rank: usize,
    num_vars: usize,
    value: impl Fn(&[usize]) -> PolySection,
    symbol: impl Fn(&[usize]) -> PolyVectorField,
) -> PolySection {
    let k = args.len();
    let mut out = PolySection::zero(rank, num_vars);
    for (gens, coefs) in expand(args) {
        let v = value(&gens);
        if !v.is_zero() {
            out.add_mul(&product(&coefs, None, num_vars), &v);
        }
        for j in 0..k {
            if is_constant(&coefs[j]) {
                continue;
            }
            let rest: Vec<usize> = gens
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, &a)| a)
                .collect();
            let field = symbol(&rest);
            if field.is_zero() {
                continue;
            }
            let df = field.apply(&coefs[j]).expect("same base");
            if df.is_zero() {
                continue;
            }
            let mut c = &df * &product(&coefs, Some(j), num_vars);
            if (k - 1 - j) % 2 == 1 {
                c = -&c;
            }
            out.add_to_coord(gens[j], &c);
        }
    }
    out
}
