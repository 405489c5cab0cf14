use rayon::prelude::*;
use serde::Serialize;

use super::series::{self, Series};
use super::DeformationPath;
use crate::arith::{unit_vec, QVec};
use crate::cochains::Cochain;
use crate::combinat::sorted_tuples;
use crate::error::{dim_err, Error, Result};
use crate::nlie::{LinearMap, NLieAlgebra};
use crate::report::{ser_idx, ser_qvec, Verdict};

/// `Φ_t = Id + t ϕ_1 + … + t^k ϕ_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceMap {
    maps: Vec<LinearMap>,
}

/// First power and basis tuple where two brackets differ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TermWitness {
    pub power: usize,
    #[serde(serialize_with = "ser_idx")]
    pub on: Vec<usize>,
    #[serde(serialize_with = "ser_qvec")]
    pub lhs: QVec,
    #[serde(serialize_with = "ser_qvec")]
    pub rhs: QVec,
}

/// Failing power of `Φ_t(φ̃_t(x…)) = φ_t(Φ_t x…)`.
pub type HomomorphismWitness = TermWitness;

impl EquivalenceMap {
    pub fn new(maps: Vec<LinearMap>) -> Result<Self> {
        let Some(first) = maps.first() else {
            return Ok(Self { maps });
        };
        let m = first.rows();
        if maps.iter().any(|a| a.rows() != m || a.cols() != m) {
            return Err(dim_err("equivalence maps must be square of equal size"));
        }
        Ok(Self { maps })
    }

    pub fn identity(order: usize, dim: usize) -> Self {
        Self {
            maps: vec![LinearMap::zero(dim, dim); order],
        }
    }

    /// `Id + t^power ψ` padded with zeros to `order`.
    pub fn monomial(order: usize, power: usize, psi: LinearMap) -> Self {
        let m = psi.rows();
        let mut maps = vec![LinearMap::zero(m, m); order.max(power)];
        maps[power - 1] = psi;
        Self { maps }
    }

    pub fn order(&self) -> usize {
        self.maps.len()
    }

    /// `ϕ_1, …, ϕ_k`.
    pub fn maps(&self) -> &[LinearMap] {
        &self.maps
    }

    fn series(&self, dim: usize) -> Vec<LinearMap> {
        let mut s = vec![LinearMap::identity(dim)];
        s.extend(self.maps.iter().cloned());
        s
    }

    /// `Φ_t Ψ_t` truncated at `t^order`.
    pub fn compose(&self, other: &Self, dim: usize, order: usize) -> Self {
        let mut p = series::product(&self.series(dim), &other.series(dim), order);
        p.remove(0);
        Self { maps: p }
    }

    fn check_dim(&self, m: usize) -> Result<()> {
        if self.maps.iter().any(|a| a.rows() != m) {
            return Err(dim_err("equivalence map size differs from the algebra dimension"));
        }
        Ok(())
    }
}

fn brackets_of(path: &DeformationPath) -> Result<Vec<NLieAlgebra>> {
    path.coefficients().iter().map(Cochain::to_algebra).collect()
}

/// `Φ_t^{-1} φ_t(Φ_t x_1, …, Φ_t x_n)` modulo `t^{k+1}`, with the inverse
/// expanded as a truncated power series.
pub fn conjugate(target: &DeformationPath, phi: &EquivalenceMap) -> Result<DeformationPath> {
    let base = target.base();
    let (n, m) = (base.arity(), base.dim());
    phi.check_dim(m)?;
    let k = target.order();
    let coeffs = conjugated_coefficients(target, phi, k)?;
    let mut terms = vec![Cochain::zero(n, m, 1)?; k];
    for (t, series) in sorted_tuples(m, n).iter().zip(coeffs) {
        for (r, v) in series.into_iter().enumerate().skip(1) {
            terms[r - 1].add_entry(&[], t, &v)?;
        }
    }
    DeformationPath::new(base.clone(), terms)
}

/// Per sorted tuple, coefficients `0..=k` of the conjugated bracket.
fn conjugated_coefficients(target: &DeformationPath, phi: &EquivalenceMap, k: usize) -> Result<Vec<Series>> {
    let base = target.base();
    let (n, m) = (base.arity(), base.dim());
    let brackets = brackets_of(target)?;
    let fwd = phi.series(m);
    let inv = series::inverse(&fwd, k);
    Ok(sorted_tuples(m, n)
        .par_iter()
        .map(|t| {
            let args: Vec<Series> = t
                .iter()
                .map(|&i| series::apply(&fwd, &vec![unit_vec(m, i)], Some(k)))
                .collect();
            let b = series::bracket(&brackets, &args, Some(k));
            series::pad(series::apply(&inv, &b, Some(k)), k + 1, m)
        })
        .collect())
}

/// Whether `φ̃_t = Φ_t^{-1} φ_t(Φ_t ·, …, Φ_t ·)` modulo `t^{k+1}`, with
/// `source = φ̃_t` and `target = φ_t`.
pub fn check_equivalence(
    source: &DeformationPath,
    target: &DeformationPath,
    phi: &EquivalenceMap,
) -> Result<Verdict<TermWitness>> {
    if source.order() != target.order() {
        return Err(Error::InvalidArgument(format!(
            "path orders {} and {} differ",
            source.order(),
            target.order()
        )));
    }
    let (sb, tb) = (source.base(), target.base());
    if sb.arity() != tb.arity() || sb.dim() != tb.dim() {
        return Err(dim_err("paths over different spaces"));
    }
    let (n, m) = (sb.arity(), sb.dim());
    phi.check_dim(m)?;
    let k = target.order();
    let conj = conjugated_coefficients(target, phi, k)?;
    let src = source.coefficients();
    let tuples = sorted_tuples(m, n);
    for r in 0..=k {
        for (t, series) in tuples.iter().zip(&conj) {
            let lhs = src[r].get(&[], t)?;
            if lhs != series[r] {
                return Ok(Verdict::fails(TermWitness {
                    power: r,
                    on: t.clone(),
                    lhs,
                    rhs: series[r].clone(),
                }));
            }
        }
    }
    Ok(Verdict::holds())
}

/// Whether `Φ_t(φ̃_t(x_1, …, x_n)) = φ_t(Φ_t x_1, …, Φ_t x_n)` as an exact
/// polynomial identity in `t` (no truncation), on all basis tuples.
pub fn check_homomorphism(
    source: &DeformationPath,
    target: &DeformationPath,
    phi: &EquivalenceMap,
) -> Result<Verdict<HomomorphismWitness>> {
    let (sb, tb) = (source.base(), target.base());
    if sb.arity() != tb.arity() || sb.dim() != tb.dim() {
        return Err(dim_err("paths over different spaces"));
    }
    let (n, m) = (sb.arity(), sb.dim());
    phi.check_dim(m)?;
    let fwd = phi.series(m);
    let src = brackets_of(source)?;
    let tgt = brackets_of(target)?;
    for t in sorted_tuples(m, n) {
        let basis: Vec<Series> = t.iter().map(|&i| vec![unit_vec(m, i)]).collect();
        let lhs = series::apply(&fwd, &series::bracket(&src, &basis, None), None);
        let args: Vec<Series> = basis.iter().map(|b| series::apply(&fwd, b, None)).collect();
        let rhs = series::bracket(&tgt, &args, None);
        let len = lhs.len().max(rhs.len());
        let lhs = series::pad(lhs, len, m);
        let rhs = series::pad(rhs, len, m);
        if let Some(r) = (0..len).find(|&r| lhs[r] != rhs[r]) {
            return Ok(Verdict::fails(TermWitness {
                power: r,
                on: t,
                lhs: lhs[r].clone(),
                rhs: rhs[r].clone(),
            }));
        }
    }
    Ok(Verdict::holds())
}
