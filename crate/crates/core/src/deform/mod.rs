//! Finite-order deformations `φ_t = φ + Σ t^i φ_i` of a Filippov algebra,
//! their equivalences, Nijenhuis operators, obstructions and extension.

mod equivalence;
mod nijenhuis;
mod obstruction;
mod series;

pub use equivalence::{
    check_equivalence, check_homomorphism, conjugate, EquivalenceMap, HomomorphismWitness, TermWitness,
};
pub use nijenhuis::{
    check_nijenhuis, deformation_from_nijenhuis, nijenhuis_bracket, o_operator_lift, NijenhuisWitness, OOperatorLift,
};
pub use obstruction::{
    extend, infinitesimal_class, obstruction, rigidity_probe, Extension, InfinitesimalClass, RigidityReport,
    RigidityTrial,
};

use rayon::prelude::*;
use serde::Serialize;

use crate::cochains::{gla_bracket, Cochain};
use crate::error::{dim_err, Error, Result};
use crate::nlie::NLieAlgebra;
use crate::report::Verdict;

/// `φ_t = φ_0 + t φ_1 + … + t^k φ_k` with `φ_0` the bracket of `base`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeformationPath {
    base: NLieAlgebra,
    terms: Vec<Cochain>,
}

/// Which powers of `t` the deformation equations are imposed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Powers `1..=k`: a deformation of order `k` ("modulo `t^{k+1}`").
    Truncated,
    /// Powers `1..=2k`: the polynomial bracket satisfies the identity exactly.
    Full,
}

/// The coefficient `Σ_{i+j=r} [φ_i, φ_j]` of the first failing power `r`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerWitness {
    pub power: usize,
    pub defect: Cochain,
}

impl DeformationPath {
    pub fn new(base: NLieAlgebra, terms: Vec<Cochain>) -> Result<Self> {
        for (i, c) in terms.iter().enumerate() {
            if c.degree() != 1 || c.arity() != base.arity() || c.dim() != base.dim() {
                return Err(dim_err(format!(
                    "term {} must be a degree 1 cochain over (n={}, m={})",
                    i + 1,
                    base.arity(),
                    base.dim()
                )));
            }
        }
        Ok(Self { base, terms })
    }

    /// The undeformed path of the given order.
    pub fn constant(base: &NLieAlgebra, order: usize) -> Self {
        let zero = Cochain::zero(base.arity(), base.dim(), 1).expect("valid shape");
        Self {
            base: base.clone(),
            terms: vec![zero; order],
        }
    }

    pub fn base(&self) -> &NLieAlgebra {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    /// `φ_1, …, φ_k`.
    pub fn terms(&self) -> &[Cochain] {
        &self.terms
    }

    /// `φ_i` for any `i ≥ 0`; zero beyond the order.
    pub fn coefficient(&self, i: usize) -> Cochain {
        match i {
            0 => Cochain::from_algebra(&self.base),
            _ => self
                .terms
                .get(i - 1)
                .cloned()
                .unwrap_or_else(|| Cochain::zero(self.base.arity(), self.base.dim(), 1).expect("valid shape")),
        }
    }

    /// All coefficients `φ_0, …, φ_k`.
    pub fn coefficients(&self) -> Vec<Cochain> {
        (0..=self.order()).map(|i| self.coefficient(i)).collect()
    }

    /// The path of order `k + 1` with `φ_{k+1}` appended.
    pub fn extended(&self, next: Cochain) -> Result<Self> {
        let mut terms = self.terms.clone();
        terms.push(next);
        Self::new(self.base.clone(), terms)
    }

    /// The bracket `φ_t` at a rational value of `t`.
    pub fn at(&self, t: &crate::arith::Rational) -> Result<NLieAlgebra> {
        let mut c = self.coefficient(0);
        let mut tp = t.clone();
        for term in &self.terms {
            c.add_scaled(&tp, term)?;
            tp *= t;
        }
        c.to_algebra()
    }
}

/// `Σ_{i+j=r} [φ_i, φ_j]` for `r = 1..=max_power`, sharing the symmetric
/// brackets (`[φ_i, φ_j] = [φ_j, φ_i]` in degree 1).
pub(crate) fn power_sums(coeffs: &[Cochain], max_power: usize) -> Result<Vec<Cochain>> {
    let k = coeffs.len() - 1;
    let pairs: Vec<(usize, usize)> = (0..=k)
        .flat_map(|i| (i..=k).map(move |j| (i, j)))
        .filter(|&(i, j)| i + j >= 1 && i + j <= max_power)
        .collect();
    let brackets = pairs
        .par_iter()
        .map(|&(i, j)| gla_bracket(&coeffs[i], &coeffs[j]))
        .collect::<Result<Vec<_>>>()?;
    let c0 = &coeffs[0];
    let mut sums = vec![Cochain::zero(c0.arity(), c0.dim(), 2)?; max_power];
    let two = crate::arith::q(2);
    let one = crate::arith::q(1);
    for (&(i, j), b) in pairs.iter().zip(&brackets) {
        sums[i + j - 1].add_scaled(if i == j { &one } else { &two }, b)?;
    }
    Ok(sums)
}

/// The deformation equations on `[φ_t, φ_t]`, power by power.
pub fn check_deformation(path: &DeformationPath, mode: Mode) -> Result<Verdict<PowerWitness>> {
    if !path.base.check_fundamental_identity().is_holds() {
        return Err(Error::FundamentalIdentity);
    }
    let k = path.order();
    let max_power = match mode {
        Mode::Truncated => k,
        Mode::Full => 2 * k,
    };
    if max_power == 0 {
        return Ok(Verdict::holds());
    }
    let sums = power_sums(&path.coefficients(), max_power)?;
    Ok(match sums.into_iter().enumerate().find(|(_, s)| !s.is_zero()) {
        None => Verdict::holds(),
        Some((r, defect)) => Verdict::fails(PowerWitness { power: r + 1, defect }),
    })
}

/// Errors with [`Error::InvalidPath`] unless the truncated equations hold.
pub(crate) fn require_valid(path: &DeformationPath) -> Result<()> {
    match check_deformation(path, Mode::Truncated)?.witness {
        None => Ok(()),
        Some(w) => Err(Error::InvalidPath(w.power)),
    }
}
