use num_traits::{One, Zero};

use super::cochain::{Cochain, Space};
use super::product::{assemble, gla_bracket, maurer_cartan_defect};
use crate::arith::{axpy, unit_vec, zero_vec, QVec, Rational};
use crate::combinat::sorted_tuples;
use crate::error::{dim_err, Error, Result};
use crate::nlie::{LinearMap, NLieAlgebra, WedgeElement};

/// The deformation complex `(Der^{*−1}, δ = [φ, ·])` of a Filippov algebra.
#[derive(Debug, Clone)]
pub struct Complex {
    algebra: NLieAlgebra,
    phi: Cochain,
}

impl Complex {
    /// Fails with [`Error::FundamentalIdentity`] if the bracket is not
    /// Filippov.
    pub fn new(algebra: &NLieAlgebra) -> Result<Self> {
        if !algebra.check_fundamental_identity().is_holds() {
            return Err(Error::FundamentalIdentity);
        }
        Ok(Self {
            phi: Cochain::from_algebra(algebra),
            algebra: algebra.clone(),
        })
    }

    /// Fails with [`Error::NotMaurerCartan`] unless `[φ, φ] = 0`.
    pub fn from_cochain(phi: &Cochain) -> Result<Self> {
        if !maurer_cartan_defect(phi)?.is_zero() {
            return Err(Error::NotMaurerCartan);
        }
        Ok(Self {
            algebra: phi.to_algebra()?,
            phi: phi.clone(),
        })
    }

    pub fn algebra(&self) -> &NLieAlgebra {
        &self.algebra
    }

    pub fn phi(&self) -> &Cochain {
        &self.phi
    }

    /// `δ(ψ) = [φ, ψ]`, and `δ(X) = ad_X` in degree −1.
    pub fn differential(&self, psi: &Cochain) -> Result<Cochain> {
        self.phi.same_space(psi)?;
        if psi.degree() == -1 {
            let x = psi.to_wedge()?;
            return Cochain::from_linear_map(psi.arity(), &self.algebra.ad_map(&x)?);
        }
        gla_bracket(&self.phi, psi)
    }
}

/// `δ_φ(ψ)` for a degree 1 cochain `φ`, checked to satisfy `[φ, φ] = 0`.
pub fn differential(phi: &Cochain, psi: &Cochain) -> Result<Cochain> {
    Complex::from_cochain(phi)?.differential(psi)
}

/// The coboundary written out as four sums, on `p + 1` blocks `X_i` and a
/// section argument `z` (indices 1-based):
///
/// ```text
///   Σ_i       (−1)^i     ψ(X_1..X̂_i..X_{p+1}, [X_i, z])
/// + Σ_{i<j}   (−1)^i     ψ(X_1..X̂_i..X_{j−1}, [X_i, X_j], X_{j+1}..X_{p+1}, z)
/// + Σ_i       (−1)^{i+1} [X_i, ψ(X_1..X̂_i..X_{p+1}, z)]
/// + (−1)^p Σ_s [X_{p+1}^1, .., ψ(X_1..X_p, X_{p+1}^s), .., X_{p+1}^{n−1}, z]
/// ```
///
/// Built only from the bracket of `alg`; it is tested against
/// [`Complex::differential`].
pub fn coboundary_explicit(alg: &NLieAlgebra, psi: &Cochain) -> Result<Cochain> {
    if psi.arity() != alg.arity() || psi.dim() != alg.dim() {
        return Err(dim_err("cochain and algebra shapes differ"));
    }
    let p = usize::try_from(psi.degree())
        .map_err(|_| Error::InvalidArgument("explicit coboundary needs degree ≥ 0".into()))?;
    if !alg.check_fundamental_identity().is_holds() {
        return Err(Error::FundamentalIdentity);
    }
    let sp = Space::new(alg.arity(), alg.dim());
    let m = alg.dim();
    let one = Rational::one();
    let sgn = |e: usize| if e.is_multiple_of(2) { one.clone() } else { -one.clone() };
    let act = |x: &WedgeElement, v: &[Rational]| alg.act(x, v).expect("shapes checked");

    Ok(assemble(&sp, p as i32 + 1, |xs, z| {
        let mut out = zero_vec(m);
        for i in 0..=p {
            // signs count positions from 1
            let rest: Vec<&WedgeElement> = (0..=p).filter(|&l| l != i).map(|l| xs[l]).collect();
            psi.eval_acc(&sp, &rest, &act(xs[i], z), &sgn(i + 1), &mut out);

            let mut v = zero_vec(m);
            psi.eval_acc(&sp, &rest, z, &one, &mut v);
            axpy(&mut out, &sgn(i), &act(xs[i], &v));

            for j in i + 1..=p {
                let bij = alg.fundamental_bracket(xs[i], xs[j]).expect("shapes checked");
                let args: Vec<&WedgeElement> = (0..=p)
                    .filter(|&l| l != i)
                    .map(|l| if l == j { &bij } else { xs[l] })
                    .collect();
                psi.eval_acc(&sp, &args, z, &sgn(i + 1), &mut out);
            }
        }
        let head = &xs[..p];
        let mut inserted = WedgeElement::zero(alg.arity() - 1, m);
        for (t, c) in xs[p].terms() {
            for s in 0..t.len() {
                let mut v = zero_vec(m);
                psi.eval_acc(&sp, head, &unit_vec(m, t[s]), &one, &mut v);
                let mut u = t.clone();
                for (l, vl) in v.iter().enumerate() {
                    if !vl.is_zero() {
                        u[s] = l;
                        inserted.add_basis(&u, c * vl);
                    }
                }
            }
        }
        axpy(&mut out, &sgn(p), &act(&inserted, z));
        out
    }))
}

/// Whether `D[x_1..x_n] = Σ_i [x_1..Dx_i..x_n]` on all basis tuples.
pub fn is_filippov_derivation(alg: &NLieAlgebra, d: &LinearMap) -> Result<bool> {
    let m = alg.dim();
    if d.rows() != m || d.cols() != m {
        return Err(dim_err("derivation must be an m x m matrix"));
    }
    let cols: Vec<QVec> = (0..m).map(|j| d.column(j)).collect();
    for t in sorted_tuples(m, alg.arity()) {
        let lhs = d.apply(&alg.bracket_basis(&t))?;
        let mut rhs = zero_vec(m);
        for i in 0..t.len() {
            let mut args: Vec<QVec> = t.iter().map(|&l| unit_vec(m, l)).collect();
            args[i] = cols[t[i]].clone();
            axpy(&mut rhs, &Rational::one(), &alg.bracket_vecs(&args));
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}
