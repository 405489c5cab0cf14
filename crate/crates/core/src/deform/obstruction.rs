use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{conjugate, power_sums, require_valid, DeformationPath, EquivalenceMap};
use crate::arith::{zero_vec, QVec, Rational, RationalMatrix};
use crate::cochains::{Cochain, Complex};
use crate::cohomology::{cohomology, differential_matrix_of, inconsistency_certificate, rank_nullspace, solve};
use crate::error::{Error, Result};
use crate::nlie::examples::small_rational;
use crate::nlie::NLieAlgebra;
use crate::report::ser_qvec;

/// `Θ = −½ Σ_{i+j=k+1, i,j>0} [φ_i, φ_j]` for a valid path of order `k`.
pub fn obstruction(path: &DeformationPath) -> Result<Cochain> {
    require_valid(path)?;
    obstruction_unchecked(path)
}

fn obstruction_unchecked(path: &DeformationPath) -> Result<Cochain> {
    let k = path.order();
    let base = path.base();
    if k == 0 {
        return Cochain::zero(base.arity(), base.dim(), 2);
    }
    // the i = 0 and j = 0 pairs are excluded by dropping φ_0
    let mut coeffs = path.coefficients();
    coeffs[0] = Cochain::zero(base.arity(), base.dim(), 1)?;
    let sums = power_sums(&coeffs, k + 1)?;
    Ok(sums[k].scale(&-crate::arith::frac(1, 2)))
}

/// Outcome of trying to extend a deformation by one order.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Extension {
    /// `δ(next) = Θ`; `next` is the echelon solution with free coordinates 0.
    Extended { next: Cochain },
    /// `certificate · δ = 0` while `certificate · Θ ≠ 0`.
    Obstructed {
        obstruction: Cochain,
        #[serde(serialize_with = "ser_qvec")]
        certificate: QVec,
    },
}

impl Extension {
    pub fn is_extended(&self) -> bool {
        matches!(self, Self::Extended { .. })
    }
}

/// Solves `δ(φ_{k+1}) = Θ` over ℚ.
pub fn extend(path: &DeformationPath) -> Result<Extension> {
    let theta = obstruction(path)?;
    let base = path.base();
    if theta.is_zero() {
        return Ok(Extension::Extended {
            next: Cochain::zero(base.arity(), base.dim(), 1)?,
        });
    }
    let cx = Complex::new(base)?;
    let d = differential_matrix_of(&cx, 2)?;
    Ok(match solve(&d, theta.values()) {
        Some(x) => Extension::Extended {
            next: Cochain::from_values(base.arity(), base.dim(), 1, x)?,
        },
        None => {
            let certificate = inconsistency_certificate(&d, theta.values()).expect("inconsistent system");
            Extension::Obstructed {
                obstruction: theta,
                certificate,
            }
        }
    })
}

/// The first nonzero term of a valid path and its class in `H^2_F`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InfinitesimalClass {
    /// Index `m` of the first nonzero `φ_m`, if any.
    pub power: Option<usize>,
    pub cocycle: Option<Cochain>,
    pub is_cocycle: bool,
    pub betti: usize,
    /// Coordinates in the representative basis of `cohomology(base, 2)`.
    #[serde(serialize_with = "ser_qvec")]
    pub coordinates: QVec,
    /// The class vanishes.
    pub exact: bool,
}

pub fn infinitesimal_class(path: &DeformationPath) -> Result<InfinitesimalClass> {
    require_valid(path)?;
    let base = path.base();
    let h2 = cohomology(base, 2)?;
    let first = path.terms().iter().position(|c| !c.is_zero());
    let Some(i) = first else {
        return Ok(InfinitesimalClass {
            power: None,
            cocycle: None,
            is_cocycle: true,
            betti: h2.betti,
            coordinates: zero_vec(h2.betti),
            exact: true,
        });
    };
    let c = path.terms()[i].clone();
    let cx = Complex::new(base)?;
    let is_cocycle = cx.differential(&c)?.is_zero();
    let dim = c.values().len();
    let mut cols: Vec<QVec> = h2.representatives.iter().map(|r| r.values().to_vec()).collect();
    let d_in = differential_matrix_of(&cx, 1)?;
    cols.extend((0..d_in.cols()).map(|j| d_in.column(j)));
    let a = RationalMatrix::from_columns(dim, cols)?;
    let x =
        solve(&a, c.values()).ok_or_else(|| Error::InvalidArgument("first nonzero term is not a cocycle".into()))?;
    let coordinates: QVec = x[..h2.betti].to_vec();
    let exact = coordinates.iter().all(num_traits::Zero::is_zero);
    Ok(InfinitesimalClass {
        power: Some(i + 1),
        cocycle: Some(c),
        is_cocycle,
        betti: h2.betti,
        coordinates,
        exact,
    })
}

/// One sampled deformation and the attempt to trivialize it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RigidityTrial {
    /// Order of the sampled path (extension can stop early when obstructed).
    pub order: usize,
    pub path: DeformationPath,
    pub trivialized: bool,
    /// `Φ_t` with `constant = Φ_t^{-1} path(Φ_t ·)`, when trivialized.
    pub equivalence: Option<EquivalenceMap>,
    /// Power whose term has a nonvanishing class.
    pub nontrivial_power: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RigidityReport {
    pub note: &'static str,
    pub h2_betti: usize,
    pub max_order: usize,
    pub trials: Vec<RigidityTrial>,
}

const PROBE_NOTE: &str = "sampling probe, not a decision procedure: rigidity quantifies over all \
finite order deformations and only the sampled ones are trivialized here";

/// Samples deformations of order `≤ max_order` from random 2-cocycles
/// extended order by order, and trivializes each by solving
/// `δ(Ψ) = −φ_m` and conjugating by `Id + t^m Ψ`, lowest power first.
pub fn rigidity_probe(alg: &NLieAlgebra, max_order: usize, trials: usize, seed: u64) -> Result<RigidityReport> {
    let cx = Complex::new(alg)?;
    let (n, m) = (alg.arity(), alg.dim());
    let h2 = cohomology(alg, 2)?;
    let d1 = differential_matrix_of(&cx, 1)?;
    let cocycles = rank_nullspace(&differential_matrix_of(&cx, 2)?).nullspace;
    let mut out = Vec::with_capacity(trials);
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial as u64));
        let mut path = DeformationPath::constant(alg, 0);
        if max_order > 0 {
            let mut phi1 = Cochain::zero(n, m, 1)?;
            for z in &cocycles {
                let c = small_rational(&mut rng);
                phi1.add_scaled(&c, &Cochain::from_values(n, m, 1, z.clone())?)?;
            }
            path = path.extended(phi1)?;
        }
        while path.order() < max_order {
            match extend(&path)? {
                Extension::Extended { next } => path = path.extended(next)?,
                Extension::Obstructed { .. } => break,
            }
        }
        out.push(trivialize(&path, &d1)?);
    }
    Ok(RigidityReport {
        note: PROBE_NOTE,
        h2_betti: h2.betti,
        max_order,
        trials: out,
    })
}

fn trivialize(path: &DeformationPath, d1: &RationalMatrix) -> Result<RigidityTrial> {
    let base = path.base();
    let (n, m) = (base.arity(), base.dim());
    let k = path.order();
    let mut current = path.clone();
    let mut total = EquivalenceMap::identity(k, m);
    for power in 1..=k {
        let phi_m = &current.terms()[power - 1];
        if phi_m.is_zero() {
            continue;
        }
        let rhs: Vec<Rational> = phi_m.values().iter().map(|x| -x).collect();
        let Some(psi) = solve(d1, &rhs) else {
            return Ok(RigidityTrial {
                order: k,
                path: path.clone(),
                trivialized: false,
                equivalence: None,
                nontrivial_power: Some(power),
            });
        };
        let psi = Cochain::from_values(n, m, 0, psi)?.to_linear_map()?;
        let step = EquivalenceMap::monomial(k, power, psi);
        current = conjugate(&current, &step)?;
        total = total.compose(&step, m, k);
    }
    let constant = DeformationPath::constant(base, k);
    let ok = super::check_equivalence(&constant, path, &total)?.is_holds();
    Ok(RigidityTrial {
        order: k,
        path: path.clone(),
        trivialized: ok,
        equivalence: ok.then_some(total),
        nontrivial_power: None,
    })
}
