//! Standard algebras and seeded random families used by tests and the CLI.

use rand::Rng;

use super::NLieAlgebra;
use crate::arith::{frac, q, zero_vec, QVec, Rational, RationalMatrix};
use crate::combinat::sorted_tuples;

fn vec_of(m: usize, entries: &[(usize, i64)]) -> QVec {
    let mut v = zero_vec(m);
    for &(i, c) in entries {
        v[i] = q(c);
    }
    v
}

/// The 3-Lie algebra on ℚ⁴ with `[e1,e2,e3]=e4`, `[e1,e2,e4]=−e3`,
/// `[e1,e3,e4]=e2`, `[e2,e3,e4]=−e1`.
pub fn epsilon4() -> NLieAlgebra {
    NLieAlgebra::from_brackets(
        3,
        4,
        [
            (vec![0, 1, 2], vec_of(4, &[(3, 1)])),
            (vec![0, 1, 3], vec_of(4, &[(2, -1)])),
            (vec![0, 2, 3], vec_of(4, &[(1, 1)])),
            (vec![1, 2, 3], vec_of(4, &[(0, -1)])),
        ],
    )
    .expect("valid")
}

/// `sl₂` in the basis `(h, e, f)`: `[h,e]=2e`, `[h,f]=−2f`, `[e,f]=h`.
pub fn sl2() -> NLieAlgebra {
    NLieAlgebra::from_brackets(
        2,
        3,
        [
            (vec![0, 1], vec_of(3, &[(1, 2)])),
            (vec![0, 2], vec_of(3, &[(2, -2)])),
            (vec![1, 2], vec_of(3, &[(0, 1)])),
        ],
    )
    .expect("valid")
}

/// A ternary bracket on ℚ⁴ violating the fundamental identity:
/// `[e1,e2,e3]=e1`, `[e1,e2,e4]=e4`.
pub fn fi_violating() -> NLieAlgebra {
    NLieAlgebra::from_brackets(
        3,
        4,
        [
            (vec![0, 1, 2], vec_of(4, &[(0, 1)])),
            (vec![0, 1, 3], vec_of(4, &[(3, 1)])),
        ],
    )
    .expect("valid")
}

/// Random small rational in `{−2, …, 2} / {1, 2}`.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    frac(rng.gen_range(-2..=2), rng.gen_range(1..=2))
}

/// Random bracket with `1..=max_keys` nonzero sorted keys and small
/// rational coefficients; the fundamental identity may or may not hold.
pub fn random_bracket<R: Rng>(rng: &mut R, arity: usize, dim: usize, max_keys: usize) -> NLieAlgebra {
    let keys = sorted_tuples(dim, arity);
    let mut alg = NLieAlgebra::zero(arity, dim).expect("valid shape");
    let count = rng.gen_range(1..=max_keys.max(1));
    for _ in 0..count {
        let key = &keys[rng.gen_range(0..keys.len())];
        let mut v = zero_vec(dim);
        // sparse values keep a fair share of identity-satisfying samples
        let nnz = rng.gen_range(1..=2);
        for _ in 0..nnz {
            v[rng.gen_range(0..dim)] = small_rational(rng);
        }
        alg.add_bracket(key, &v).expect("in range");
    }
    alg
}

/// Random invertible integer matrix: product of unit triangular matrices with
/// small entries, together with its exact inverse.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> (RationalMatrix, RationalMatrix) {
    let mut lower = RationalMatrix::identity(n);
    let mut upper = RationalMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            if i > j {
                lower.set(i, j, q(rng.gen_range(-1..=1)));
            } else if i < j {
                upper.set(i, j, q(rng.gen_range(-1..=1)));
            }
        }
    }
    let g = lower.mul(&upper).expect("square");
    let g_inv = unit_upper_inverse(&upper)
        .mul(&unit_lower_inverse(&lower))
        .expect("square");
    (g, g_inv)
}

fn unit_lower_inverse(l: &RationalMatrix) -> RationalMatrix {
    let n = l.rows();
    let mut inv = RationalMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            let mut s = Rational::from_integer(0.into());
            for k in j..i {
                s += l.get(i, k) * inv.get(k, j);
            }
            inv.set(i, j, -s);
        }
    }
    inv
}

fn unit_upper_inverse(u: &RationalMatrix) -> RationalMatrix {
    unit_lower_inverse(&u.transpose()).transpose()
}

/// Random 3-dimensional Lie algebra: `ℚ ⋉_M ℚ²` with a random 2×2 matrix `M`
/// (Jacobi holds because `ℚ²` is an abelian ideal), transported along a
/// random unimodular change of basis.
pub fn random_lie3<R: Rng>(rng: &mut R) -> NLieAlgebra {
    let mut mm = [[0i64; 2]; 2];
    for row in mm.iter_mut() {
        for x in row.iter_mut() {
            *x = rng.gen_range(-2..=2);
        }
    }
    // [e1,e2] = M11 e2 + M21 e3, [e1,e3] = M12 e2 + M22 e3
    let base = NLieAlgebra::from_brackets(
        2,
        3,
        [
            (vec![0, 1], vec_of(3, &[(1, mm[0][0]), (2, mm[1][0])])),
            (vec![0, 2], vec_of(3, &[(1, mm[0][1]), (2, mm[1][1])])),
        ],
    )
    .expect("valid");
    let (g, g_inv) = random_unimodular(rng, 3);
    base.transport(&g, &g_inv).expect("square change of basis")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unimodular_inverse_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let (g, gi) = random_unimodular(&mut rng, 4);
            assert_eq!(g.mul(&gi).unwrap(), RationalMatrix::identity(4));
        }
    }

    #[test]
    fn random_lie3_satisfies_jacobi() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            assert!(random_lie3(&mut rng).check_fundamental_identity().is_holds());
        }
    }
}
