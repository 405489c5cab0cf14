use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::examples::{epsilon4, fi_violating, random_bracket, random_lie3, sl2, small_rational};
use super::*;
use crate::arith::{q, unit_vec, zero_vec, QVec, RationalMatrix};
use crate::combinat::sorted_tuples;

fn e(m: usize, i: usize) -> QVec {
    unit_vec(m, i)
}

#[test]
fn zero_bracket_is_zero() {
    let a = NLieAlgebra::zero(3, 4).unwrap();
    let v = a.bracket_eval(&[e(4, 0), e(4, 1), e(4, 2)]).unwrap();
    assert_eq!(v, zero_vec(4));
    assert!(a.check_fundamental_identity().is_holds());
}

#[test]
fn epsilon_bracket_signs() {
    let a = epsilon4();
    // [e2, e1, e3] = −[e1, e2, e3] = −e4
    let v = a.bracket_eval(&[e(4, 1), e(4, 0), e(4, 2)]).unwrap();
    assert_eq!(v, e(4, 3).iter().map(|x| -x).collect::<Vec<_>>());
    let v = a.bracket_eval(&[e(4, 0), e(4, 0), e(4, 1)]).unwrap();
    assert_eq!(v, zero_vec(4));
}

/// Exhaustive skewness oracle: every permutation of every basis triple
/// changes the bracket by the permutation sign.
#[test]
fn epsilon_bracket_exhaustive_skewness() {
    let a = epsilon4();
    for t in crate::combinat::all_tuples(4, 3) {
        let args: Vec<QVec> = t.iter().map(|&i| e(4, i)).collect();
        let v = a.bracket_eval(&args).unwrap();
        let mut sorted = t.clone();
        match crate::combinat::sort_sign(&mut sorted) {
            None => assert_eq!(v, zero_vec(4)),
            Some(s) => {
                let base = a.bracket_basis(&sorted);
                let expect: QVec = base.iter().map(|x| x * q(s as i64)).collect();
                assert_eq!(v, expect);
            }
        }
    }
}

#[test]
fn wrong_argument_shapes() {
    let a = epsilon4();
    assert!(a.bracket_eval(&[e(4, 0), e(4, 1)]).is_err());
    assert!(a.bracket_eval(&[e(4, 0), e(4, 1), e(3, 1)]).is_err());
}

#[test]
fn fundamental_identity_verdicts() {
    assert!(epsilon4().check_fundamental_identity().is_holds());
    assert!(sl2().check_fundamental_identity().is_holds());
    let bad = fi_violating();
    let v = bad.check_fundamental_identity();
    let w = v.witness.clone().expect("must fail");
    // replay the witness
    let (l, r) = bad.fi_sides(&w.a, &w.b);
    assert_ne!(l, r);
    assert_eq!(l, w.lhs);
    // the documented hand-checkable instance: X = e2∧e3 on [e1,e2,e4]
    let (l, r) = bad.fi_sides(&[1, 2], &[0, 1, 3]);
    assert_eq!(l, zero_vec(4));
    assert_eq!(r, e(4, 3));
}

#[test]
fn fundamental_identity_random_non_basis_confirmation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let a = epsilon4();
    let rv = |rng: &mut ChaCha8Rng| (0..4).map(|_| small_rational(rng)).collect::<QVec>();
    for _ in 0..5 {
        let av = vec![rv(&mut rng), rv(&mut rng)];
        let bv = vec![rv(&mut rng), rv(&mut rng), rv(&mut rng)];
        let (l, r) = a.fi_sides_vecs(&av, &bv);
        assert_eq!(l, r);
    }
}

#[test]
fn fundamental_bracket_examples() {
    let a = epsilon4();
    let x = WedgeElement::basis(4, &[0, 1]).unwrap();
    let y = WedgeElement::basis(4, &[2, 3]).unwrap();
    assert!(a.fundamental_bracket(&x, &x).unwrap().is_zero());
    assert!(a.fundamental_bracket(&x, &y).unwrap().is_zero());
    let z = NLieAlgebra::zero(3, 4).unwrap();
    assert!(z.fundamental_bracket(&x, &y).unwrap().is_zero());
    let bad = WedgeElement::basis(4, &[0]).unwrap();
    assert!(a.fundamental_bracket(&bad, &y).is_err());
}

/// Leibniz identity `[X,[Y,Z]] = [[X,Y],Z] + [Y,[X,Z]]` on all basis wedges.
#[test]
fn fundamental_bracket_is_leibniz() {
    for alg in [epsilon4(), NLieAlgebra::zero(3, 3).unwrap()] {
        let ws: Vec<WedgeElement> = sorted_tuples(alg.dim(), 2)
            .iter()
            .map(|t| WedgeElement::basis(alg.dim(), t).unwrap())
            .collect();
        for x in &ws {
            for y in &ws {
                for z in &ws {
                    let lhs = alg
                        .fundamental_bracket(x, &alg.fundamental_bracket(y, z).unwrap())
                        .unwrap();
                    let mut rhs = alg
                        .fundamental_bracket(&alg.fundamental_bracket(x, y).unwrap(), z)
                        .unwrap();
                    rhs.add_scaled(
                        &q(1),
                        &alg.fundamental_bracket(y, &alg.fundamental_bracket(x, z).unwrap())
                            .unwrap(),
                    );
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn ad_map_of_epsilon() {
    let a = epsilon4();
    let x = WedgeElement::basis(4, &[0, 1]).unwrap();
    let ad = a.ad_map(&x).unwrap();
    let mut expect = RationalMatrix::zero(4, 4);
    expect.set(3, 2, q(1)); // e3 -> e4
    expect.set(2, 3, q(-1)); // e4 -> -e3
    assert_eq!(ad, expect);
    let z = NLieAlgebra::zero(3, 4).unwrap();
    assert!(z.ad_map(&x).unwrap().is_zero());
}

fn ad_is_derivation(alg: &NLieAlgebra) -> bool {
    let n = alg.arity();
    let m = alg.dim();
    sorted_tuples(m, n - 1).iter().all(|t| {
        let ad = alg.ad_map(&WedgeElement::basis(m, t).unwrap()).unwrap();
        sorted_tuples(m, n).iter().all(|b| {
            let bv: Vec<QVec> = b.iter().map(|&i| e(m, i)).collect();
            let lhs = ad.apply(&alg.bracket_vecs(&bv)).unwrap();
            let mut rhs = zero_vec(m);
            for i in 0..n {
                let mut args = bv.clone();
                args[i] = ad.apply(&bv[i]).unwrap();
                crate::arith::axpy(&mut rhs, &q(1), &alg.bracket_vecs(&args));
            }
            lhs == rhs
        })
    })
}

#[test]
fn fi_iff_ad_derivations_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut seen = (0, 0);
    for _ in 0..60 {
        let alg = random_bracket(&mut rng, 3, 4, 3);
        let fi = alg.check_fundamental_identity().is_holds();
        assert_eq!(fi, ad_is_derivation(&alg));
        if fi {
            seen.0 += 1
        } else {
            seen.1 += 1
        }
    }
    assert!(
        seen.0 > 0 && seen.1 > 0,
        "family should contain both verdicts: {seen:?}"
    );
}

#[test]
fn representation_checks() {
    let a = epsilon4();
    let zero = Representation::zero(3, 4, 2).unwrap();
    assert!(zero.check(&a).unwrap().is_holds());
    let adj = Representation::adjoint(&a);
    assert!(adj.check(&a).unwrap().is_holds());
    let adj2 = adj.scaled(&q(2));
    let v = adj2.check(&a).unwrap();
    assert_eq!(v.witness.as_ref().unwrap().condition, 1);
    assert!(Representation::adjoint(&sl2()).check(&sl2()).unwrap().is_holds());
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..5 {
        let l = random_lie3(&mut rng);
        assert!(Representation::adjoint(&l).check(&l).unwrap().is_holds());
    }
    assert!(adj.check(&sl2()).is_err());
}

#[test]
fn semidirect_products() {
    let a = epsilon4();
    let zero = Representation::zero(3, 4, 2).unwrap();
    let s = zero.semidirect_product(&a).unwrap();
    assert_eq!(s.dim(), 6);
    for (k, v) in a.structure() {
        let mut padded = v.clone();
        padded.extend(zero_vec(2));
        assert_eq!(&s.bracket_basis(k), &padded);
    }
    let adj = Representation::adjoint(&a);
    let s = adj.semidirect_product(&a).unwrap();
    assert_eq!(s.dim(), 8);
    assert!(s.check_fundamental_identity().is_holds());
    // all-module inputs bracket to zero
    for t in sorted_tuples(4, 3) {
        let key: Vec<usize> = t.iter().map(|i| i + 4).collect();
        assert_eq!(s.bracket_basis(&key), zero_vec(8));
    }
    assert!(matches!(
        adj.scaled(&q(2)).semidirect_product(&a),
        Err(crate::Error::InvalidRepresentation)
    ));
}

#[test]
fn o_operator_examples() {
    let a = epsilon4();
    let adj = Representation::adjoint(&a);
    assert!(adj
        .check_o_operator(&a, &RationalMatrix::zero(4, 4))
        .unwrap()
        .is_holds());
    let z = NLieAlgebra::zero(3, 4).unwrap();
    let rz = Representation::zero(3, 4, 4).unwrap();
    let mut t = RationalMatrix::identity(4);
    t.set(0, 3, q(5));
    assert!(rz.check_o_operator(&z, &t).unwrap().is_holds());
    // identity on the adjoint representation: LHS [ξ] against RHS 3[ξ]
    let v = adj.check_o_operator(&a, &RationalMatrix::identity(4)).unwrap();
    let w = v.witness.expect("identity is not an O-operator");
    let three: QVec = w.lhs.iter().map(|x| x * q(3)).collect();
    assert_eq!(w.rhs, three);
    assert!(adj.check_o_operator(&a, &RationalMatrix::zero(3, 4)).is_err());
}

proptest! {
    #[test]
    fn bracket_is_skew(i in 0usize..3, j in 0usize..3, coeffs in proptest::collection::vec(-3i64..=3, 12)) {
        prop_assume!(i != j);
        let a = epsilon4();
        let mut args: Vec<QVec> = coeffs.chunks(4).map(|c| c.iter().map(|&x| q(x)).collect()).collect();
        let v = a.bracket_eval(&args).unwrap();
        args.swap(i, j);
        let w = a.bracket_eval(&args).unwrap();
        for (x, y) in v.iter().zip(&w) {
            prop_assert!((x + y).is_zero());
        }
    }
}
