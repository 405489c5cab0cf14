mod common;

use common::{ce_differential_at, embed, nr_circle_at, AltForm};
use filippov::arith::{q, unit_vec, zero_vec, Rational};
use filippov::cochains::{
    basis, circle, coboundary_explicit, cochain_dim, gla_bracket, gla_bracket_at, is_filippov_derivation,
    maurer_cartan_defect, Cochain, Complex,
};
use filippov::combinat::{all_tuples, sorted_tuples};
use filippov::nlie::examples::{epsilon4, fi_violating, random_bracket, random_lie3, sl2, small_rational};
use filippov::{LinearMap, NLieAlgebra, WedgeElement};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_cochain(rng: &mut ChaCha8Rng, n: usize, m: usize, p: i32, density: f64) -> Cochain {
    let d = cochain_dim(m, n, p);
    let values = (0..d)
        .map(|_| {
            if rng.gen_bool(density) {
                small_rational(rng)
            } else {
                Rational::zero()
            }
        })
        .collect();
    Cochain::from_values(n, m, p, values).unwrap()
}

#[test]
fn dimensions() {
    assert_eq!(cochain_dim(4, 3, 1), 16);
    assert_eq!(cochain_dim(4, 3, 2), 96);
    assert_eq!(cochain_dim(3, 3, 1), 3);
    assert_eq!(basis(4, 3, 2).unwrap().len(), 96);
}

#[test]
fn evaluation_examples() {
    let mut d = Cochain::zero(3, 4, 1).unwrap();
    d.add_entry(&[], &[0, 1, 2], &unit_vec(4, 3)).unwrap();
    let e12 = WedgeElement::basis(4, &[0, 1]).unwrap();
    let e13 = WedgeElement::basis(4, &[0, 2]).unwrap();
    assert_eq!(
        d.evaluate(std::slice::from_ref(&e12), &unit_vec(4, 2)).unwrap(),
        unit_vec(4, 3)
    );
    assert_eq!(d.evaluate(&[e12], &unit_vec(4, 1)).unwrap(), zero_vec(4));
    let minus: Vec<Rational> = unit_vec(4, 3).into_iter().map(|x| -x).collect();
    assert_eq!(d.evaluate(&[e13], &unit_vec(4, 1)).unwrap(), minus);
}

#[test]
fn bracket_round_trip() {
    let e = epsilon4();
    let c = Cochain::from_algebra(&e);
    assert_eq!(c.to_algebra().unwrap(), e);
    assert!(Cochain::from_algebra(&NLieAlgebra::zero(3, 4).unwrap()).is_zero());
    for (t, v) in e.structure() {
        assert_eq!(&c.get(&[], t).unwrap(), v);
    }
}

#[test]
fn maurer_cartan_matches_fundamental_identity() {
    let phi = Cochain::from_algebra(&epsilon4());
    assert!(maurer_cartan_defect(&phi).unwrap().is_zero());
    let bad = Cochain::from_algebra(&fi_violating());
    assert!(!maurer_cartan_defect(&bad).unwrap().is_zero());
    // [φ, φ] = −2 φ∘φ
    let phi = Cochain::from_algebra(&fi_violating());
    let lhs = gla_bracket(&phi, &phi).unwrap();
    let rhs = circle(&phi, &phi).unwrap().scale(&q(-2));
    assert_eq!(lhs, rhs);

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut seen = [0, 0];
    for _ in 0..60 {
        let m = rng.gen_range(3..=4);
        let keys = rng.gen_range(1..=3);
        let a = random_bracket(&mut rng, 3, m, keys);
        let fi = a.check_fundamental_identity().is_holds();
        let mc = maurer_cartan_defect(&Cochain::from_algebra(&a)).unwrap().is_zero();
        assert_eq!(fi, mc, "{a:?}");
        seen[fi as usize] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0);
}

#[test]
fn circle_against_nijenhuis_richardson_for_lie_brackets() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..5 {
        let a = random_bracket(&mut rng, 2, 3, 3);
        let b = random_lie3(&mut rng);
        let c = circle(&Cochain::from_algebra(&a), &Cochain::from_algebra(&b)).unwrap();
        for x in 0..3 {
            for t in sorted_tuples(3, 2) {
                let got = c.get(&[vec![x]], &t).unwrap();
                assert_eq!(got, nr_circle_at(&a, &b, x, t[0], t[1]));
            }
        }
    }
}

/// The stored bracket is read at the canonical split of the final wedge;
/// here it is recomputed at every other split.
#[test]
fn bracket_is_skew_in_the_final_wedge() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for (p, q_) in [(0, 1), (1, 0), (1, 1), (1, 2), (2, 1), (0, 2)] {
        for _ in 0..3 {
            let n = 3;
            let m = 4;
            let d1 = random_cochain(&mut rng, n, m, p, 0.4);
            let d2 = random_cochain(&mut rng, n, m, q_, 0.4);
            let b = gla_bracket(&d1, &d2).unwrap();
            let r = (p + q_) as usize;
            let blocks = sorted_tuples(m, n - 1);
            for head in all_tuples(blocks.len(), r - 1) {
                for w in sorted_tuples(m, n) {
                    let head_w: Vec<WedgeElement> = head
                        .iter()
                        .map(|&i| WedgeElement::basis(m, &blocks[i]).unwrap())
                        .collect();
                    let head_t: Vec<Vec<usize>> = head.iter().map(|&i| blocks[i].clone()).collect();
                    let stored = b.get(&head_t, &w).unwrap();
                    for j in 0..n {
                        let mut last: Vec<usize> = w.clone();
                        let z = last.remove(j);
                        let mut args = head_w.clone();
                        args.push(WedgeElement::basis(m, &last).unwrap());
                        let direct = gla_bracket_at(&d1, &d2, &args, &unit_vec(m, z)).unwrap();
                        // moving z from slot j to the end
                        let sign = if (n - 1 - j) % 2 == 0 { q(1) } else { q(-1) };
                        let expect: Vec<Rational> = stored.iter().map(|x| x * &sign).collect();
                        assert_eq!(direct, expect, "p={p} q={q_} head={head:?} w={w:?} j={j}");
                    }
                }
            }
        }
    }
}

fn check_dd_zero(alg: &NLieAlgebra, max_degree: i32) {
    let cx = Complex::new(alg).unwrap();
    for p in -1..=max_degree {
        for psi in basis(alg.dim(), alg.arity(), p).unwrap() {
            let d = cx.differential(&psi).unwrap();
            assert!(cx.differential(&d).unwrap().is_zero(), "degree {p}");
        }
    }
}

#[test]
fn differential_squares_to_zero() {
    check_dd_zero(&epsilon4(), 1);
    check_dd_zero(&sl2(), 2);
}

#[test]
fn degree_minus_one_is_adjoint() {
    let e = epsilon4();
    let cx = Complex::new(&e).unwrap();
    let x = WedgeElement::basis(4, &[0, 1]).unwrap();
    let d = cx.differential(&Cochain::from_wedge(3, &x).unwrap()).unwrap();
    assert_eq!(d.to_linear_map().unwrap(), e.ad_map(&x).unwrap());
}

#[test]
fn explicit_coboundary_agrees() {
    let e = epsilon4();
    let cx = Complex::new(&e).unwrap();
    for p in 0..=1 {
        for psi in basis(4, 3, p).unwrap() {
            assert_eq!(
                coboundary_explicit(&e, &psi).unwrap(),
                cx.differential(&psi).unwrap(),
                "p={p}"
            );
        }
    }
}

fn check_ce(alg: &NLieAlgebra) {
    let m = alg.dim();
    let cx = Complex::new(alg).unwrap();
    // degree −1: δ(x) = ad_x = −d_CE(x)
    for x in 0..m {
        let d = cx
            .differential(&Cochain::from_wedge(2, &WedgeElement::basis(m, &[x]).unwrap()).unwrap())
            .unwrap();
        let form = AltForm {
            m,
            k: 0,
            values: [(vec![], unit_vec(m, x))].into_iter().collect(),
        };
        for y in 0..m {
            let ce: Vec<Rational> = ce_differential_at(alg, &form, &[y]).into_iter().map(|v| -v).collect();
            assert_eq!(d.get(&[], &[y]).unwrap(), ce);
        }
    }
    for k in 1..=3 {
        for form in AltForm::basis(m, k) {
            let d = cx.differential(&embed(&form)).unwrap();
            for head in all_tuples(m, k - 1) {
                for w in sorted_tuples(m, 2) {
                    let blocks: Vec<Vec<usize>> = head.iter().map(|&i| vec![i]).collect();
                    let mut t = head.clone();
                    t.extend(&w);
                    assert_eq!(d.get(&blocks, &w).unwrap(), ce_differential_at(alg, &form, &t), "k={k}");
                }
            }
        }
    }
}

#[test]
fn lie_case_reduces_to_chevalley_eilenberg() {
    check_ce(&sl2());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..2 {
        check_ce(&random_lie3(&mut rng));
    }
}

#[test]
fn graded_lie_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let sgn = |e: i32| if e % 2 == 0 { q(1) } else { q(-1) };
    for _ in 0..6 {
        let degs: Vec<i32> = (0..3).map(|_| rng.gen_range(0..=1)).collect();
        let (p, q_, r) = (degs[0], degs[1], degs[2]);
        let d1 = random_cochain(&mut rng, 3, 3, p, 0.5);
        let d2 = random_cochain(&mut rng, 3, 3, q_, 0.5);
        let d3 = random_cochain(&mut rng, 3, 3, r, 0.5);
        let a = gla_bracket(&d1, &d2).unwrap();
        let b = gla_bracket(&d2, &d1).unwrap();
        assert!(a.add(&b.scale(&sgn(p * q_))).unwrap().is_zero());
        let j1 = gla_bracket(&a, &d3).unwrap().scale(&sgn(p * r));
        let j2 = gla_bracket(&gla_bracket(&d2, &d3).unwrap(), &d1)
            .unwrap()
            .scale(&sgn(q_ * p));
        let j3 = gla_bracket(&gla_bracket(&d3, &d1).unwrap(), &d2)
            .unwrap()
            .scale(&sgn(r * q_));
        assert!(j1.add(&j2).unwrap().add(&j3).unwrap().is_zero(), "degrees {degs:?}");
    }
}

#[test]
fn derivations() {
    let e = epsilon4();
    let x = WedgeElement::basis(4, &[0, 2]).unwrap();
    assert!(is_filippov_derivation(&e, &e.ad_map(&x).unwrap()).unwrap());
    assert!(!is_filippov_derivation(&e, &LinearMap::identity(4)).unwrap());
    let z = NLieAlgebra::zero(3, 4).unwrap();
    assert!(is_filippov_derivation(&z, &LinearMap::identity(4)).unwrap());
    // derivations are exactly the degree 0 cocycles
    let cx = Complex::new(&e).unwrap();
    for d in basis(4, 3, 0).unwrap() {
        let map = d.to_linear_map().unwrap();
        assert_eq!(
            is_filippov_derivation(&e, &map).unwrap(),
            cx.differential(&d).unwrap().is_zero()
        );
    }
}
