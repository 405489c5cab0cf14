use std::collections::BTreeMap;

use filippov::algebroid::{
    bracket_eval, check_algebroid_axioms, check_symbol_leibniz, example_tangent_fc, example_tangent_topform,
    function_family, nijenhuis_symbol_check, symbol_bracket, AlgebroidWitness, PolyFilippovAlgebroid,
    PolyLinearBundleMap, PolyMultiderivation, PolySection,
};
use filippov::arith::{q, unit_vec};
use filippov::cochains::{cochain_dim, gla_bracket, Cochain};
use filippov::combinat::sorted_tuples;
use filippov::deform::check_nijenhuis;
use filippov::json::{parse_algebroid, to_string};
use filippov::nlie::examples::{epsilon4, fi_violating, small_rational};
use filippov::{Error, LinearMap, MultiPoly, PolyVectorField, WedgeElement};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn x(nv: usize, i: usize) -> MultiPoly {
    MultiPoly::var(nv, i)
}

fn random_poly(rng: &mut ChaCha8Rng, nv: usize, max_deg: u32) -> MultiPoly {
    let terms: Vec<(Vec<u32>, _)> = (0..rng.gen_range(0..=3))
        .map(|_| {
            let mut e = vec![0u32; nv];
            for _ in 0..rng.gen_range(0..=max_deg) {
                if nv > 0 {
                    e[rng.gen_range(0..nv)] += 1;
                }
            }
            (e, q(rng.gen_range(-3..=3)))
        })
        .collect();
    MultiPoly::from_terms(nv, terms).unwrap()
}

fn random_section(rng: &mut ChaCha8Rng, rank: usize, nv: usize) -> PolySection {
    PolySection::new((0..rank).map(|_| random_poly(rng, nv, 2)).collect()).unwrap()
}

/// `R^m` with its tangent Lie algebroid: zero bracket on `∂_i`, identity
/// anchor. Brackets of sections are brackets of vector fields.
fn tangent_lie(m: usize) -> PolyFilippovAlgebroid {
    let anchor = (0..m).map(|i| (vec![i], PolyVectorField::partial(m, i))).collect();
    PolyFilippovAlgebroid::new(m, m, 2, BTreeMap::new(), anchor).unwrap()
}

fn as_field(s: &PolySection) -> PolyVectorField {
    PolyVectorField::new(s.coords().to_vec()).unwrap()
}

#[test]
fn tangent_lie_algebroid_bracket_is_the_vector_field_bracket() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let abd = tangent_lie(2);
    for _ in 0..60 {
        let s = random_section(&mut rng, 2, 2);
        let t = random_section(&mut rng, 2, 2);
        let got = abd.section_bracket(&[s.clone(), t.clone()]).unwrap();
        let expect = as_field(&s).bracket(&as_field(&t)).unwrap();
        assert_eq!(as_field(&got), expect);
    }
    assert!(check_algebroid_axioms(&abd, 3).is_holds());
}

#[test]
fn constant_sections_on_a_zero_table() {
    let abd = example_tangent_topform(3, 2).unwrap();
    let out = abd
        .section_bracket(&[abd.generator(0), abd.generator(1), abd.generator(2)])
        .unwrap();
    assert!(out.is_zero());
}

#[test]
fn topform_anchor_and_leibniz() {
    let abd = example_tangent_topform(3, 2).unwrap();
    assert_eq!(abd.arity(), 3);
    assert_eq!(abd.anchor_generators(&[0, 1]), PolyVectorField::partial(3, 0));
    assert_eq!(
        abd.anchor_generators(&[1, 0]),
        PolyVectorField::partial(3, 0).scale(&q(-1))
    );
    assert!(abd.anchor_generators(&[0, 2]).is_zero());
    assert!(abd.anchor_generators(&[1, 2]).is_zero());
    // [∂_1, ∂_2, x_1 ∂_3] = ∂_1(x_1) ∂_3
    let s = PolySection::scaled_generator(3, 2, &x(3, 0));
    let out = abd.section_bracket(&[abd.generator(0), abd.generator(1), s]).unwrap();
    assert_eq!(out, abd.generator(2));
    assert!(matches!(example_tangent_topform(2, 3), Err(Error::InvalidArgument(_))));
}

#[test]
fn skew_symmetry_on_polynomial_sections() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let models = [
        example_tangent_topform(3, 2).unwrap(),
        example_tangent_fc(&epsilon4(), &x(4, 1)).unwrap(),
    ];
    for abd in &models {
        let n = abd.arity();
        for _ in 0..20 {
            let s: Vec<PolySection> = (0..n)
                .map(|_| random_section(&mut rng, abd.rank(), abd.num_vars()))
                .collect();
            let base = abd.section_bracket(&s).unwrap();
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let mut swapped = s.clone();
            swapped.swap(i, j);
            assert_eq!(abd.section_bracket(&swapped).unwrap(), base.scale(&q(-1)));
        }
    }
}

#[test]
fn zero_anchor_models_are_function_linear_in_every_slot() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let abd = example_tangent_fc(&epsilon4(), &(&x(4, 0) * &x(4, 2))).unwrap();
    for _ in 0..20 {
        let s: Vec<PolySection> = (0..3).map(|_| random_section(&mut rng, 4, 4)).collect();
        let f = random_poly(&mut rng, 4, 2);
        let i = rng.gen_range(0..3);
        let mut scaled = s.clone();
        scaled[i] = scaled[i].mul_fn(&f);
        assert_eq!(
            abd.section_bracket(&scaled).unwrap(),
            abd.section_bracket(&s).unwrap().mul_fn(&f)
        );
    }
}

#[test]
fn leibniz_in_an_inner_slot_matches_the_last_slot_rule() {
    // pulling f out of slot j of n costs (−1)^{n−1−j} a(others)(f) x_j
    let abd = example_tangent_topform(3, 2).unwrap();
    let f = &x(3, 0) * &x(3, 1);
    let args = [
        PolySection::scaled_generator(3, 1, &f),
        abd.generator(0),
        abd.generator(2),
    ];
    let got = abd.section_bracket(&args).unwrap();
    // moving slot 0 to the end is an even permutation of three slots
    let moved = abd
        .section_bracket(&[abd.generator(0), abd.generator(2), args[0].clone()])
        .unwrap();
    assert_eq!(got, moved);
    // a(∂_1 ∧ ∂_3) = 0, so nothing survives
    assert!(got.is_zero());
    let args = [
        PolySection::scaled_generator(3, 2, &f),
        abd.generator(0),
        abd.generator(1),
    ];
    let got = abd.section_bracket(&args).unwrap();
    // a(∂_1 ∧ ∂_2)(x_1 x_2) ∂_3 = x_2 ∂_3
    assert_eq!(got, PolySection::scaled_generator(3, 2, &x(3, 1)));
}

#[test]
fn tangent_and_topform_models_satisfy_the_axioms() {
    for f in [MultiPoly::one(4), x(4, 0), &x(4, 0) * &x(4, 0)] {
        let abd = example_tangent_fc(&epsilon4(), &f).unwrap();
        assert!(check_algebroid_axioms(&abd, 2).is_holds(), "f = {f}");
    }
    assert!(check_algebroid_axioms(&example_tangent_topform(3, 2).unwrap(), 2).is_holds());
}

#[test]
fn tangent_fc_preconditions() {
    let zero = example_tangent_fc(&epsilon4(), &MultiPoly::zero(4)).unwrap();
    assert!(zero.brackets().is_empty() && zero.anchor_table().is_empty());
    assert_eq!(
        example_tangent_fc(&fi_violating(), &MultiPoly::one(fi_violating().dim())),
        Err(Error::FundamentalIdentity)
    );
    assert!(example_tangent_fc(&epsilon4(), &MultiPoly::one(3)).is_err());
}

#[test]
fn violating_table_gives_a_fundamental_identity_witness() {
    let alg = fi_violating();
    let m = alg.dim();
    let brackets = alg
        .structure()
        .iter()
        .map(|(t, v)| {
            let coords = v.iter().map(|c| MultiPoly::constant(m, c.clone())).collect();
            (t.clone(), PolySection::new(coords).unwrap())
        })
        .collect();
    let abd = PolyFilippovAlgebroid::new(m, m, alg.arity(), brackets, BTreeMap::new()).unwrap();
    let v = check_algebroid_axioms(&abd, 1);
    match v.witness {
        Some(AlgebroidWitness::FundamentalIdentity { lhs, rhs, .. }) => assert_ne!(lhs, rhs),
        other => panic!("expected a fundamental identity witness, got {other:?}"),
    }
}

#[test]
fn anchor_violation_is_detected() {
    // a(∂_1) = ∂_1, a(∂_2) = x_1 ∂_2 with zero bracket: [∂_1, x_1 ∂_2] = ∂_2 ≠ 0
    let mut anchor = BTreeMap::new();
    anchor.insert(vec![0], PolyVectorField::partial(2, 0));
    anchor.insert(vec![1], PolyVectorField::partial(2, 1).mul_fn(&x(2, 0)));
    let abd = PolyFilippovAlgebroid::new(2, 2, 2, BTreeMap::new(), anchor).unwrap();
    assert!(!check_algebroid_axioms(&abd, 1).is_holds());
}

#[test]
fn function_family_is_fixed() {
    let fam = function_family(3, 3);
    // 1, three variables, six products, one cubic
    assert_eq!(fam.len(), 11);
    assert_eq!(fam.last().unwrap(), &(&(&x(3, 0) * &x(3, 1)) * &x(3, 2)));
    assert_eq!(function_family(3, 1).len(), 4);
    assert_eq!(function_family(0, 3), vec![MultiPoly::one(0)]);
}

fn degree0(rng: &mut ChaCha8Rng, arity: usize, rank: usize, nv: usize) -> PolyMultiderivation {
    let rows = (0..rank)
        .map(|_| {
            (0..rank)
                .map(|_| MultiPoly::constant(nv, small_rational(rng)))
                .collect()
        })
        .collect();
    let n_op = PolyLinearBundleMap::new(rows).unwrap();
    let field = PolyVectorField::new((0..nv).map(|_| random_poly(rng, nv, 1)).collect()).unwrap();
    PolyMultiderivation::from_bundle_map(arity, &n_op, field).unwrap()
}

#[test]
fn degree_zero_symbols_bracket_like_vector_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let abd = tangent_lie(2);
    for _ in 0..10 {
        let d1 = degree0(&mut rng, 2, 2, 2);
        let d2 = degree0(&mut rng, 2, 2, 2);
        let sigma = symbol_bracket(&d1, &d2).unwrap();
        let v1 = d1.symbol().at_generators(&[]);
        let v2 = d2.symbol().at_generators(&[]);
        assert_eq!(sigma.at_generators(&[]), v1.bracket(&v2).unwrap());
        // the bracket is the commutator D_1 D_2 − D_2 D_1
        let s = random_section(&mut rng, 2, 2);
        let got = bracket_eval(&d1, &d2, &[], &s).unwrap();
        let d = |a: &PolyMultiderivation, s: &PolySection| a.eval(&[], s).unwrap();
        assert_eq!(got, d(&d1, &d(&d2, &s)).sub(&d(&d2, &d(&d1, &s))));
        assert!(check_symbol_leibniz(&abd, &d1, &d2).unwrap().is_holds());
    }
}

#[test]
fn zero_symbols_bracket_to_zero() {
    let abd = example_tangent_fc(&epsilon4(), &x(4, 0)).unwrap();
    let phi = PolyMultiderivation::from_algebroid(&abd);
    assert!(phi.symbol().is_zero());
    assert!(symbol_bracket(&phi, &phi).unwrap().is_zero());
    assert!(check_symbol_leibniz(&abd, &phi, &phi).unwrap().is_holds());
}

#[test]
fn bracket_of_an_algebroid_with_itself_vanishes() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let abd = example_tangent_topform(3, 2).unwrap();
    let phi = PolyMultiderivation::from_algebroid(&abd);
    assert_eq!(
        phi.symbol().at_generators(&[vec![0, 1]]),
        PolyVectorField::partial(3, 0)
    );
    assert!(symbol_bracket(&phi, &phi).unwrap().is_zero());
    for _ in 0..10 {
        let blocks: Vec<Vec<PolySection>> = (0..2)
            .map(|_| (0..2).map(|_| random_section(&mut rng, 3, 3)).collect())
            .collect();
        let z = random_section(&mut rng, 3, 3);
        assert!(bracket_eval(&phi, &phi, &blocks, &z).unwrap().is_zero());
    }
    assert!(check_symbol_leibniz(&abd, &phi, &phi).unwrap().is_holds());
}

#[test]
fn symbol_leibniz_with_a_derivation_of_nonzero_symbol() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let abd = example_tangent_topform(3, 2).unwrap();
    let phi = PolyMultiderivation::from_algebroid(&abd);
    for _ in 0..4 {
        let d = degree0(&mut rng, 3, 3, 3);
        assert!(check_symbol_leibniz(&abd, &phi, &d).unwrap().is_holds());
        assert!(check_symbol_leibniz(&abd, &d, &phi).unwrap().is_holds());
    }
}

#[test]
fn point_base_agrees_with_cochains() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let (n, m) = (3, 3);
    let random_cochain = |rng: &mut ChaCha8Rng, p: i32| {
        let vals = (0..cochain_dim(m, n, p))
            .map(|_| if rng.gen_bool(0.4) { small_rational(rng) } else { q(0) })
            .collect();
        Cochain::from_values(n, m, p, vals).unwrap()
    };
    for (p, q_) in [(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (0, 2)] {
        let c1 = random_cochain(&mut rng, p);
        let c2 = random_cochain(&mut rng, q_);
        let expect = gla_bracket(&c1, &c2).unwrap();
        for nv in [0, 2] {
            let d1 = PolyMultiderivation::from_cochain(&c1, nv).unwrap();
            let d2 = PolyMultiderivation::from_cochain(&c2, nv).unwrap();
            assert!(symbol_bracket(&d1, &d2).unwrap().is_zero());
            let wedges = sorted_tuples(m, n - 1);
            let r = (p + q_) as usize;
            for key in filippov::combinat::all_tuples(wedges.len(), r) {
                let tuples: Vec<Vec<usize>> = key.iter().map(|&i| wedges[i].clone()).collect();
                let blocks: Vec<Vec<PolySection>> = tuples
                    .iter()
                    .map(|t| t.iter().map(|&a| PolySection::generator(m, nv, a)).collect())
                    .collect();
                let wedge_args: Vec<WedgeElement> = tuples.iter().map(|t| WedgeElement::basis(m, t).unwrap()).collect();
                for z in 0..m {
                    let got = bracket_eval(&d1, &d2, &blocks, &PolySection::generator(m, nv, z)).unwrap();
                    let want = expect.evaluate(&wedge_args, &unit_vec(m, z)).unwrap();
                    assert_eq!(
                        got.as_constant().unwrap(),
                        want,
                        "degrees {p},{q_} key {tuples:?} z {z}"
                    );
                }
            }
        }
    }
}

#[test]
fn nijenhuis_symbols_on_the_models() {
    let abd = example_tangent_topform(3, 2).unwrap();
    let diag = LinearMap::from_rows(vec![
        vec![q(1), q(0), q(0)],
        vec![q(0), q(2), q(0)],
        vec![q(0), q(0), q(3)],
    ])
    .unwrap();
    let n_op = PolyLinearBundleMap::from_linear_map(&diag, 3).unwrap();
    assert!(nijenhuis_symbol_check(&abd, &n_op).unwrap().is_holds());
    let zero = PolyLinearBundleMap::from_linear_map(&LinearMap::zero(3, 3), 3).unwrap();
    assert!(nijenhuis_symbol_check(&abd, &zero).unwrap().is_holds());

    let fc = example_tangent_fc(&epsilon4(), &x(4, 0)).unwrap();
    let twice = PolyLinearBundleMap::from_linear_map(&LinearMap::identity(4).scale(&q(2)), 4).unwrap();
    assert!(nijenhuis_symbol_check(&fc, &twice).unwrap().is_holds());
}

#[test]
fn generator_level_nijenhuis_matches_the_algebra_layer() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let alg = epsilon4();
    let abd = example_tangent_fc(&alg, &MultiPoly::one(4)).unwrap();
    let mut seen = [false; 2];
    for _ in 0..30 {
        let rows: Vec<Vec<_>> = (0..4)
            .map(|_| {
                (0..4)
                    .map(|_| {
                        if rng.gen_bool(0.3) {
                            small_rational(&mut rng)
                        } else {
                            q(0)
                        }
                    })
                    .collect()
            })
            .collect();
        let n_alg = LinearMap::from_rows(rows).unwrap();
        let algebra_says = check_nijenhuis(&alg, &n_alg).unwrap().is_holds();
        let n_op = PolyLinearBundleMap::from_linear_map(&n_alg, 4).unwrap();
        let poly = nijenhuis_symbol_check(&abd, &n_op);
        seen[algebra_says as usize] = true;
        if algebra_says {
            assert!(poly.unwrap().is_holds());
        } else {
            assert_eq!(poly, Err(Error::NotNijenhuis));
        }
    }
    assert!(seen[0], "no non-Nijenhuis sample");
}

#[test]
fn algebroid_json_round_trip() {
    for abd in [
        example_tangent_topform(3, 2).unwrap(),
        example_tangent_fc(&epsilon4(), &(&x(4, 0) * &x(4, 0))).unwrap(),
    ] {
        let text = to_string(&abd);
        assert_eq!(parse_algebroid(&text).unwrap(), abd);
    }
    let bad =
        r#"{"num_vars": 1, "rank": 2, "arity": 2, "brackets": [{"on": [2, 1], "value": [[], []]}], "anchor": []}"#;
    assert!(parse_algebroid(bad).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn leibniz_rule_b_holds_for_random_inputs(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let abd = example_tangent_topform(3, 2).unwrap();
        let xs: Vec<PolySection> = (0..2).map(|_| random_section(&mut rng, 3, 3)).collect();
        let y = random_section(&mut rng, 3, 3);
        let f = random_poly(&mut rng, 3, 2);
        let with = |s: PolySection| {
            let mut a = xs.clone();
            a.push(s);
            abd.section_bracket(&a).unwrap()
        };
        let df = abd.anchor(&xs).unwrap().apply(&f).unwrap();
        prop_assert_eq!(with(y.mul_fn(&f)), with(y.clone()).mul_fn(&f).add(&y.mul_fn(&df)));
    }

    #[test]
    fn tangent_fc_axioms_hold_for_random_functions(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(&mut rng, 4, 3);
        let abd = example_tangent_fc(&epsilon4(), &f).unwrap();
        prop_assert!(check_algebroid_axioms(&abd, 1).is_holds());
    }
}
