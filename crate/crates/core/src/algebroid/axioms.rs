use rayon::prelude::*;
use serde::Serialize;

use super::{PolyFilippovAlgebroid, PolySection};
use crate::arith::{MultiPoly, PolyVectorField};
use crate::combinat::{multisets, sorted_tuples};
use crate::report::{ser_idx, Verdict};

/// First failing input of [`check_algebroid_axioms`].
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum AlgebroidWitness {
    /// `[x_1, …, x_{n−1}, [y_1, …, y_n]] ≠ Σ_i [y_1, …, [x, y_i], …, y_n]`.
    FundamentalIdentity {
        x: Vec<PolySection>,
        y: Vec<PolySection>,
        lhs: PolySection,
        rhs: PolySection,
    },
    /// `[a(x), a(y)] ≠ Σ_i a(y_1 ∧ ⋯ ∧ [x, y_i] ∧ ⋯)` on generator wedges.
    Anchor {
        #[serde(serialize_with = "ser_idx")]
        x: Vec<usize>,
        #[serde(serialize_with = "ser_idx")]
        y: Vec<usize>,
        lhs: PolyVectorField,
        rhs: PolyVectorField,
    },
    /// `[x, f y] ≠ f [x, y] + a(x)(f) y`.
    Leibniz {
        x: Vec<PolySection>,
        y: PolySection,
        f: MultiPoly,
        lhs: PolySection,
        rhs: PolySection,
    },
}

/// `1`, each variable, each pairwise product and one cubic, keeping those
/// of degree at most `max_degree`.
pub fn function_family(num_vars: usize, max_degree: u32) -> Vec<MultiPoly> {
    let mut out = vec![MultiPoly::one(num_vars)];
    let x = |i| MultiPoly::var(num_vars, i);
    for i in 0..num_vars {
        out.push(x(i));
    }
    for i in 0..num_vars {
        for j in i..num_vars {
            out.push(&x(i) * &x(j));
        }
    }
    let cubic = match num_vars {
        0 => None,
        1 => Some(&(&x(0) * &x(0)) * &x(0)),
        2 => Some(&(&x(0) * &x(0)) * &x(1)),
        _ => Some(&(&x(0) * &x(1)) * &x(2)),
    };
    out.extend(cubic);
    out.retain(|f| f.degree().unwrap_or(0) <= max_degree);
    out
}

fn fi_sides(abd: &PolyFilippovAlgebroid, x: &[PolySection], y: &[PolySection]) -> (PolySection, PolySection) {
    let bracket_x = |s: &PolySection| {
        let mut args = x.to_vec();
        args.push(s.clone());
        abd.section_bracket(&args).expect("shapes fixed by the caller")
    };
    let lhs = bracket_x(&abd.section_bracket(y).expect("shapes fixed by the caller"));
    let mut rhs = PolySection::zero(abd.rank(), abd.num_vars());
    for i in 0..y.len() {
        let mut args = y.to_vec();
        args[i] = bracket_x(&y[i]);
        rhs = rhs.add(&abd.section_bracket(&args).expect("shapes fixed by the caller"));
    }
    (lhs, rhs)
}

fn fi_case(abd: &PolyFilippovAlgebroid, args: Vec<PolySection>) -> Option<AlgebroidWitness> {
    let n = abd.arity();
    let (x, y) = args.split_at(n - 1);
    let (lhs, rhs) = fi_sides(abd, x, y);
    (lhs != rhs).then(|| AlgebroidWitness::FundamentalIdentity {
        x: x.to_vec(),
        y: y.to_vec(),
        lhs,
        rhs,
    })
}

/// Argument lists for the fundamental identity: generators, then generators
/// with one slot multiplied by a family function, then (from degree 2) two
/// slots multiplied by coordinate functions.
fn fi_inputs(abd: &PolyFilippovAlgebroid, max_degree: u32) -> Vec<Vec<PolySection>> {
    let (r, n, nv) = (abd.rank(), abd.arity(), abd.num_vars());
    let gens = |t: &[usize]| t.iter().map(|&a| abd.generator(a)).collect::<Vec<_>>();
    let mut out = Vec::new();
    for x in sorted_tuples(r, n - 1) {
        for y in sorted_tuples(r, n) {
            out.push(gens(&[x.clone(), y].concat()));
        }
    }
    let family: Vec<MultiPoly> = function_family(nv, max_degree).into_iter().skip(1).collect();
    let vars: Vec<MultiPoly> = (0..nv).map(|i| MultiPoly::var(nv, i)).collect();
    let slots = 2 * n - 1;
    for x in multisets(r, n - 1) {
        for y in multisets(r, n) {
            let base = gens(&[x.clone(), y].concat());
            for s in 0..slots {
                for f in &family {
                    let mut args = base.clone();
                    args[s] = args[s].mul_fn(f);
                    out.push(args);
                }
            }
            if max_degree < 2 {
                continue;
            }
            for s in 0..slots {
                for t in s + 1..slots {
                    for u in &vars {
                        for v in &vars {
                            let mut args = base.clone();
                            args[s] = args[s].mul_fn(u);
                            args[t] = args[t].mul_fn(v);
                            out.push(args);
                        }
                    }
                }
            }
        }
    }
    out
}

fn anchor_case(abd: &PolyFilippovAlgebroid, x: &[usize], y: &[usize]) -> Option<AlgebroidWitness> {
    let xs: Vec<PolySection> = x.iter().map(|&a| abd.generator(a)).collect();
    let ys: Vec<PolySection> = y.iter().map(|&a| abd.generator(a)).collect();
    let lhs = abd
        .anchor_generators(x)
        .bracket(&abd.anchor_generators(y))
        .expect("same base");
    let mut rhs = PolyVectorField::zero(abd.num_vars());
    for i in 0..ys.len() {
        let mut inner = xs.clone();
        inner.push(ys[i].clone());
        let mut args = ys.clone();
        args[i] = abd.section_bracket(&inner).expect("shapes fixed");
        rhs = rhs.add(&abd.anchor(&args).expect("shapes fixed"));
    }
    (lhs != rhs).then(|| AlgebroidWitness::Anchor {
        x: x.to_vec(),
        y: y.to_vec(),
        lhs,
        rhs,
    })
}

fn leibniz_case(abd: &PolyFilippovAlgebroid, x: Vec<PolySection>, b: usize, f: &MultiPoly) -> Option<AlgebroidWitness> {
    let y = abd.generator(b);
    let with = |s: PolySection| {
        let mut args = x.clone();
        args.push(s);
        abd.section_bracket(&args).expect("shapes fixed")
    };
    let lhs = with(y.mul_fn(f));
    let df = abd.anchor(&x).expect("shapes fixed").apply(f).expect("same base");
    let rhs = with(y.clone()).mul_fn(f).add(&y.mul_fn(&df));
    (lhs != rhs).then(|| AlgebroidWitness::Leibniz {
        x,
        y,
        f: f.clone(),
        lhs,
        rhs,
    })
}

/// Checks the fundamental identity on sections, the anchor axiom (a) on
/// generator wedges and the Leibniz rule (b), in that order, returning the
/// first failure.
///
/// Function coefficients come from [`function_family`] up to `max_degree`.
pub fn check_algebroid_axioms(abd: &PolyFilippovAlgebroid, max_degree: u32) -> Verdict<AlgebroidWitness> {
    let (r, n, nv) = (abd.rank(), abd.arity(), abd.num_vars());

    let fi = fi_inputs(abd, max_degree)
        .into_par_iter()
        .find_map_first(|args| fi_case(abd, args));
    if let Some(w) = fi {
        return Verdict::fails(w);
    }

    let wedges = sorted_tuples(r, n - 1);
    let pairs: Vec<(&Vec<usize>, &Vec<usize>)> =
        wedges.iter().flat_map(|x| wedges.iter().map(move |y| (x, y))).collect();
    if let Some(w) = pairs.into_par_iter().find_map_first(|(x, y)| anchor_case(abd, x, y)) {
        return Verdict::fails(w);
    }

    let family = function_family(nv, max_degree);
    let mut scalings = vec![MultiPoly::one(nv)];
    scalings.extend((0..nv).map(|i| MultiPoly::var(nv, i)));
    let mut cases = Vec::new();
    for x in multisets(r, n - 1) {
        for g in &scalings {
            let mut xs: Vec<PolySection> = x.iter().map(|&a| abd.generator(a)).collect();
            xs[0] = xs[0].mul_fn(g);
            for b in 0..r {
                for f in &family {
                    cases.push((xs.clone(), b, f));
                }
            }
        }
    }
    match cases
        .into_par_iter()
        .find_map_first(|(x, b, f)| leibniz_case(abd, x, b, f))
    {
        Some(w) => Verdict::fails(w),
        None => Verdict::holds(),
    }
}
