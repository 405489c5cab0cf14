use std::path::Path;

use filippov::algebroid::{
    check_algebroid_axioms, check_symbol_leibniz, example_tangent_fc, example_tangent_topform, PolyMultiderivation,
};
use filippov::cochains::Complex;
use filippov::cohomology::{cohomology, cohomology_uncapped, reduce_lie};
use filippov::deform::{
    check_deformation, check_equivalence, check_homomorphism, check_nijenhuis, deformation_from_nijenhuis, extend,
    obstruction, rigidity_probe, Extension, Mode,
};
use filippov::json::{self, PolyJson};
use filippov::{Error, NLieAlgebra, Verdict};
use serde::Serialize;
use serde_json::json;

use crate::cli::{AlgebroidCommand, Command, DeformCommand, Global};
use crate::output::{Outcome, Status};

/// Failure before any mathematics ran, or a library precondition.
pub enum Failure {
    Input(String),
    Library(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl Failure {
    pub fn status(&self) -> Status {
        match self {
            Failure::Input(_) => Status::Error,
            Failure::Library(e) => match e {
                Error::Dimension(_) | Error::InvalidArgument(_) | Error::Parse(_) => Status::Error,
                Error::FundamentalIdentity
                | Error::NotMaurerCartan
                | Error::InvalidRepresentation
                | Error::NotNijenhuis
                | Error::InvalidPath(_) => Status::Fails,
            },
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Input(s) => s.clone(),
            Failure::Library(e) => e.to_string(),
        }
    }
}

/// Reads inputs and remembers their bytes for the digest.
#[derive(Default)]
pub struct Inputs {
    pub bytes: Vec<Vec<u8>>,
}

impl Inputs {
    fn read(&mut self, p: &Path) -> Result<String, Failure> {
        let b = std::fs::read(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
        let s = String::from_utf8(b.clone()).map_err(|_| Failure::Input(format!("{}: not UTF-8", p.display())))?;
        self.bytes.push(b);
        Ok(s)
    }

    fn parse<T>(&mut self, p: &Path, f: impl Fn(&str) -> filippov::Result<T>) -> Result<T, Failure> {
        let s = self.read(p)?;
        f(&s).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))
    }

    fn algebra(&mut self, p: &Path) -> Result<NLieAlgebra, Failure> {
        self.parse(p, json::parse_algebra)
    }
}

fn verdict_outcome<W: Serialize>(label: &str, v: &Verdict<W>) -> Outcome {
    let status = if v.is_holds() { Status::Holds } else { Status::Fails };
    let mut o = Outcome::new(status, v).line(format!("{label}: {}", v.status()));
    if let Some(w) = &v.witness {
        o = o.line(format!(
            "witness: {}",
            serde_json::to_string(w).expect("witnesses serialize")
        ));
    }
    o
}

/// The fundamental identity as a precondition: a failing verdict becomes the
/// command's outcome.
fn require_fi(alg: &NLieAlgebra) -> Option<Outcome> {
    let v = alg.check_fundamental_identity();
    (!v.is_holds()).then(|| verdict_outcome("fundamental identity", &v))
}

pub fn run(cmd: &Command, g: &Global, inputs: &mut Inputs) -> Result<Outcome, Failure> {
    match cmd {
        Command::Check { algebra } => {
            let alg = inputs.algebra(algebra)?;
            Ok(verdict_outcome(
                "fundamental identity",
                &alg.check_fundamental_identity(),
            ))
        }
        Command::Cohomology {
            algebra,
            degree,
            max_degree_cap,
        } => {
            let alg = inputs.algebra(algebra)?;
            if let Some(o) = require_fi(&alg) {
                return Ok(o);
            }
            let r = if *max_degree_cap {
                cohomology_uncapped(&alg, *degree)?
            } else {
                cohomology(&alg, *degree)?
            };
            Ok(Outcome::new(Status::Ok, &r)
                .line(format!("H^{}_F: betti {}", r.degree, r.betti))
                .line(format!(
                    "dim C^{} = {}, rank d_{} = {}, rank d_{} = {}",
                    r.degree,
                    r.dim_cochains,
                    r.degree,
                    r.rank_d_out,
                    r.degree as i64 - 1,
                    r.rank_d_in
                )))
        }
        Command::Nijenhuis {
            algebra,
            operator,
            generate_path,
        } => {
            let alg = inputs.algebra(algebra)?;
            let n_op = inputs.parse(operator, json::parse_matrix)?;
            if let Some(o) = require_fi(&alg) {
                return Ok(o);
            }
            let v = check_nijenhuis(&alg, &n_op)?;
            let mut o = verdict_outcome("nijenhuis", &v);
            if *generate_path && v.is_holds() {
                o = o.artifact(deformation_from_nijenhuis(&alg, &n_op)?);
            }
            Ok(o)
        }
        Command::Deform(d) => deform(d, g, inputs),
        Command::Obstruction { path } => {
            let path = inputs.parse(path, json::parse_path)?;
            let theta = obstruction(&path)?;
            let cx = Complex::new(path.base())?;
            let cocycle = cx.differential(&theta)?.is_zero();
            let extendable = extend(&path)?.is_extended();
            Ok(Outcome::new(
                Status::Ok,
                json!({ "order": path.order(), "obstruction_is_zero": theta.is_zero(), "is_cocycle": cocycle, "extendable": extendable }),
            )
            .line(format!("order: {}", path.order()))
            .line(format!("obstruction is zero: {}", theta.is_zero()))
            .line(format!("obstruction is a cocycle: {cocycle}"))
            .line(format!("extendable: {extendable}"))
            .artifact(&theta))
        }
        Command::Algebroid(a) => algebroid(a, inputs),
        Command::ReduceLie { algebra } => {
            let alg = inputs.algebra(algebra)?;
            if alg.arity() != 2 {
                return Err(Failure::Input(format!("reduce-lie needs arity 2, got {}", alg.arity())));
            }
            if let Some(o) = require_fi(&alg) {
                return Ok(o);
            }
            let r = reduce_lie(&alg, &[0, 1, 2])?;
            let status = if r.agree { Status::Holds } else { Status::Fails };
            let mut o = Outcome::new(status, &r);
            for d in &r.degrees {
                o = o.line(format!(
                    "k = {}: {} (rank generic {}, rank CE {}, sign {:+})",
                    d.degree,
                    if d.agree { "agree" } else { "differ" },
                    d.rank_generic,
                    d.rank_ce,
                    d.sign
                ));
            }
            Ok(o)
        }
    }
}

fn deform(cmd: &DeformCommand, g: &Global, inputs: &mut Inputs) -> Result<Outcome, Failure> {
    match cmd {
        DeformCommand::Check { path, full } => {
            let path = inputs.parse(path, json::parse_path)?;
            if let Some(o) = require_fi(path.base()) {
                return Ok(o);
            }
            let mode = if *full { Mode::Full } else { Mode::Truncated };
            Ok(verdict_outcome(
                "deformation equations",
                &check_deformation(&path, mode)?,
            ))
        }
        DeformCommand::Extend { path } => {
            let path = inputs.parse(path, json::parse_path)?;
            if let Some(o) = require_fi(path.base()) {
                return Ok(o);
            }
            Ok(match extend(&path)? {
                Extension::Extended { next } => Outcome::new(Status::Ok, json!({ "status": "extended" }))
                    .line(format!("extended to order {}", path.order() + 1))
                    .artifact(&next),
                e @ Extension::Obstructed { .. } => {
                    Outcome::new(Status::Fails, &e).line("obstructed: the obstruction class is nonzero")
                }
            })
        }
        DeformCommand::Equiv {
            source,
            target,
            map,
            homomorphism,
        } => {
            let s = inputs.parse(source, json::parse_path)?;
            let t = inputs.parse(target, json::parse_path)?;
            let phi = inputs.parse(map, json::parse_equivalence)?;
            if *homomorphism {
                Ok(verdict_outcome("homomorphism", &check_homomorphism(&s, &t, &phi)?))
            } else {
                Ok(verdict_outcome("equivalence", &check_equivalence(&s, &t, &phi)?))
            }
        }
        DeformCommand::Rigidity {
            algebra,
            max_order,
            trials,
        } => {
            let alg = inputs.algebra(algebra)?;
            if let Some(o) = require_fi(&alg) {
                return Ok(o);
            }
            let r = rigidity_probe(&alg, *max_order, *trials, g.seed)?;
            let trivial = r.trials.iter().filter(|t| t.trivialized).count();
            let status = if trivial == r.trials.len() {
                Status::Holds
            } else {
                Status::Fails
            };
            Ok(Outcome::new(status, &r)
                .line(format!("H^2_F betti: {}", r.h2_betti))
                .line(format!(
                    "trivialized {trivial} of {} sampled deformations",
                    r.trials.len()
                ))
                .line(format!("note: {}", r.note)))
        }
    }
}

fn algebroid(cmd: &AlgebroidCommand, inputs: &mut Inputs) -> Result<Outcome, Failure> {
    match cmd {
        AlgebroidCommand::Check {
            algebroid,
            max_degree,
            no_symbols,
        } => {
            let abd = inputs.parse(algebroid, json::parse_algebroid)?;
            let axioms = check_algebroid_axioms(&abd, *max_degree);
            let symbols = if *no_symbols || !axioms.is_holds() {
                None
            } else {
                let phi = PolyMultiderivation::from_algebroid(&abd);
                Some(check_symbol_leibniz(&abd, &phi, &phi)?)
            };
            let holds = axioms.is_holds() && symbols.as_ref().is_none_or(Verdict::is_holds);
            let mut o = Outcome::new(
                if holds { Status::Holds } else { Status::Fails },
                json!({ "axioms": axioms, "symbol_leibniz": symbols }),
            )
            .line(format!("algebroid axioms: {}", axioms.status()));
            if let Some(w) = &axioms.witness {
                o = o.line(format!(
                    "witness: {}",
                    serde_json::to_string(w).expect("witnesses serialize")
                ));
            }
            if let Some(s) = &symbols {
                o = o.line(format!("symbol Leibniz for [phi, phi]: {}", s.status()));
                if let Some(w) = &s.witness {
                    o = o.line(format!(
                        "witness: {}",
                        serde_json::to_string(w).expect("witnesses serialize")
                    ));
                }
            }
            Ok(o)
        }
        AlgebroidCommand::ExampleFc { algebra, f } => {
            let alg = inputs.algebra(algebra)?;
            let f = match f {
                None => filippov::MultiPoly::one(alg.dim()),
                Some(s) => {
                    inputs.bytes.push(s.as_bytes().to_vec());
                    let j: PolyJson = json::from_str(s).map_err(|e| Failure::Input(format!("--f: {e}")))?;
                    json::poly_from_json(&j, alg.dim()).map_err(|e| Failure::Input(format!("--f: {e}")))?
                }
            };
            if let Some(o) = require_fi(&alg) {
                return Ok(o);
            }
            let abd = example_tangent_fc(&alg, &f)?;
            Ok(Outcome::new(
                Status::Ok,
                json!({ "num_vars": abd.num_vars(), "rank": abd.rank(), "arity": abd.arity() }),
            )
            .line(format!(
                "algebroid of arity {} and rank {} over R^{}",
                abd.arity(),
                abd.rank(),
                abd.num_vars()
            ))
            .artifact(&abd))
        }
        AlgebroidCommand::ExampleTopform { m, n } => {
            let abd = example_tangent_topform(*m, *n)?;
            Ok(Outcome::new(
                Status::Ok,
                json!({ "num_vars": abd.num_vars(), "rank": abd.rank(), "arity": abd.arity() }),
            )
            .line(format!(
                "algebroid of arity {} and rank {} over R^{}",
                abd.arity(),
                abd.rank(),
                abd.num_vars()
            ))
            .artifact(&abd))
        }
    }
}
