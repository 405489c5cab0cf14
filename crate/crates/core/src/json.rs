//! JSON file formats. Indices are 1-based on disk and 0-based in memory;
//! rationals are strings `"p/q"`.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::algebroid::{PolyFilippovAlgebroid, PolySection};
use crate::arith::{format_rational, parse_rational, zero_vec, MultiPoly, PolyVectorField, QVec, Rational};
use crate::cochains::Cochain;
use crate::deform::{DeformationPath, EquivalenceMap};
use crate::error::{Error, Result};
use crate::nlie::{LinearMap, NLieAlgebra, Representation, WedgeElement};

/// Sparse vector `{"k": "p/q"}` with 1-based keys.
pub type SparseVecJson = BTreeMap<usize, String>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketJson {
    pub on: Vec<usize>,
    pub value: SparseVecJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub arity: usize,
    pub dim: usize,
    pub brackets: Vec<BracketJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionJson {
    pub on: Vec<usize>,
    pub of: usize,
    pub value: SparseVecJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationJson {
    pub arity: usize,
    pub algebra_dim: usize,
    pub module_dim: usize,
    pub action: Vec<ActionJson>,
}

/// Degree −1 entries carry a `coefficient` instead of a `value` vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainEntryJson {
    #[serde(default)]
    pub tensor_blocks: Vec<Vec<usize>>,
    pub wedge: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<SparseVecJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficient: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainJson {
    pub arity: usize,
    pub dim: usize,
    pub degree: i32,
    pub entries: Vec<CochainEntryJson>,
}

/// A matrix as an array of rows of rational strings.
pub type MatrixJson = Vec<Vec<String>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

pub type PolyJson = Vec<TermJson>;

/// Reads a JSON document; syntax errors report line and column.
pub fn from_str<T: DeserializeOwned>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

/// Pretty JSON with a trailing newline.
pub fn to_string<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn zero_based(i: usize, bound: usize, what: &str) -> Result<usize> {
    if i == 0 || i > bound {
        return Err(Error::Parse(format!("{what} index {i} outside 1..={bound}")));
    }
    Ok(i - 1)
}

fn tuple_in(t: &[usize], bound: usize, what: &str) -> Result<Vec<usize>> {
    t.iter().map(|&i| zero_based(i, bound, what)).collect()
}

fn one_based(t: &[usize]) -> Vec<usize> {
    t.iter().map(|i| i + 1).collect()
}

fn strictly_increasing(t: &[usize], what: &str) -> Result<()> {
    if t.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parse(format!("{what} {t:?} must be strictly increasing")));
    }
    Ok(())
}

pub fn sparse_to_vec(v: &SparseVecJson, dim: usize) -> Result<QVec> {
    let mut out = zero_vec(dim);
    for (&k, x) in v {
        out[zero_based(k, dim, "value")?] = parse_rational(x)?;
    }
    Ok(out)
}

pub fn vec_to_sparse(v: &[Rational]) -> SparseVecJson {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !num_traits::Zero::is_zero(*x))
        .map(|(k, x)| (k + 1, format_rational(x)))
        .collect()
}

impl From<&NLieAlgebra> for AlgebraJson {
    fn from(a: &NLieAlgebra) -> Self {
        Self {
            arity: a.arity(),
            dim: a.dim(),
            brackets: a
                .structure()
                .iter()
                .map(|(t, v)| BracketJson {
                    on: one_based(t),
                    value: vec_to_sparse(v),
                })
                .collect(),
        }
    }
}

impl TryFrom<&AlgebraJson> for NLieAlgebra {
    type Error = Error;
    fn try_from(j: &AlgebraJson) -> Result<Self> {
        let mut a = NLieAlgebra::zero(j.arity, j.dim)?;
        for b in &j.brackets {
            if b.on.len() != j.arity {
                return Err(Error::Parse(format!(
                    "bracket key {:?} must have {} indices",
                    b.on, j.arity
                )));
            }
            strictly_increasing(&b.on, "bracket key")?;
            a.add_bracket(&tuple_in(&b.on, j.dim, "bracket")?, &sparse_to_vec(&b.value, j.dim)?)?;
        }
        Ok(a)
    }
}

impl From<&Representation> for RepresentationJson {
    fn from(r: &Representation) -> Self {
        Self {
            arity: r.arity(),
            algebra_dim: r.algebra_dim(),
            module_dim: r.module_dim(),
            action: r
                .action()
                .iter()
                .map(|((t, of), v)| ActionJson {
                    on: one_based(t),
                    of: of + 1,
                    value: vec_to_sparse(v),
                })
                .collect(),
        }
    }
}

impl TryFrom<&RepresentationJson> for Representation {
    type Error = Error;
    fn try_from(j: &RepresentationJson) -> Result<Self> {
        let mut r = Representation::zero(j.arity, j.algebra_dim, j.module_dim)?;
        for a in &j.action {
            if a.on.len() + 1 != j.arity {
                return Err(Error::Parse(format!(
                    "action key {:?} must have {} indices",
                    a.on,
                    j.arity - 1
                )));
            }
            strictly_increasing(&a.on, "action key")?;
            r.add_action(
                &tuple_in(&a.on, j.algebra_dim, "action")?,
                zero_based(a.of, j.module_dim, "module")?,
                &sparse_to_vec(&a.value, j.module_dim)?,
            )?;
        }
        Ok(r)
    }
}

impl From<&Cochain> for CochainJson {
    fn from(c: &Cochain) -> Self {
        let entries = if c.degree() == -1 {
            let w = c.to_wedge().expect("degree -1");
            w.terms()
                .map(|(t, x)| CochainEntryJson {
                    tensor_blocks: Vec::new(),
                    wedge: one_based(t),
                    value: None,
                    coefficient: Some(format_rational(x)),
                })
                .collect()
        } else {
            c.entries()
                .into_iter()
                .map(|e| CochainEntryJson {
                    tensor_blocks: e.tensor_blocks.iter().map(|b| one_based(b)).collect(),
                    wedge: one_based(&e.wedge),
                    value: Some(vec_to_sparse(&e.value)),
                    coefficient: None,
                })
                .collect()
        };
        Self {
            arity: c.arity(),
            dim: c.dim(),
            degree: c.degree(),
            entries,
        }
    }
}

impl TryFrom<&CochainJson> for Cochain {
    type Error = Error;
    fn try_from(j: &CochainJson) -> Result<Self> {
        let m = j.dim;
        if j.degree == -1 {
            let mut w = WedgeElement::zero(j.arity.saturating_sub(1), m);
            for e in &j.entries {
                if !e.tensor_blocks.is_empty() || e.value.is_some() {
                    return Err(Error::Parse(
                        "degree -1 entries have only a wedge and a coefficient".into(),
                    ));
                }
                let c = e
                    .coefficient
                    .as_deref()
                    .ok_or_else(|| Error::Parse("degree -1 entry without coefficient".into()))?;
                if e.wedge.len() + 1 != j.arity {
                    return Err(Error::Parse("degree -1 wedges have n-1 indices".into()));
                }
                strictly_increasing(&e.wedge, "wedge")?;
                w.add_basis(&tuple_in(&e.wedge, m, "wedge")?, parse_rational(c)?);
            }
            return Cochain::from_wedge(j.arity, &w);
        }
        let mut c = Cochain::zero(j.arity, m, j.degree)?;
        for e in &j.entries {
            if e.coefficient.is_some() {
                return Err(Error::Parse("only degree -1 entries have a coefficient".into()));
            }
            let value = e
                .value
                .as_ref()
                .ok_or_else(|| Error::Parse("cochain entry without value".into()))?;
            for b in &e.tensor_blocks {
                strictly_increasing(b, "tensor block")?;
            }
            strictly_increasing(&e.wedge, "wedge")?;
            let blocks = e
                .tensor_blocks
                .iter()
                .map(|b| tuple_in(b, m, "tensor block"))
                .collect::<Result<Vec<_>>>()?;
            c.add_entry(&blocks, &tuple_in(&e.wedge, m, "wedge")?, &sparse_to_vec(value, m)?)?;
        }
        Ok(c)
    }
}

pub fn matrix_to_json(a: &LinearMap) -> MatrixJson {
    a.to_rows()
        .iter()
        .map(|r| r.iter().map(format_rational).collect())
        .collect()
}

pub fn matrix_from_json(j: &MatrixJson) -> Result<LinearMap> {
    let rows = j
        .iter()
        .map(|r| r.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    LinearMap::from_rows(rows).map_err(|e| Error::Parse(e.to_string()))
}

pub fn poly_to_json(p: &MultiPoly) -> PolyJson {
    p.terms()
        .map(|(e, c)| TermJson {
            exponents: e.clone(),
            coeff: format_rational(c),
        })
        .collect()
}

pub fn poly_from_json(j: &PolyJson, num_vars: usize) -> Result<MultiPoly> {
    let terms = j
        .iter()
        .map(|t| Ok((t.exponents.clone(), parse_rational(&t.coeff)?)))
        .collect::<Result<Vec<_>>>()?;
    MultiPoly::from_terms(num_vars, terms)
}

pub fn field_to_json(v: &PolyVectorField) -> Vec<PolyJson> {
    v.components().iter().map(poly_to_json).collect()
}

pub fn field_from_json(j: &[PolyJson], num_vars: usize) -> Result<PolyVectorField> {
    PolyVectorField::new(
        j.iter()
            .map(|p| poly_from_json(p, num_vars))
            .collect::<Result<Vec<_>>>()?,
    )
}

macro_rules! serialize_via {
    ($t:ty, $j:ty) => {
        impl Serialize for $t {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                <$j>::from(self).serialize(s)
            }
        }
    };
}

serialize_via!(NLieAlgebra, AlgebraJson);
serialize_via!(Representation, RepresentationJson);
serialize_via!(Cochain, CochainJson);

pub fn parse_algebra(s: &str) -> Result<NLieAlgebra> {
    NLieAlgebra::try_from(&from_str::<AlgebraJson>(s)?)
}

pub fn parse_representation(s: &str) -> Result<Representation> {
    Representation::try_from(&from_str::<RepresentationJson>(s)?)
}

pub fn parse_cochain(s: &str) -> Result<Cochain> {
    Cochain::try_from(&from_str::<CochainJson>(s)?)
}

pub fn parse_matrix(s: &str) -> Result<LinearMap> {
    matrix_from_json(&from_str::<MatrixJson>(s)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathJson {
    pub base: AlgebraJson,
    pub order: usize,
    pub terms: Vec<CochainJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivalenceJson {
    pub order: usize,
    pub maps: Vec<MatrixJson>,
}

impl From<&DeformationPath> for PathJson {
    fn from(p: &DeformationPath) -> Self {
        Self {
            base: p.base().into(),
            order: p.order(),
            terms: p.terms().iter().map(CochainJson::from).collect(),
        }
    }
}

impl TryFrom<&PathJson> for DeformationPath {
    type Error = Error;
    fn try_from(j: &PathJson) -> Result<Self> {
        if j.order != j.terms.len() {
            return Err(Error::Parse(format!("order {} but {} terms", j.order, j.terms.len())));
        }
        let base = NLieAlgebra::try_from(&j.base)?;
        let terms = j.terms.iter().map(Cochain::try_from).collect::<Result<Vec<_>>>()?;
        DeformationPath::new(base, terms)
    }
}

impl From<&EquivalenceMap> for EquivalenceJson {
    fn from(e: &EquivalenceMap) -> Self {
        Self {
            order: e.order(),
            maps: e.maps().iter().map(matrix_to_json).collect(),
        }
    }
}

impl TryFrom<&EquivalenceJson> for EquivalenceMap {
    type Error = Error;
    fn try_from(j: &EquivalenceJson) -> Result<Self> {
        if j.order != j.maps.len() {
            return Err(Error::Parse(format!("order {} but {} maps", j.order, j.maps.len())));
        }
        EquivalenceMap::new(j.maps.iter().map(matrix_from_json).collect::<Result<Vec<_>>>()?)
    }
}

serialize_via!(DeformationPath, PathJson);
serialize_via!(EquivalenceMap, EquivalenceJson);

pub fn parse_path(s: &str) -> Result<DeformationPath> {
    DeformationPath::try_from(&from_str::<PathJson>(s)?)
}

pub fn parse_equivalence(s: &str) -> Result<EquivalenceMap> {
    EquivalenceMap::try_from(&from_str::<EquivalenceJson>(s)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectionBracketJson {
    pub on: Vec<usize>,
    pub value: Vec<PolyJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnchorJson {
    pub on: Vec<usize>,
    pub field: Vec<PolyJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebroidJson {
    pub num_vars: usize,
    pub rank: usize,
    pub arity: usize,
    pub brackets: Vec<SectionBracketJson>,
    pub anchor: Vec<AnchorJson>,
}

pub fn section_to_json(s: &PolySection) -> Vec<PolyJson> {
    s.coords().iter().map(poly_to_json).collect()
}

pub fn section_from_json(j: &[PolyJson], num_vars: usize) -> Result<PolySection> {
    PolySection::new(
        j.iter()
            .map(|p| poly_from_json(p, num_vars))
            .collect::<Result<Vec<_>>>()?,
    )
}

impl From<&PolyFilippovAlgebroid> for AlgebroidJson {
    fn from(a: &PolyFilippovAlgebroid) -> Self {
        Self {
            num_vars: a.num_vars(),
            rank: a.rank(),
            arity: a.arity(),
            brackets: a
                .brackets()
                .iter()
                .map(|(t, s)| SectionBracketJson {
                    on: one_based(t),
                    value: section_to_json(s),
                })
                .collect(),
            anchor: a
                .anchor_table()
                .iter()
                .map(|(t, v)| AnchorJson {
                    on: one_based(t),
                    field: field_to_json(v),
                })
                .collect(),
        }
    }
}

impl TryFrom<&AlgebroidJson> for PolyFilippovAlgebroid {
    type Error = Error;
    fn try_from(j: &AlgebroidJson) -> Result<Self> {
        if j.arity < 2 || j.rank == 0 {
            return Err(Error::Parse("algebroids need arity ≥ 2 and rank ≥ 1".into()));
        }
        let mut brackets = BTreeMap::new();
        for b in &j.brackets {
            if b.on.len() != j.arity {
                return Err(Error::Parse(format!(
                    "bracket key {:?} must have {} indices",
                    b.on, j.arity
                )));
            }
            strictly_increasing(&b.on, "bracket key")?;
            if b.value.len() != j.rank {
                return Err(Error::Parse(format!(
                    "bracket value on {:?} must have {} entries",
                    b.on, j.rank
                )));
            }
            let key = tuple_in(&b.on, j.rank, "bracket")?;
            if brackets.insert(key, section_from_json(&b.value, j.num_vars)?).is_some() {
                return Err(Error::Parse(format!("bracket key {:?} given twice", b.on)));
            }
        }
        let mut anchor = BTreeMap::new();
        for a in &j.anchor {
            if a.on.len() != j.arity - 1 {
                return Err(Error::Parse(format!(
                    "anchor key {:?} must have {} indices",
                    a.on,
                    j.arity - 1
                )));
            }
            strictly_increasing(&a.on, "anchor key")?;
            if a.field.len() != j.num_vars {
                return Err(Error::Parse(format!(
                    "anchor field on {:?} must have {} entries",
                    a.on, j.num_vars
                )));
            }
            let key = tuple_in(&a.on, j.rank, "anchor")?;
            if anchor.insert(key, field_from_json(&a.field, j.num_vars)?).is_some() {
                return Err(Error::Parse(format!("anchor key {:?} given twice", a.on)));
            }
        }
        PolyFilippovAlgebroid::new(j.num_vars, j.rank, j.arity, brackets, anchor)
    }
}

serialize_via!(PolyFilippovAlgebroid, AlgebroidJson);

impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        poly_to_json(self).serialize(s)
    }
}

impl Serialize for PolyVectorField {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.components())
    }
}

impl Serialize for PolySection {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coords())
    }
}

pub fn parse_algebroid(s: &str) -> Result<PolyFilippovAlgebroid> {
    PolyFilippovAlgebroid::try_from(&from_str::<AlgebroidJson>(s)?)
}
