//! Verdicts returned by the exhaustive checkers, with serializable witnesses.
//!
//! Index tuples inside witnesses are stored 0-based and serialized 1-based,
//! matching the JSON input formats.

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::arith::{format_rational, Rational};

/// Outcome of an exhaustive check: `holds`, or `fails` with the first
/// failing input in lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict<W> {
    pub witness: Option<W>,
}

impl<W> Verdict<W> {
    pub fn holds() -> Self {
        Self { witness: None }
    }

    pub fn fails(w: W) -> Self {
        Self { witness: Some(w) }
    }

    pub fn is_holds(&self) -> bool {
        self.witness.is_none()
    }

    pub fn status(&self) -> &'static str {
        if self.is_holds() {
            "holds"
        } else {
            "fails"
        }
    }
}

impl<W: Serialize> Serialize for Verdict<W> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Verdict", 2)?;
        st.serialize_field("status", self.status())?;
        st.serialize_field("witness", &self.witness)?;
        st.end()
    }
}

pub(crate) fn ser_qvec<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

pub(crate) fn ser_idx<S: Serializer>(v: &[usize], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|i| i + 1))
}

pub(crate) fn ser_idx_nested<S: Serializer>(v: &[Vec<usize>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|t| t.iter().map(|i| i + 1).collect::<Vec<_>>()))
}

pub(crate) fn ser_one<S: Serializer>(v: &usize, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(*v as u64 + 1)
}

pub(crate) fn ser_matrix<S: Serializer>(a: &crate::arith::RationalMatrix, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(
        a.to_rows()
            .iter()
            .map(|r| r.iter().map(format_rational).collect::<Vec<_>>()),
    )
}
