use crate::arith::{MultiPoly, Rational};
use crate::error::{dim_err, Error, Result};
use crate::nlie::LinearMap;

/// Section of the trivial rank `r` bundle: one polynomial per generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolySection {
    coords: Vec<MultiPoly>,
}

impl PolySection {
    pub fn new(coords: Vec<MultiPoly>) -> Result<Self> {
        let Some(first) = coords.first() else {
            return Err(Error::InvalidArgument("sections need rank at least 1".into()));
        };
        let nv = first.num_vars();
        if coords.iter().any(|c| c.num_vars() != nv) {
            return Err(dim_err("section coordinates live on different bases"));
        }
        Ok(Self { coords })
    }

    pub fn zero(rank: usize, num_vars: usize) -> Self {
        assert!(rank > 0, "sections need rank at least 1");
        Self {
            coords: vec![MultiPoly::zero(num_vars); rank],
        }
    }

    /// The generator `x_a` (0-based).
    pub fn generator(rank: usize, num_vars: usize, a: usize) -> Self {
        Self::scaled_generator(rank, a, &MultiPoly::one(num_vars))
    }

    /// `f · x_a`.
    pub fn scaled_generator(rank: usize, a: usize, f: &MultiPoly) -> Self {
        let mut s = Self::zero(rank, f.num_vars());
        s.coords[a] = f.clone();
        s
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn num_vars(&self) -> usize {
        self.coords[0].num_vars()
    }

    pub fn coords(&self) -> &[MultiPoly] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(MultiPoly::is_zero)
    }

    /// Nonzero coefficients with their generator index.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &MultiPoly)> {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_mul(&MultiPoly::one(self.num_vars()), other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_mul(
            &MultiPoly::constant(self.num_vars(), -Rational::from_integer(1.into())),
            other,
        );
        out
    }

    /// `self += f · other`.
    pub fn add_mul(&mut self, f: &MultiPoly, other: &Self) {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        if f.is_zero() {
            return;
        }
        for (a, c) in other.terms() {
            self.coords[a] = &self.coords[a] + &(f * c);
        }
    }

    /// `self += f · x_a`.
    pub(crate) fn add_to_coord(&mut self, a: usize, f: &MultiPoly) {
        self.coords[a] = &self.coords[a] + f;
    }

    pub fn mul_fn(&self, f: &MultiPoly) -> Self {
        Self {
            coords: self.coords.iter().map(|c| c * f).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self {
            coords: self.coords.iter().map(|c| c.scale(r)).collect(),
        }
    }

    /// Constant coordinates, when every coefficient is constant.
    pub fn as_constant(&self) -> Option<Vec<Rational>> {
        self.coords.iter().map(MultiPoly::as_constant).collect()
    }
}

/// Bundle endomorphism given by an `r × r` matrix of polynomials; it is
/// linear over the function ring by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyLinearBundleMap {
    rows: Vec<Vec<MultiPoly>>,
}

impl PolyLinearBundleMap {
    pub fn new(rows: Vec<Vec<MultiPoly>>) -> Result<Self> {
        let r = rows.len();
        let Some(nv) = rows.first().and_then(|row| row.first()).map(MultiPoly::num_vars) else {
            return Err(Error::InvalidArgument("bundle maps need rank at least 1".into()));
        };
        if rows.iter().any(|row| row.len() != r) {
            return Err(dim_err("bundle map must be square"));
        }
        if rows.iter().flatten().any(|p| p.num_vars() != nv) {
            return Err(dim_err("bundle map entries live on different bases"));
        }
        Ok(Self { rows })
    }

    /// Constant-coefficient map from a rational matrix.
    pub fn from_linear_map(map: &LinearMap, num_vars: usize) -> Result<Self> {
        if map.rows() != map.cols() {
            return Err(dim_err("bundle map must be square"));
        }
        Self::new(
            (0..map.rows())
                .map(|i| {
                    (0..map.cols())
                        .map(|j| MultiPoly::constant(num_vars, map.get(i, j).clone()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn num_vars(&self) -> usize {
        self.rows[0][0].num_vars()
    }

    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly {
        &self.rows[i][j]
    }

    /// Image of the generator `x_j`.
    pub fn column(&self, j: usize) -> PolySection {
        PolySection {
            coords: self.rows.iter().map(|row| row[j].clone()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(MultiPoly::is_zero)
    }

    pub fn apply(&self, s: &PolySection) -> Result<PolySection> {
        if s.rank() != self.rank() || s.num_vars() != self.num_vars() {
            return Err(dim_err("section and bundle map do not match"));
        }
        let mut out = PolySection::zero(self.rank(), self.num_vars());
        for (j, f) in s.terms() {
            out.add_mul(f, &self.column(j));
        }
        Ok(out)
    }
}

pub(crate) fn is_constant(f: &MultiPoly) -> bool {
    f.as_constant().is_some()
}
