use std::fmt;

use super::{MultiPoly, Rational};
use crate::error::{dim_err, Result};

/// Polynomial vector field `Σ v_i ∂/∂x_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyVectorField {
    components: Vec<MultiPoly>,
}

impl PolyVectorField {
    pub fn zero(num_vars: usize) -> Self {
        Self {
            components: vec![MultiPoly::zero(num_vars); num_vars],
        }
    }

    /// The coordinate field `∂/∂x_i` (0-based).
    pub fn partial(num_vars: usize, i: usize) -> Self {
        let mut v = Self::zero(num_vars);
        v.components[i] = MultiPoly::one(num_vars);
        v
    }

    pub fn new(components: Vec<MultiPoly>) -> Result<Self> {
        let n = components.len();
        if components.iter().any(|c| c.num_vars() != n) {
            return Err(dim_err(
                "vector field components must be polynomials in as many variables as there are components",
            ));
        }
        Ok(Self { components })
    }

    pub fn num_vars(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(MultiPoly::is_zero)
    }

    /// `v(f) = Σ v_i ∂f/∂x_i`.
    pub fn apply(&self, f: &MultiPoly) -> Result<MultiPoly> {
        if f.num_vars() != self.num_vars() {
            return Err(dim_err("vector field and function live on different bases"));
        }
        let mut out = MultiPoly::zero(self.num_vars());
        for (i, vi) in self.components.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            let d = f.derivative(i);
            if !d.is_zero() {
                out = &out + &(vi * &d);
            }
        }
        Ok(out)
    }

    /// Lie bracket `[v, w] = v∘w − w∘v`, componentwise `v(w_i) − w(v_i)`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        if self.num_vars() != other.num_vars() {
            return Err(dim_err("vector fields on different bases"));
        }
        let comps = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(vi, wi)| Ok(&self.apply(wi)? - &other.apply(vi)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { components: comps })
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn add_scaled(&mut self, r: &Rational, other: &Self) {
        for (a, b) in self.components.iter_mut().zip(&other.components) {
            a.add_scaled(r, b);
        }
    }

    /// Multiplies by a function (fields are a module over the base ring).
    pub fn mul_fn(&self, f: &MultiPoly) -> Self {
        Self {
            components: self.components.iter().map(|c| c * f).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self {
            components: self.components.iter().map(|c| c.scale(r)).collect(),
        }
    }
}

impl fmt::Display for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})d/dx{}", i + 1))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
