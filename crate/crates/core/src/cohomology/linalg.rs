use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{QVec, Rational, RationalMatrix};

/// Rank and a nullspace basis of a rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankNullspace {
    pub rank: usize,
    /// One vector per free column, in increasing column order: the free
    /// coordinate is 1, the other free coordinates 0.
    pub nullspace: Vec<QVec>,
}

/// Row echelon form over ℤ produced by Bareiss elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

/// Clears denominators row by row.
fn integer_rows(m: &RationalMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .filter(|r: &Vec<BigInt>| r.iter().any(|x| !x.is_zero()))
        .collect()
}

/// Fraction-free Gaussian elimination: every division is exact, so
/// intermediate entries stay bounded by minors of the input.
fn bareiss(m: &RationalMatrix) -> Echelon {
    let mut a = integer_rows(m);
    let cols = m.cols();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        // smallest nonzero pivot keeps numbers short
        let Some(p) = (r..a.len())
            .filter(|&i| !a[i][c].is_zero())
            .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()).then(i.cmp(&j)))
        else {
            continue;
        };
        a.swap(r, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let piv_row = &top[r];
        for row in bottom.iter_mut() {
            let f = row[c].clone();
            for k in c..cols {
                let v = &piv_row[c] * &row[k] - &f * &piv_row[k];
                row[k] = v / &prev;
            }
        }
        // columns left of c in later rows are already zero
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon { rows: a, pivots }
}

pub fn rank(m: &RationalMatrix) -> usize {
    bareiss(m).pivots.len()
}

/// Pivot columns of the reduced echelon form, i.e. the lexicographically
/// first maximal independent set of columns.
pub fn pivot_columns(m: &RationalMatrix) -> Vec<usize> {
    bareiss(m).pivots
}

/// Reduced row echelon form over ℚ: the nonzero rows and their pivot
/// columns.
fn rref(m: &RationalMatrix) -> (Vec<QVec>, Vec<usize>) {
    let ech = bareiss(m);
    let cols = m.cols();
    let rank = ech.pivots.len();
    let mut red: Vec<QVec> = ech
        .rows
        .iter()
        .map(|row| row.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    for i in (0..rank).rev() {
        let c = ech.pivots[i];
        let piv = red[i][c].clone();
        for x in red[i].iter_mut() {
            *x /= &piv;
        }
        for j in 0..i {
            let f = red[j][c].clone();
            if f.is_zero() {
                continue;
            }
            for k in c..cols {
                let d = &f * &red[i][k];
                red[j][k] -= d;
            }
        }
    }
    (red, ech.pivots)
}

pub fn rank_nullspace(m: &RationalMatrix) -> RankNullspace {
    let cols = m.cols();
    let (red, pivots) = rref(m);
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let nullspace = (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -red[i][f].clone();
            }
            v
        })
        .collect();
    RankNullspace {
        rank: pivots.len(),
        nullspace,
    }
}

/// A solution of `a x = b` with every free variable set to zero (the
/// canonical echelon solution), or `None` if the system is inconsistent.
pub fn solve(a: &RationalMatrix, b: &[Rational]) -> Option<QVec> {
    let aug = a
        .hstack(&RationalMatrix::from_columns(a.rows(), vec![b.to_vec()]).ok()?)
        .ok()?;
    let (red, pivots) = rref(&aug);
    if pivots.last() == Some(&a.cols()) {
        return None;
    }
    let mut x = vec![Rational::zero(); a.cols()];
    for (row, &c) in red.iter().zip(&pivots) {
        x[c] = row[a.cols()].clone();
    }
    Some(x)
}

/// A vector `y` with `yᵀ a = 0` and `y · b ≠ 0`, proving that `b` is not in
/// the column space of `a`.
pub fn inconsistency_certificate(a: &RationalMatrix, b: &[Rational]) -> Option<QVec> {
    rank_nullspace(&a.transpose()).nullspace.into_iter().find(|y| {
        let dot = y.iter().zip(b).fold(Rational::zero(), |acc, (u, v)| acc + u * v);
        !dot.is_zero()
    })
}
