use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{Coeff, FieldElement, Param, ParamExpr};

/// An n×n matrix with 1-based accessors.
///
/// Convention used across the crate: entry (j, k) of a derivation D is the
/// coefficient of e_k in D(e_j), so row j lists the image of the j-th basis
/// vector.
#[derive(Clone, PartialEq)]
pub struct SquareMatrix<C> {
    dim: usize,
    entries: Vec<C>,
}

impl<C: Coeff> SquareMatrix<C> {
    pub fn zero(dim: usize) -> Self {
        SquareMatrix {
            dim,
            entries: vec![C::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 1..=dim {
            m.set(i, i, C::one());
        }
        m
    }

    pub fn diagonal(diag: Vec<C>) -> Self {
        let mut m = Self::zero(diag.len());
        for (i, c) in diag.into_iter().enumerate() {
            m.set(i + 1, i + 1, c);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(SquareMatrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry in row `i`, column `j` (1-based).
    pub fn get(&self, i: usize, j: usize) -> &C {
        &self.entries[(i - 1) * self.dim + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, c: C) {
        self.entries[(i - 1) * self.dim + (j - 1)] = c;
    }

    pub fn rows(&self) -> Vec<Vec<C>> {
        self.entries.chunks(self.dim).map(<[C]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Coeff::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.dim);
        for i in 1..=self.dim {
            for j in 1..=self.dim {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<_>>()?;
        Ok(SquareMatrix { dim: self.dim, entries })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, s: &FieldElement) -> Result<Self> {
        self.try_map(|c| c.scale(s))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.dim;
        let mut m = Self::zero(n);
        for i in 1..=n {
            for k in 1..=n {
                let mut acc = C::zero();
                for j in 1..=n {
                    let (a, b) = (self.get(i, j), other.get(j, k));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.try_add(&a.try_mul(b)?)?;
                    }
                }
                m.set(i, k, acc);
            }
        }
        Ok(m)
    }

    pub fn trace(&self) -> Result<C> {
        (1..=self.dim).try_fold(C::zero(), |acc, i| acc.try_add(self.get(i, i)))
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> SquareMatrix<D> {
        SquareMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map<D: Coeff>(&self, f: impl Fn(&C) -> Result<D>) -> Result<SquareMatrix<D>> {
        Ok(SquareMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn to_param(&self) -> SquareMatrix<ParamExpr> {
        self.map(Coeff::to_param_expr)
    }

    /// The matrix with scalar entries, if it has no parameters.
    pub fn to_scalar(&self) -> Option<SquareMatrix<FieldElement>> {
        let entries = self.entries.iter().map(Coeff::as_scalar).collect::<Option<_>>()?;
        Some(SquareMatrix { dim: self.dim, entries })
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            })
        }
    }
}

impl SquareMatrix<ParamExpr> {
    pub fn eval(&self, values: &BTreeMap<Param, FieldElement>) -> Result<SquareMatrix<FieldElement>> {
        self.try_map(|c| c.eval(values))
    }

    pub fn substitute(&self, values: &BTreeMap<Param, ParamExpr>) -> Result<Self> {
        self.try_map(|c| c.substitute(values))
    }

    /// Parameters occurring in the entries.
    pub fn params(&self) -> Vec<Param> {
        let mut out: Vec<Param> = self.entries.iter().flat_map(|c| c.params().cloned()).collect();
        out.sort();
        out.dedup();
        out
    }
}

impl SquareMatrix<FieldElement> {
    /// Determinant by elimination.
    pub fn det(&self) -> Result<FieldElement> {
        let n = self.dim;
        let mut m = self.rows();
        let mut det = FieldElement::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return Ok(FieldElement::zero());
            };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            det = det.checked_mul(&m[col][col])?;
            let inv = m[col][col].inv()?;
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let f = m[r][col].checked_mul(&inv)?;
                for c in col..n {
                    let sub = f.checked_mul(&m[col][c])?;
                    m[r][c] = m[r][c].checked_sub(&sub)?;
                }
            }
        }
        Ok(det)
    }
}

impl<C: Coeff> fmt::Display for SquareMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.entries.chunks(self.dim).enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            f.write_str(&cells.join(", "))?;
        }
        f.write_str("]")
    }
}

impl<C: Coeff> fmt::Debug for SquareMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> SquareMatrix<FieldElement> {
        SquareMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| FieldElement::from_int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn det_of_small_matrices() {
        assert_eq!(m(&[&[2, 1], &[1, 1]]).det().unwrap(), FieldElement::from_int(1));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det().unwrap(), FieldElement::from_int(-1));
        assert!(m(&[&[1, 2], &[2, 4]]).det().unwrap().is_zero());
    }

    #[test]
    fn product_and_transpose() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.try_mul(&b).unwrap(), m(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose(), m(&[&[1, 3], &[2, 4]]));
        assert_eq!(a.to_string(), "[1, 2; 3, 4]");
    }
}
