//! Exact Gauss–Jordan elimination.

use std::collections::BTreeMap;

use serde::Serialize;

use super::field::FieldElement;
use super::param::{Param, ParamExpr};
use crate::error::{Error, Result};

/// Reduces `m` in place to reduced row-echelon form and returns the pivot
/// columns. The pivot of each column is the first row (from the current
/// one down) with a nonzero entry.
pub fn rref(m: &mut Vec<Vec<FieldElement>>, ncols: usize) -> Result<Vec<usize>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].inv()?;
        for x in m[r].iter_mut() {
            *x = x.checked_mul(&inv)?;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = x.checked_sub(&f.checked_mul(y)?)?;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r.max(0));
    m.retain(|row| row.iter().any(|x| !x.is_zero()));
    Ok(pivots)
}

/// Coefficient matrix of `rows` with respect to `params`.
fn coefficient_matrix(rows: &[ParamExpr], params: &[Param]) -> Result<Vec<Vec<FieldElement>>> {
    let index: BTreeMap<&Param, usize> = params.iter().enumerate().map(|(i, p)| (p, i)).collect();
    rows.iter()
        .map(|row| {
            let mut v = vec![FieldElement::zero(); params.len()];
            for (p, c) in row.terms() {
                let i = *index
                    .get(p)
                    .ok_or_else(|| Error::UnknownParameter(p.to_string()))?;
                v[i] = c.clone();
            }
            Ok(v)
        })
        .collect()
}

/// A linear subspace of parameter assignments.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolutionSpace {
    #[serde(serialize_with = "ser_params")]
    pub parameter_names: Vec<Param>,
    #[serde(serialize_with = "ser_basis")]
    pub basis: Vec<Vec<FieldElement>>,
    pub dimension: usize,
}

fn ser_params<S: serde::Serializer>(v: &[Param], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.as_str()))
}

fn ser_basis<S: serde::Serializer>(
    v: &[Vec<FieldElement>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(
        v.iter()
            .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
    )
}

impl SolutionSpace {
    /// The subspace spanned by `vectors`, normalised to row-echelon form.
    pub fn from_span(parameter_names: Vec<Param>, vectors: Vec<Vec<FieldElement>>) -> Result<Self> {
        let mut basis = vectors;
        rref(&mut basis, parameter_names.len())?;
        let dimension = basis.len();
        Ok(SolutionSpace {
            parameter_names,
            basis,
            dimension,
        })
    }

    /// The parameter at the pivot of each basis vector; used to name the
    /// free coefficient of that direction.
    pub fn pivot_names(&self) -> Vec<Param> {
        self.basis
            .iter()
            .map(|v| {
                let i = v.iter().position(|x| !x.is_zero()).expect("basis vectors are nonzero");
                self.parameter_names[i].clone()
            })
            .collect()
    }

    /// The generic solution: each original parameter written in terms of the
    /// pivot names.
    pub fn general_assignment(&self) -> Result<BTreeMap<Param, ParamExpr>> {
        let names = self.pivot_names();
        let mut out = BTreeMap::new();
        for (j, p) in self.parameter_names.iter().enumerate() {
            let mut e = ParamExpr::zero();
            for (v, name) in self.basis.iter().zip(&names) {
                e = e.checked_add(&ParamExpr::term(name.clone(), v[j].clone()))?;
            }
            out.insert(p.clone(), e);
        }
        Ok(out)
    }

    /// Σ coeffs[b]·basis[b].
    pub fn combination(&self, coeffs: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let mut out = vec![FieldElement::zero(); self.parameter_names.len()];
        for (c, v) in coeffs.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(v) {
                *o = o.checked_add(&c.checked_mul(x)?)?;
            }
        }
        Ok(out)
    }

    /// Whether `v` lies in the span.
    pub fn contains(&self, v: &[FieldElement]) -> Result<bool> {
        let mut m = self.basis.clone();
        m.push(v.to_vec());
        rref(&mut m, self.parameter_names.len())?;
        Ok(m.len() == self.dimension)
    }
}

/// Null space of a homogeneous affine system.
///
/// Every row must have zero constant part; a row with a nonzero constant is
/// reported as [`Error::Inconsistent`].
pub fn solve_homogeneous(rows: &[ParamExpr], params: &[Param]) -> Result<SolutionSpace> {
    for (i, row) in rows.iter().enumerate() {
        if !row.constant_part().is_zero() {
            return Err(Error::Inconsistent {
                row: i,
                constant: row.constant_part().to_string(),
            });
        }
    }
    let mut m = coefficient_matrix(rows, params)?;
    let pivots = rref(&mut m, params.len())?;
    let mut basis = Vec::new();
    for free in (0..params.len()).filter(|c| !pivots.contains(c)) {
        let mut v = vec![FieldElement::zero(); params.len()];
        v[free] = FieldElement::one();
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = -&row[free];
        }
        basis.push(v);
    }
    SolutionSpace::from_span(params.to_vec(), basis)
}

/// One solution of the affine system `rows = 0`, free parameters set to
/// zero, or `None` when the system is inconsistent.
pub fn solve_affine(rows: &[ParamExpr], params: &[Param]) -> Result<Option<BTreeMap<Param, FieldElement>>> {
    let mut m = coefficient_matrix(rows, params)?;
    for (row, expr) in m.iter_mut().zip(rows) {
        row.push(-expr.constant_part());
    }
    let pivots = rref(&mut m, params.len() + 1)?;
    if pivots.last() == Some(&params.len()) {
        return Ok(None);
    }
    let mut out: BTreeMap<Param, FieldElement> =
        params.iter().map(|p| (p.clone(), FieldElement::zero())).collect();
    for (row, &pc) in m.iter().zip(&pivots) {
        out.insert(params[pc].clone(), row[params.len()].clone());
    }
    Ok(Some(out))
}

/// Rank of a matrix over the field.
pub fn rank(m: &[Vec<FieldElement>], ncols: usize) -> Result<usize> {
    let mut m = m.to_vec();
    Ok(rref(&mut m, ncols)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(names: &[&str]) -> Vec<Param> {
        names.iter().map(|n| Param::new(n)).collect()
    }

    #[test]
    fn empty_system() {
        let ps: Vec<Param> = (0..16).map(|i| Param::new(&format!("p{i}"))).collect();
        let s = solve_homogeneous(&[], &ps).unwrap();
        assert_eq!(s.dimension, 16);
        for (i, v) in s.basis.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(x.is_one(), i == j);
            }
        }
    }

    #[test]
    fn full_rank() {
        let ps = params(&["x", "y"]);
        let rows = vec![ParamExpr::param("x"), ParamExpr::param("y")];
        assert_eq!(solve_homogeneous(&rows, &ps).unwrap().dimension, 0);
    }

    #[test]
    fn one_equation_two_unknowns() {
        let ps = params(&["a11", "a33"]);
        let rows = vec![ParamExpr::param("a11").checked_sub(&ParamExpr::param("a33")).unwrap()];
        let s = solve_homogeneous(&rows, &ps).unwrap();
        assert_eq!(s.dimension, 1);
        assert!(s.basis[0].iter().all(FieldElement::is_one));
        assert_eq!(s.pivot_names(), vec![Param::new("a11")]);
    }

    #[test]
    fn constant_row_is_inconsistent() {
        let ps = params(&["x"]);
        let rows = vec![ParamExpr::constant(FieldElement::from_int(1))];
        assert!(matches!(
            solve_homogeneous(&rows, &ps),
            Err(Error::Inconsistent { row: 0, .. })
        ));
    }

    #[test]
    fn affine_solution() {
        let ps = params(&["x", "y"]);
        // x + y - 3 = 0, x - y - 1 = 0
        let x = ParamExpr::param("x");
        let y = ParamExpr::param("y");
        let c = |n| ParamExpr::constant(FieldElement::from_int(n));
        let rows = vec![
            x.checked_add(&y).unwrap().checked_add(&c(-3)).unwrap(),
            x.checked_sub(&y).unwrap().checked_add(&c(-1)).unwrap(),
        ];
        let sol = solve_affine(&rows, &ps).unwrap().unwrap();
        assert_eq!(sol[&Param::new("x")], FieldElement::from_int(2));
        assert_eq!(sol[&Param::new("y")], FieldElement::from_int(1));
        let bad = vec![x.clone(), x.checked_add(&c(1)).unwrap()];
        assert!(solve_affine(&bad, &ps).unwrap().is_none());
    }
}
