use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exterior::SquareMatrix;
use crate::scalars::{solve_affine, Coeff, FieldElement, Param, ParamExpr, SolutionSpace};

/// Which family of matrices a template parametrises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    /// Real form of sl(3, ℂ): commutes with the block rotation J and has
    /// vanishing complex trace. 16 parameters.
    Sl3c,
    /// sp(6, ℝ) for ω = e^{12}+e^{34}+e^{56}. 21 parameters.
    Sp6r,
    /// All n² entries free.
    General,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::Sl3c => "sl(3,C)",
            Shape::Sp6r => "sp(6,R)",
            Shape::General => "gl(n,R)",
        })
    }
}

/// A matrix of affine expressions in named parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivationTemplate {
    pub shape: Shape,
    pub parameters: Vec<Param>,
    pub matrix: SquareMatrix<ParamExpr>,
    /// Entry (row, column) holding exactly each parameter.
    anchors: Vec<(usize, usize)>,
}

fn entry(spec: &str) -> ParamExpr {
    // "a12", "-a12", "-a11-a33", "a12+a34", "0"
    let mut e = ParamExpr::zero();
    let mut rest = spec;
    while !rest.is_empty() {
        let neg = rest.starts_with('-');
        rest = rest.trim_start_matches(['+', '-']);
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let (name, tail) = rest.split_at(end);
        if name != "0" {
            let p = ParamExpr::param(name);
            e = e.checked_add(&if neg { p.neg() } else { p }).expect("rational");
        }
        rest = tail;
    }
    e
}

impl DerivationTemplate {
    fn from_table(shape: Shape, names: &[&str], rows: [[&str; 6]; 6]) -> Self {
        let m = SquareMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|s| entry(s)).collect()).collect(),
        )
        .expect("6x6");
        let parameters: Vec<Param> = names.iter().map(|n| Param::new(n)).collect();
        let anchors = parameters
            .iter()
            .map(|p| {
                let target = ParamExpr::term(p.clone(), FieldElement::one());
                (1..=6)
                    .flat_map(|i| (1..=6).map(move |j| (i, j)))
                    .find(|&(i, j)| m.get(i, j) == &target)
                    .expect("every parameter has an anchor entry")
            })
            .collect();
        DerivationTemplate {
            shape,
            parameters,
            matrix: m,
            anchors,
        }
    }

    /// The 16-parameter real form of sl(3, ℂ).
    pub fn sl3c() -> Self {
        Self::from_table(
            Shape::Sl3c,
            &[
                "a11", "a12", "a13", "a14", "a15", "a16", "a31", "a32", "a33", "a34", "a35", "a36",
                "a51", "a52", "a53", "a54",
            ],
            [
                ["a11", "a12", "a13", "a14", "a15", "a16"],
                ["-a12", "a11", "-a14", "a13", "-a16", "a15"],
                ["a31", "a32", "a33", "a34", "a35", "a36"],
                ["-a32", "a31", "-a34", "a33", "-a36", "a35"],
                ["a51", "a52", "a53", "a54", "-a11-a33", "-a12-a34"],
                ["-a52", "a51", "-a54", "a53", "a12+a34", "-a11-a33"],
            ],
        )
    }

    /// The 21-parameter sp(6, ℝ).
    pub fn sp6r() -> Self {
        Self::from_table(
            Shape::Sp6r,
            &[
                "a11", "a12", "a13", "a14", "a15", "a16", "a21", "a23", "a24", "a25", "a26", "a33",
                "a34", "a35", "a36", "a43", "a45", "a46", "a55", "a56", "a65",
            ],
            [
                ["a11", "a12", "a13", "a14", "a15", "a16"],
                ["a21", "-a11", "a23", "a24", "a25", "a26"],
                ["-a24", "a14", "a33", "a34", "a35", "a36"],
                ["a23", "-a13", "a43", "-a33", "a45", "a46"],
                ["-a26", "a16", "-a46", "a36", "a55", "a56"],
                ["a25", "-a15", "a45", "-a35", "a65", "-a55"],
            ],
        )
    }

    /// Every entry a free parameter `a{i}{j}` (`a{i}_{j}` beyond 9).
    pub fn general(n: usize) -> Self {
        let name = |i: usize, j: usize| {
            if n > 9 {
                format!("a{i}_{j}")
            } else {
                format!("a{i}{j}")
            }
        };
        let mut matrix = SquareMatrix::zero(n);
        let mut parameters = Vec::new();
        let mut anchors = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                let p = name(i, j);
                matrix.set(i, j, ParamExpr::param(&p));
                parameters.push(Param::new(&p));
                anchors.push((i, j));
            }
        }
        DerivationTemplate {
            shape: Shape::General,
            parameters,
            matrix,
            anchors,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// The matrix at the given parameter values (in parameter order).
    pub fn instantiate(&self, values: &[FieldElement]) -> Result<SquareMatrix<FieldElement>> {
        if values.len() != self.parameters.len() {
            return Err(Error::DimensionMismatch {
                expected: self.parameters.len(),
                found: values.len(),
            });
        }
        let map: BTreeMap<Param, FieldElement> =
            self.parameters.iter().cloned().zip(values.iter().cloned()).collect();
        self.matrix.eval(&map)
    }

    /// The generic member of a solution space, written in the names of the
    /// pivot parameters.
    pub fn from_solution(&self, space: &SolutionSpace) -> Result<SquareMatrix<ParamExpr>> {
        self.matrix.substitute(&space.general_assignment()?)
    }

    /// One matrix per basis vector.
    pub fn basis_matrices(&self, space: &SolutionSpace) -> Result<Vec<SquareMatrix<FieldElement>>> {
        space.basis.iter().map(|v| self.instantiate(v)).collect()
    }

    /// Parameter values realising `m`, or `None` if `m` is not of this shape.
    pub fn coordinates(&self, m: &SquareMatrix<FieldElement>) -> Result<Option<Vec<FieldElement>>> {
        if m.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: m.dim(),
            });
        }
        let mut rows = Vec::new();
        for i in 1..=self.dim() {
            for j in 1..=self.dim() {
                rows.push(
                    self.matrix
                        .get(i, j)
                        .checked_sub(&ParamExpr::constant(m.get(i, j).clone()))?,
                );
            }
        }
        Ok(solve_affine(&rows, &self.parameters)?
            .map(|sol| self.parameters.iter().map(|p| sol[p].clone()).collect()))
    }

    /// Checks that `m` lies in the span of the template; a parametric `m`
    /// must do so for every value of its parameters.
    ///
    /// The error lists the entries that disagree with the template member
    /// read off the anchor entries.
    pub fn check_membership<C: Coeff>(&self, m: &SquareMatrix<C>) -> Result<()> {
        let mut offending = Vec::new();
        for part in split_parameters(&m.to_param())? {
            if self.coordinates(&part)?.is_some() {
                continue;
            }
            let values: Vec<FieldElement> =
                self.anchors.iter().map(|&(i, j)| part.get(i, j).clone()).collect();
            let guess = self.instantiate(&values)?;
            for i in 1..=self.dim() {
                for j in 1..=self.dim() {
                    if guess.get(i, j) != part.get(i, j) && !offending.contains(&(i, j)) {
                        offending.push((i, j));
                    }
                }
            }
        }
        if offending.is_empty() {
            Ok(())
        } else {
            offending.sort();
            Err(Error::ShapeViolation {
                shape: self.shape.to_string(),
                entries: offending,
            })
        }
    }
}

/// Writes M = M₀ + Σ p·M_p and returns M₀ followed by each M_p.
pub fn split_parameters(m: &SquareMatrix<ParamExpr>) -> Result<Vec<SquareMatrix<FieldElement>>> {
    let mut out = vec![m.try_map(|c| Ok(c.constant_part().clone()))?];
    for p in m.params() {
        out.push(m.try_map(|c| Ok(c.coefficient(&p)))?);
    }
    Ok(out)
}

/// The block rotation J with J(e_1) = e_2, J(e_2) = −e_1, etc., in the row
/// convention.
pub fn canonical_j() -> SquareMatrix<FieldElement> {
    let mut j = SquareMatrix::zero(6);
    for b in [1, 3, 5] {
        j.set(b, b + 1, FieldElement::one());
        j.set(b + 1, b, FieldElement::from_int(-1));
    }
    j
}

/// Matrix of ω = e^{12}+e^{34}+e^{56}: Ω(i, j) = ω(e_i, e_j).
pub fn canonical_omega_matrix() -> SquareMatrix<FieldElement> {
    canonical_j()
}
