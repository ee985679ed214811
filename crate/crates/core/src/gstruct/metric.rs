use serde::Serialize;

use super::structures::{wedge_power, Form};
use crate::error::{Error, Result};
use crate::exterior::SquareMatrix;
use crate::scalars::{rat, FieldElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Definiteness {
    Positive,
    Negative,
    Indefinite,
}

/// A symmetric bilinear form in the coframe basis.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricMatrix {
    pub matrix: SquareMatrix<FieldElement>,
    /// Determinant of `matrix`; nonzero by construction.
    pub det: FieldElement,
}

#[derive(Serialize)]
struct MetricJson {
    matrix: Vec<Vec<String>>,
    det: String,
}

impl MetricMatrix {
    fn new(matrix: SquareMatrix<FieldElement>, what: &str) -> Result<Self> {
        if matrix != matrix.transpose() {
            return Err(Error::NotStable(what.to_string()));
        }
        let det = matrix.det()?;
        if det.is_zero() {
            return Err(Error::Degenerate(format!("{what}: induced bilinear form is degenerate")));
        }
        Ok(MetricMatrix { matrix, det })
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == SquareMatrix::identity(self.dim())
    }

    /// Sylvester's criterion on the leading minors; `None` when a minor is
    /// irrational.
    pub fn definiteness(&self) -> Option<Definiteness> {
        let zero = rat(0, 1);
        let (mut pos, mut neg) = (true, true);
        for k in 1..=self.dim() {
            let rows = (1..=k)
                .map(|i| (1..=k).map(|j| self.matrix.get(i, j).clone()).collect())
                .collect();
            let d = SquareMatrix::from_rows(rows).ok()?.det().ok()?.as_rational()?.clone();
            pos &= d > zero;
            neg &= if k % 2 == 1 { d < zero } else { d > zero };
        }
        Some(match (pos, neg) {
            (true, _) => Definiteness::Positive,
            (_, true) => Definiteness::Negative,
            _ => Definiteness::Indefinite,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(MetricJson {
            matrix: self
                .matrix
                .rows()
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect(),
            det: self.det.to_string(),
        })
        .expect("plain data")
    }
}

/// b(X, Y) vol = (1/6) ι_Xφ ∧ ι_Yφ ∧ φ, with vol = e^{1…7}.
///
/// The canonical φ gives the identity, so no further rescaling is applied.
pub fn g2_metric(phi: &Form) -> Result<MetricMatrix> {
    if phi.dim() != 7 || phi.degree() != 3 {
        return Err(Error::Precondition("g2_metric expects a 3-form in dimension 7".into()));
    }
    let sixth = FieldElement::from_rational(rat(1, 6));
    let contractions: Vec<Form> = (1..=7).map(|i| phi.contract(i)).collect::<Result<_>>()?;
    let mut m = SquareMatrix::zero(7);
    for i in 1..=7 {
        for j in i..=7 {
            let top = contractions[i - 1].wedge(&contractions[j - 1])?.wedge(phi)?;
            let b = top.top_coefficient().checked_mul(&sixth)?;
            m.set(i, j, b.clone());
            m.set(j, i, b);
        }
    }
    MetricMatrix::new(m, "phi")
}

/// g(X, Y) ω³ = −3 ι_Xω ∧ ι_Yψ₊ ∧ ψ₊.
pub fn su3_metric(omega: &Form, psi_plus: &Form) -> Result<MetricMatrix> {
    let w3 = wedge_power(omega, 3)?.top_coefficient();
    if w3.is_zero() {
        return Err(Error::Degenerate("omega^3 = 0".into()));
    }
    let scale = FieldElement::from_int(-3).checked_div(&w3)?;
    let mut m = SquareMatrix::zero(6);
    for i in 1..=6 {
        let iw = omega.contract(i)?;
        for j in 1..=6 {
            let top = iw.wedge(&psi_plus.contract(j)?)?.wedge(psi_plus)?;
            m.set(i, j, top.top_coefficient().checked_mul(&scale)?);
        }
    }
    MetricMatrix::new(m, "(omega, psi_plus)")
}

/// The matrix of J* on the coframe: row i holds the coefficients of J*eⁱ,
/// from (J*α)(X) ω³ = α ∧ ι_Xψ₊ ∧ ψ₊ rescaled by 3 so that the canonical ψ₊
/// gives J*e¹ = e².
pub fn su3_acs(psi_plus: &Form, omega: &Form) -> Result<SquareMatrix<FieldElement>> {
    let w3 = wedge_power(omega, 3)?.top_coefficient();
    if w3.is_zero() {
        return Err(Error::Degenerate("omega^3 = 0".into()));
    }
    let scale = FieldElement::from_int(3).checked_div(&w3)?;
    let mut m = SquareMatrix::zero(6);
    for k in 1..=6 {
        let ik = psi_plus.contract(k)?.wedge(psi_plus)?;
        for i in 1..=6 {
            let ei = Form::basis(6, &[i])?;
            let top = ei.wedge(&ik)?.top_coefficient();
            m.set(i, k, top.checked_mul(&scale)?);
        }
    }
    let sq = m.try_mul(&m)?;
    if sq != SquareMatrix::identity(6).neg() {
        return Err(Error::NotStable("psi_plus".into()));
    }
    Ok(m)
}
