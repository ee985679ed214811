use std::fmt;

use crate::error::{Error, Result};
use crate::exterior::{Blade, KForm, SquareMatrix};
use crate::scalars::{Coeff, FieldElement, ParamExpr};

/// A Lie algebra given by its structure equations de¹, …, deⁿ.
///
/// Brackets are recovered as [e_i, e_j] = −Σ_k deᵏ(e_i, e_j) e_k.
#[derive(Clone, PartialEq)]
pub struct LieAlgebra<C> {
    diffs: Vec<KForm<C>>,
}

/// Outcome of checking d² = 0 on the generators.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiReport<C: Coeff> {
    /// (k, d²eᵏ) for every k with nonzero residual.
    pub residuals: Vec<(usize, KForm<C>)>,
}

impl<C: Coeff> JacobiReport<C> {
    pub fn passed(&self) -> bool {
        self.residuals.is_empty()
    }
}

impl<C: Coeff> fmt::Display for JacobiReport<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return f.write_str("d^2 = 0");
        }
        let parts: Vec<String> = self
            .residuals
            .iter()
            .map(|(k, r)| format!("{r} at k={k}"))
            .collect();
        f.write_str(&parts.join("; "))
    }
}

impl<C: Coeff> LieAlgebra<C> {
    /// Builds the algebra from de¹,…,deⁿ; with `check`, fails unless d² = 0.
    pub fn new(diffs: Vec<KForm<C>>, check: bool) -> Result<Self> {
        let n = diffs.len();
        for de in &diffs {
            if de.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: de.dim(),
                });
            }
            if de.degree() != 2 {
                return Err(Error::DegreeMismatch {
                    expected: 2,
                    found: de.degree(),
                });
            }
        }
        let alg = LieAlgebra { diffs };
        if check {
            let report = alg.jacobi_check()?;
            if !report.passed() {
                return Err(Error::Jacobi(report.to_string()));
            }
        }
        Ok(alg)
    }

    /// The abelian algebra of dimension n.
    pub fn abelian(n: usize) -> Self {
        LieAlgebra {
            diffs: vec![KForm::zero(n, 2); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.diffs.len()
    }

    pub fn diffs(&self) -> &[KForm<C>] {
        &self.diffs
    }

    /// deᵏ, 1-based.
    pub fn diff(&self, k: usize) -> &KForm<C> {
        &self.diffs[k - 1]
    }

    /// Chevalley–Eilenberg differential, extended from the generators as an
    /// anti-derivation.
    pub fn ce_d(&self, a: &KForm<C>) -> Result<KForm<C>> {
        let n = self.dim();
        if a.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: a.dim(),
            });
        }
        let mut out = KForm::zero(n, a.degree() + 1);
        for (blade, c) in a.terms() {
            for (p, i) in blade.indices().into_iter().enumerate() {
                let rest = blade.without(i);
                for (b2, c2) in self.diffs[i - 1].terms() {
                    // e^{I<p} ∧ deⁱ ∧ e^{I>p} = e^{rest} ∧ deⁱ; skip before
                    // multiplying so parametric coefficients never meet
                    let Some(sign) = rest.wedge_sign(*b2) else {
                        continue;
                    };
                    let mut term = c.try_mul(c2)?;
                    if (p % 2 == 1) != (sign < 0) {
                        term = term.neg();
                    }
                    out.push(rest.union(*b2), term)?;
                }
            }
        }
        Ok(out)
    }

    /// d²eᵏ for every k.
    pub fn jacobi_check(&self) -> Result<JacobiReport<C>> {
        let mut residuals = Vec::new();
        for (k, de) in self.diffs.iter().enumerate() {
            let r = self.ce_d(de)?;
            if !r.is_zero() {
                residuals.push((k + 1, r));
            }
        }
        Ok(JacobiReport { residuals })
    }

    /// The algebra 𝔥 ⊕_D ℝe_{n+1} with [e_{n+1}, U] = D(U):
    /// deᵏ gains Σⱼ D(j, k) e^{j,n+1} and de^{n+1} = 0.
    pub fn extend(&self, d: &SquareMatrix<C>) -> Result<LieAlgebra<C>> {
        let n = self.dim();
        if d.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: d.dim(),
            });
        }
        let mut diffs = Vec::with_capacity(n + 1);
        for k in 1..=n {
            let mut de = self.diff(k).lift(n + 1)?;
            for j in 1..=n {
                let t = KForm::monomial(n + 1, d.get(j, k).clone(), &[j, n + 1])?;
                de = de.try_add(&t)?;
            }
            diffs.push(de);
        }
        diffs.push(KForm::zero(n + 1, 2));
        Ok(LieAlgebra { diffs })
    }

    /// Inverse of [`extend`](Self::extend): reads (𝔥, D) off an algebra with
    /// deⁿ = 0, taking 𝔥 = span(e_1, …, e_{n−1}) with the induced equations.
    pub fn split_extension(&self) -> Result<(LieAlgebra<C>, SquareMatrix<C>)> {
        let n = self.dim();
        if n < 2 {
            return Err(Error::NotAnExtension("dimension below 2".into()));
        }
        if !self.diff(n).is_zero() {
            return Err(Error::NotAnExtension(format!(
                "de^{n} = {} is not zero",
                self.diff(n)
            )));
        }
        let mut d = SquareMatrix::zero(n - 1);
        for k in 1..n {
            let de = self.diff(k);
            for j in 1..n {
                d.set(j, k, de.coefficient(Blade::sorted(&[j, n])?));
            }
        }
        let diffs = self.diffs[..n - 1].iter().map(|f| f.restrict(n - 1)).collect();
        Ok((LieAlgebra { diffs }, d))
    }

    pub fn to_param(&self) -> LieAlgebra<ParamExpr> {
        LieAlgebra {
            diffs: self.diffs.iter().map(KForm::to_param).collect(),
        }
    }

    pub fn to_scalar(&self) -> Option<LieAlgebra<FieldElement>> {
        let diffs = self.diffs.iter().map(KForm::to_scalar).collect::<Option<_>>()?;
        Some(LieAlgebra { diffs })
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&KForm<C>) -> Result<KForm<D>>) -> Result<LieAlgebra<D>> {
        let diffs = self.diffs.iter().map(f).collect::<Result<_>>()?;
        Ok(LieAlgebra { diffs })
    }
}

impl<C: Coeff> fmt::Display for LieAlgebra<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.diffs.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl<C: Coeff> fmt::Debug for LieAlgebra<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// D is a derivation of `h` iff the extension by D satisfies d² = 0.
pub fn is_derivation<C: Coeff>(h: &LieAlgebra<C>, d: &SquareMatrix<C>) -> Result<JacobiReport<C>> {
    h.extend(d)?.jacobi_check()
}
