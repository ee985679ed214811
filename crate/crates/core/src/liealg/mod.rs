//! Lie algebras through their structure equations.

mod algebra;
mod template;

pub use algebra::{is_derivation, JacobiReport, LieAlgebra};
pub use template::{canonical_j, canonical_omega_matrix, split_parameters, DerivationTemplate, Shape};

use crate::error::{Error, Result};
use crate::scalars::{solve_homogeneous, FieldElement, SolutionSpace};

/// Solves for the members of `template` that are derivations of `h`.
///
/// Every coefficient of d²eᵏ on the parametric extension is linear in the
/// parameters; a nonzero constant part means `h` itself fails Jacobi and is
/// reported as [`Error::LinearityViolated`].
pub fn solve_derivations(h: &LieAlgebra<FieldElement>, template: &DerivationTemplate) -> Result<SolutionSpace> {
    if template.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: template.dim(),
        });
    }
    let ext = h.to_param().extend(&template.matrix)?;
    let mut rows = Vec::new();
    for (k, residual) in ext.jacobi_check()?.residuals {
        for c in residual.terms().values() {
            if !c.constant_part().is_zero() {
                return Err(Error::LinearityViolated {
                    k,
                    coefficient: c.to_string(),
                });
            }
            rows.push(c.clone());
        }
    }
    solve_homogeneous(&rows, &template.parameters)
}
