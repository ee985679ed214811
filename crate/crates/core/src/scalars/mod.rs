//! Exact scalars: number fields, affine parametric expressions and a linear
//! solver over them.

mod field;
mod linear;
mod param;

use std::fmt;

pub use field::{rat, FieldElement, NumberField, Rational};
pub use linear::{rank, rref, solve_affine, solve_homogeneous, SolutionSpace};
pub use param::{Param, ParamExpr};

use crate::error::Result;

/// Coefficient ring of forms and matrices.
///
/// Implemented by [`FieldElement`] (plain numbers) and [`ParamExpr`]
/// (affine in named parameters). Fallible operations surface field
/// mismatches and, for `ParamExpr`, non-affine products.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn try_add(&self, other: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
    fn try_mul(&self, other: &Self) -> Result<Self>;
    fn from_scalar(s: FieldElement) -> Self;
    fn scale(&self, s: &FieldElement) -> Result<Self>;
    fn to_param_expr(&self) -> ParamExpr;
    /// The value if it does not depend on any parameter.
    fn as_scalar(&self) -> Option<FieldElement>;
    /// Whether printing as a factor needs parentheses.
    fn is_compound(&self) -> bool;

    fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }
}

impl Coeff for FieldElement {
    fn zero() -> Self {
        FieldElement::zero()
    }
    fn one() -> Self {
        FieldElement::one()
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn try_add(&self, other: &Self) -> Result<Self> {
        self.checked_add(other)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn try_mul(&self, other: &Self) -> Result<Self> {
        self.checked_mul(other)
    }
    fn from_scalar(s: FieldElement) -> Self {
        s
    }
    fn scale(&self, s: &FieldElement) -> Result<Self> {
        self.checked_mul(s)
    }
    fn to_param_expr(&self) -> ParamExpr {
        ParamExpr::constant(self.clone())
    }
    fn as_scalar(&self) -> Option<FieldElement> {
        Some(self.clone())
    }
    fn is_compound(&self) -> bool {
        self.term_count() > 1
    }
}

impl Coeff for ParamExpr {
    fn zero() -> Self {
        ParamExpr::zero()
    }
    fn one() -> Self {
        ParamExpr::one()
    }
    fn is_zero(&self) -> bool {
        ParamExpr::is_zero(self)
    }
    fn try_add(&self, other: &Self) -> Result<Self> {
        self.checked_add(other)
    }
    fn neg(&self) -> Self {
        ParamExpr::neg(self)
    }
    fn try_mul(&self, other: &Self) -> Result<Self> {
        self.checked_mul(other)
    }
    fn from_scalar(s: FieldElement) -> Self {
        ParamExpr::constant(s)
    }
    fn scale(&self, s: &FieldElement) -> Result<Self> {
        ParamExpr::scale(self, s)
    }
    fn to_param_expr(&self) -> ParamExpr {
        self.clone()
    }
    fn as_scalar(&self) -> Option<FieldElement> {
        self.is_constant().then(|| self.constant_part().clone())
    }
    fn is_compound(&self) -> bool {
        ParamExpr::is_compound(self)
    }
}
