use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::field::{FieldElement, Rational};
use crate::error::{Error, Result};

/// Name of a free parameter, e.g. `a13`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Param(Arc<str>);

impl Param {
    pub fn new(name: &str) -> Self {
        Param(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Param {
    fn from(s: &str) -> Self {
        Param::new(s)
    }
}

/// An affine expression `c + Σ cᵢ·pᵢ` in named parameters.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq)]
pub struct ParamExpr {
    constant: FieldElement,
    terms: BTreeMap<Param, FieldElement>,
}

impl ParamExpr {
    pub fn zero() -> Self {
        Self::constant(FieldElement::zero())
    }

    pub fn one() -> Self {
        Self::constant(FieldElement::one())
    }

    pub fn constant(c: FieldElement) -> Self {
        ParamExpr {
            constant: c,
            terms: BTreeMap::new(),
        }
    }

    /// The expression consisting of the single parameter `name`.
    pub fn param(name: &str) -> Self {
        Self::term(Param::new(name), FieldElement::one())
    }

    pub fn term(p: Param, c: FieldElement) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(p, c);
        }
        ParamExpr {
            constant: FieldElement::zero(),
            terms,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.constant.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_part(&self) -> &FieldElement {
        &self.constant
    }

    pub fn terms(&self) -> &BTreeMap<Param, FieldElement> {
        &self.terms
    }

    pub fn coefficient(&self, p: &Param) -> FieldElement {
        self.terms.get(p).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn params(&self) -> impl Iterator<Item = &Param> {
        self.terms.keys()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.constant = out.constant.checked_add(&other.constant)?;
        for (p, c) in &other.terms {
            let sum = match out.terms.get(p) {
                Some(x) => x.checked_add(c)?,
                None => c.clone(),
            };
            if sum.is_zero() {
                out.terms.remove(p);
            } else {
                out.terms.insert(p.clone(), sum);
            }
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ParamExpr {
            constant: -&self.constant,
            terms: self.terms.iter().map(|(p, c)| (p.clone(), -c)).collect(),
        }
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &FieldElement) -> Result<Self> {
        if s.is_zero() {
            return Ok(Self::zero());
        }
        let mut terms = BTreeMap::new();
        for (p, c) in &self.terms {
            terms.insert(p.clone(), c.checked_mul(s)?);
        }
        Ok(ParamExpr {
            constant: self.constant.checked_mul(s)?,
            terms,
        })
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        ParamExpr {
            constant: self.constant.scale(r),
            terms: self.terms.iter().map(|(p, c)| (p.clone(), c.scale(r))).collect(),
        }
    }

    /// Product; fails unless one factor is constant.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if other.is_constant() {
            self.scale(&other.constant)
        } else if self.is_constant() {
            other.scale(&self.constant)
        } else {
            Err(Error::NonlinearProduct(self.to_string(), other.to_string()))
        }
    }

    /// Evaluates with every parameter assigned.
    pub fn eval(&self, values: &BTreeMap<Param, FieldElement>) -> Result<FieldElement> {
        let mut acc = self.constant.clone();
        for (p, c) in &self.terms {
            let v = values
                .get(p)
                .ok_or_else(|| Error::UnknownParameter(p.to_string()))?;
            acc = acc.checked_add(&c.checked_mul(v)?)?;
        }
        Ok(acc)
    }

    /// Replaces the parameters found in `values` by expressions; other
    /// parameters are kept.
    pub fn substitute(&self, values: &BTreeMap<Param, ParamExpr>) -> Result<Self> {
        let mut acc = Self::constant(self.constant.clone());
        for (p, c) in &self.terms {
            let piece = match values.get(p) {
                Some(e) => e.scale(c)?,
                None => Self::term(p.clone(), c.clone()),
            };
            acc = acc.checked_add(&piece)?;
        }
        Ok(acc)
    }

    /// True when the expression needs parentheses as a factor.
    pub fn is_compound(&self) -> bool {
        let pieces = self.terms.len() + usize::from(!self.constant.is_zero());
        pieces > 1
            || (self.terms.is_empty() && self.constant.term_count() > 1)
            || self.terms.values().any(|c| c.term_count() > 1)
    }
}

impl From<FieldElement> for ParamExpr {
    fn from(c: FieldElement) -> Self {
        ParamExpr::constant(c)
    }
}

impl fmt::Display for ParamExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        if !self.constant.is_zero() {
            out.push_str(&self.constant.to_string());
        }
        for (p, c) in &self.terms {
            let body = if c.is_one() {
                p.to_string()
            } else if (-c).is_one() {
                format!("-{p}")
            } else if c.term_count() > 1 {
                format!("({c})*{p}")
            } else {
                format!("{c}*{p}")
            };
            if !out.is_empty() && !body.starts_with('-') {
                out.push('+');
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for ParamExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
