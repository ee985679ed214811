use std::collections::BTreeMap;
use std::fmt;

use super::blade::{Blade, MAX_DIM};
use super::matrix::SquareMatrix;
use crate::error::{Error, Result};
use crate::scalars::{Coeff, FieldElement, Param, ParamExpr};

/// A homogeneous k-form on an n-dimensional space with coframe e¹,…,eⁿ.
///
/// Terms with zero coefficient are never stored.
#[derive(Clone, PartialEq)]
pub struct KForm<C> {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Blade, C>,
}

fn sign_scale<C: Coeff>(c: &C, sign: i8) -> C {
    if sign < 0 {
        c.neg()
    } else {
        c.clone()
    }
}

impl<C: Coeff> KForm<C> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        KForm {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The 0-form `c`.
    pub fn constant(dim: usize, c: C) -> Self {
        let mut f = Self::zero(dim, 0);
        f.push(Blade::EMPTY, c).expect("same field");
        f
    }

    /// e^{i₁…i_k}; indices may come in any order and the sign is adjusted.
    pub fn basis(dim: usize, indices: &[usize]) -> Result<Self> {
        Self::monomial(dim, C::one(), indices)
    }

    pub fn monomial(dim: usize, c: C, indices: &[usize]) -> Result<Self> {
        let (b, sign) = Blade::from_unsorted(indices)?;
        if let Some(&i) = indices.iter().find(|&&i| i > dim) {
            return Err(Error::IndexOutOfRange { index: i, dim });
        }
        let mut f = Self::zero(dim, indices.len());
        f.push(b, sign_scale(&c, sign))?;
        Ok(f)
    }

    /// Builds a form from (blade, coefficient) pairs; repeated blades add up.
    pub fn from_terms(dim: usize, degree: usize, terms: impl IntoIterator<Item = (Blade, C)>) -> Result<Self> {
        let mut f = Self::zero(dim, degree);
        for (b, c) in terms {
            if b.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: b.degree(),
                });
            }
            if !b.fits(dim) {
                return Err(Error::IndexOutOfRange {
                    index: b.max_index(),
                    dim,
                });
            }
            f.push(b, c)?;
        }
        Ok(f)
    }

    /// Adds `c·e^b` in place.
    pub(crate) fn push(&mut self, b: Blade, c: C) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(&b) {
            Some(x) => {
                let s = x.try_add(&c)?;
                if s.is_zero() {
                    self.terms.remove(&b);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(b, c);
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Blade, C> {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, b: Blade) -> C {
        self.terms.get(&b).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient of e^{indices} (indices in any order, sign adjusted).
    pub fn coefficient_of(&self, indices: &[usize]) -> Result<C> {
        let (b, sign) = Blade::from_unsorted(indices)?;
        Ok(sign_scale(&self.coefficient(b), sign))
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.push(*b, c.clone())?;
        }
        Ok(out)
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

    /// Multiplies every coefficient by `c`.
    pub fn mul_coeff(&self, c: &C) -> Result<Self> {
        self.try_map(|x| x.try_mul(c))
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> KForm<D> {
        self.try_map(|c| Ok(f(c))).expect("infallible map")
    }

    pub fn try_map<D: Coeff>(&self, f: impl Fn(&C) -> Result<D>) -> Result<KForm<D>> {
        let mut out = KForm::zero(self.dim, self.degree);
        for (b, c) in &self.terms {
            out.push(*b, f(c)?)?;
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some(sign) = a.wedge_sign(*b) {
                    out.push(a.union(*b), sign_scale(&x.try_mul(y)?, sign))?;
                }
            }
        }
        Ok(out)
    }

    /// Interior product ι_{e_i}.
    pub fn contract(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.dim {
            return Err(Error::IndexOutOfRange { index: i, dim: self.dim });
        }
        if self.degree == 0 {
            return Ok(Self::zero(self.dim, 0));
        }
        let mut out = Self::zero(self.dim, self.degree - 1);
        for (b, c) in &self.terms {
            if b.contains(i) {
                let sign = if b.count_below(i) % 2 == 0 { 1 } else { -1 };
                out.push(b.without(i), sign_scale(c, sign))?;
            }
        }
        Ok(out)
    }

    /// Hodge star for the orthonormal coframe, oriented by e^{1…n}.
    pub fn hodge_star(&self) -> Result<Self> {
        let mut out = Self::zero(self.dim, self.dim - self.degree.min(self.dim));
        for (b, c) in &self.terms {
            let comp = b.complement(self.dim);
            let sign = b.wedge_sign(comp).expect("complement is disjoint");
            out.push(comp, sign_scale(c, sign))?;
        }
        Ok(out)
    }

    /// Pullback to span(e_1, …, e_m): drops every term with an index above m.
    pub fn restrict(&self, m: usize) -> Self {
        let mut out = Self::zero(m.min(self.dim), self.degree);
        for (b, c) in &self.terms {
            if b.fits(m) {
                out.terms.insert(*b, c.clone());
            }
        }
        out
    }

    /// The same form regarded in dimension `n ≥ dim`.
    pub fn lift(&self, n: usize) -> Result<Self> {
        if n < self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: n,
            });
        }
        Ok(KForm {
            dim: n,
            degree: self.degree,
            terms: self.terms.clone(),
        })
    }

    /// The derivation action (D·α)(x₁,…,x_k) = Σ α(x₁,…,D xᵢ,…,x_k).
    ///
    /// On 1-forms D·eⁱ = Σⱼ D(j, i) eʲ.
    pub fn matrix_action(&self, d: &SquareMatrix<C>) -> Result<Self> {
        if d.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: d.dim(),
            });
        }
        let mut out = Self::zero(self.dim, self.degree);
        for (b, c) in &self.terms {
            for (p, i) in b.indices().into_iter().enumerate() {
                let rest = b.without(i);
                for j in 1..=self.dim {
                    let entry = d.get(j, i);
                    if entry.is_zero() || rest.contains(j) {
                        continue;
                    }
                    // e^{I<p} ∧ e^j ∧ e^{I>p} = (−1)^p e^j ∧ e^{rest}
                    let flips = p + rest.count_below(j);
                    let sign = if flips % 2 == 0 { 1 } else { -1 };
                    out.push(rest.union(Blade::single(j)), sign_scale(&c.try_mul(entry)?, sign))?;
                }
            }
        }
        Ok(out)
    }

    pub fn to_param(&self) -> KForm<ParamExpr> {
        self.map(Coeff::to_param_expr)
    }

    pub fn to_scalar(&self) -> Option<KForm<FieldElement>> {
        let mut out = KForm::zero(self.dim, self.degree);
        for (b, c) in &self.terms {
            out.terms.insert(*b, c.as_scalar()?);
        }
        Some(out)
    }

    /// The coefficient of the top monomial e^{1…n} (zero for other degrees).
    pub fn top_coefficient(&self) -> C {
        if self.degree != self.dim {
            return C::zero();
        }
        self.coefficient(Blade::EMPTY.complement(self.dim))
    }
}

impl KForm<ParamExpr> {
    pub fn eval(&self, values: &BTreeMap<Param, FieldElement>) -> Result<KForm<FieldElement>> {
        self.try_map(|c| c.eval(values))
    }

    pub fn substitute(&self, values: &BTreeMap<Param, ParamExpr>) -> Result<Self> {
        self.try_map(|c| c.substitute(values))
    }
}

/// The volume form e^{1…n}.
pub fn volume<C: Coeff>(n: usize) -> KForm<C> {
    let mut f = KForm::zero(n, n);
    f.terms.insert(Blade::EMPTY.complement(n), C::one());
    f
}

fn write_term<C: Coeff>(out: &mut String, b: Blade, c: &C) {
    let body = if b.degree() == 0 {
        c.to_string()
    } else if c.is_compound() {
        format!("({c})*{b}")
    } else {
        let s = c.to_string();
        match s.as_str() {
            "1" => b.to_string(),
            "-1" => format!("-{b}"),
            _ => format!("{s}*{b}"),
        }
    };
    if !out.is_empty() && !body.starts_with('-') {
        out.push('+');
    }
    out.push_str(&body);
}

impl<C: Coeff> fmt::Display for KForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (b, c) in &self.terms {
            write_term(&mut out, *b, c);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl<C: Coeff> fmt::Debug for KForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (n={}, k={})", self, self.dim, self.degree)
    }
}
