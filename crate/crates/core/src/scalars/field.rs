//! Simple algebraic extensions ℚ(α) = ℚ[x]/(m(x)).
//!
//! Elements are stored in the power basis 1, α, …, α^{d−1} with reduced
//! [`BigRational`] coefficients. An element of plain ℚ (any degree-one field)
//! is accepted wherever an element of a larger field is expected and is
//! promoted through the canonical embedding; two different proper extensions
//! never mix.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for the rational `num/den`.
///
/// # Panics
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// A number field ℚ(α), α a root of a monic polynomial.
///
/// Cloning is cheap; all clones share the same polynomial.
#[derive(Clone)]
pub struct NumberField(Arc<FieldData>);

struct FieldData {
    generator: String,
    /// Coefficients from the constant term upwards; the last one is 1.
    min_poly: Vec<Rational>,
}

impl NumberField {
    /// Builds ℚ[x]/(m) with the generator printed as `a`.
    ///
    /// `min_poly` lists coefficients from the constant term upwards. The
    /// polynomial must be monic of degree at least one. Irreducibility is the
    /// caller's responsibility; it is verified (by the rational root test)
    /// only for degrees two and three.
    pub fn new(min_poly: Vec<Rational>) -> Result<Self> {
        Self::with_generator("a", min_poly)
    }

    pub fn with_generator(generator: &str, mut min_poly: Vec<Rational>) -> Result<Self> {
        trim(&mut min_poly);
        if min_poly.len() < 2 {
            return Err(Error::DegreeZero);
        }
        if !min_poly.last().is_some_and(One::is_one) {
            return Err(Error::NotMonic);
        }
        let degree = min_poly.len() - 1;
        if (2..=3).contains(&degree) {
            if let Some(root) = rational_root(&min_poly) {
                return Err(Error::Reducible {
                    poly: poly_to_string(&min_poly, "x"),
                    root: root.to_string(),
                });
            }
        }
        Ok(NumberField(Arc::new(FieldData {
            generator: generator.to_string(),
            min_poly,
        })))
    }

    /// The field of rationals, `x − 0`.
    pub fn rationals() -> Self {
        static Q: OnceLock<NumberField> = OnceLock::new();
        Q.get_or_init(|| {
            NumberField(Arc::new(FieldData {
                generator: "a".to_string(),
                min_poly: vec![Rational::zero(), Rational::one()],
            }))
        })
        .clone()
    }

    /// ℚ(√d), via `x² − d`.
    pub fn quadratic(d: i64) -> Result<Self> {
        Self::new(vec![rat(-d, 1), Rational::zero(), Rational::one()])
    }

    pub fn degree(&self) -> usize {
        self.0.min_poly.len() - 1
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }

    pub fn min_poly(&self) -> &[Rational] {
        &self.0.min_poly
    }

    pub fn generator_name(&self) -> &str {
        &self.0.generator
    }

    /// The minimal polynomial written in the variable `x`, e.g. `x^2-5`.
    pub fn min_poly_string(&self) -> String {
        poly_to_string(&self.0.min_poly, "x")
    }

    pub fn zero(&self) -> FieldElement {
        self.element(Vec::new())
    }

    pub fn one(&self) -> FieldElement {
        self.element(vec![Rational::one()])
    }

    /// The class of `x`.
    pub fn generator(&self) -> FieldElement {
        self.element(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_rational(&self, r: Rational) -> FieldElement {
        self.element(vec![r])
    }

    /// The element Σ coeffs[i]·αⁱ, reduced modulo the minimal polynomial.
    pub fn element(&self, coeffs: Vec<Rational>) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: self.reduce(coeffs),
        }
    }

    fn reduce(&self, mut p: Vec<Rational>) -> Vec<Rational> {
        let m = &self.0.min_poly;
        let d = self.degree();
        while p.len() > d {
            let top = p.pop().expect("length checked");
            if top.is_zero() {
                continue;
            }
            // x^k = x^{k-d} x^d ≡ −x^{k-d} Σ_{i<d} m_i x^i
            let shift = p.len() - d;
            for (i, mi) in m.iter().take(d).enumerate() {
                p[shift + i] -= &top * mi;
            }
        }
        p.resize(d, Rational::zero());
        p
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.is_rationals() && other.is_rationals())
            || self.0.min_poly == other.0.min_poly
    }
}

impl Eq for NumberField {}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[x]/({})", self.min_poly_string())
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// An element of a [`NumberField`].
#[derive(Clone)]
pub struct FieldElement {
    field: NumberField,
    coeffs: Vec<Rational>,
}

impl FieldElement {
    /// Rational zero; promotes into any field.
    pub fn zero() -> Self {
        NumberField::rationals().zero()
    }

    pub fn one() -> Self {
        NumberField::rationals().one()
    }

    pub fn from_rational(r: Rational) -> Self {
        NumberField::rationals().from_rational(r)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n, 1))
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    /// Power-basis coordinates, exactly `degree` of them.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// `Some(r)` when the element lies in ℚ.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Number of nonzero power-basis coordinates.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    fn common_field(&self, other: &Self) -> Result<NumberField> {
        if self.field == other.field {
            Ok(if self.field.is_rationals() {
                other.field.clone()
            } else {
                self.field.clone()
            })
        } else if self.field.is_rationals() {
            Ok(other.field.clone())
        } else if other.field.is_rationals() {
            Ok(self.field.clone())
        } else {
            Err(Error::FieldMismatch(
                self.field.min_poly_string(),
                other.field.min_poly_string(),
            ))
        }
    }

    fn coords_in(&self, field: &NumberField) -> Vec<Rational> {
        let mut c = self.coeffs.clone();
        c.resize(field.degree(), Rational::zero());
        c
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let f = self.common_field(other)?;
        let b = other.coords_in(&f);
        let coeffs = self
            .coords_in(&f)
            .into_iter()
            .zip(b)
            .map(|(x, y)| x + y)
            .collect();
        Ok(FieldElement { field: f, coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let f = self.common_field(other)?;
        let a = self.coords_in(&f);
        let b = other.coords_in(&f);
        let mut prod = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        Ok(f.element(prod))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inv()?)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against
    /// the minimal polynomial.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut a = self.coeffs.clone();
        trim(&mut a);
        let (g, s) = ext_gcd(a, self.field.min_poly().to_vec());
        if g.len() != 1 {
            // only possible when the declared polynomial was reducible
            return Err(Error::DivisionByZero);
        }
        let scale = g[0].recip();
        let s: Vec<Rational> = s.into_iter().map(|c| c * &scale).collect();
        Ok(self.field.element(s))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, exp: i32) -> Result<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.field.one();
        for _ in 0..exp.unsigned_abs() {
            acc = acc.checked_mul(&base)?;
        }
        Ok(acc)
    }

    /// The element re-expressed in `field` (a no-op for its own field).
    pub fn promote(&self, field: &NumberField) -> Result<Self> {
        if &self.field == field || self.field.is_rationals() {
            if field.degree() >= self.coeffs.len() {
                return Ok(FieldElement {
                    field: field.clone(),
                    coeffs: self.coords_in(field),
                });
            }
        }
        Err(Error::FieldMismatch(
            self.field.min_poly_string(),
            field.min_poly_string(),
        ))
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        match self.common_field(other) {
            Ok(f) => self.coords_in(&f) == other.coords_in(&f),
            Err(_) => false,
        }
    }
}

impl Eq for FieldElement {}

impl From<Rational> for FieldElement {
    fn from(r: Rational) -> Self {
        FieldElement::from_rational(r)
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::from_int(n)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.field.generator_name();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = if i == 0 {
                c.to_string()
            } else if c.is_one() {
                format!("{g}^{i}")
            } else if (-c).is_one() {
                format!("-{g}^{i}")
            } else {
                format!("{c}*{g}^{i}")
            };
            if !first && !body.starts_with('-') {
                f.write_str("+")?;
            }
            f.write_str(&body)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

// The operator forms panic on mixed fields; use the `checked_*` methods
// where that can happen.
macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field elements from different fields")
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Quotient and remainder of polynomial division over ℚ.
fn divrem(mut num: Vec<Rational>, den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    trim(&mut num);
    let lead = den.last().expect("nonzero divisor").clone();
    if num.len() < den.len() {
        return (Vec::new(), num);
    }
    let mut quot = vec![Rational::zero(); num.len() - den.len() + 1];
    while num.len() >= den.len() && !num.is_empty() {
        let shift = num.len() - den.len();
        let c = num.last().expect("nonempty") / &lead;
        for (i, d) in den.iter().enumerate() {
            num[shift + i] -= &c * d;
        }
        quot[shift] = c;
        num.pop();
        trim(&mut num);
    }
    (quot, num)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out: Vec<Rational> = (0..n)
        .map(|i| {
            a.get(i).cloned().unwrap_or_else(Rational::zero)
                - b.get(i).cloned().unwrap_or_else(Rational::zero)
        })
        .collect();
    trim(&mut out);
    out
}

/// Returns (g, s) with g = gcd(a, m) and s·a ≡ g (mod m).
fn ext_gcd(a: Vec<Rational>, m: Vec<Rational>) -> (Vec<Rational>, Vec<Rational>) {
    let (mut r0, mut r1) = (a, m);
    let (mut s0, mut s1) = (vec![Rational::one()], Vec::new());
    trim(&mut r1);
    while !r1.is_empty() {
        let (q, r) = divrem(r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

fn poly_to_string(p: &[Rational], var: &str) -> String {
    let mut out = String::new();
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let sign = if c.is_negative() { "-" } else if out.is_empty() { "" } else { "+" };
        let body = match i {
            0 => mag.to_string(),
            _ => {
                let mono = if i == 1 { var.to_string() } else { format!("{var}^{i}") };
                if mag.is_one() {
                    mono
                } else {
                    format!("{mag}*{mono}")
                }
            }
        };
        out.push_str(sign);
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= n {
        if n.is_multiple_of(&i) {
            out.push(i.clone());
            let j = &n / &i;
            if j != i {
                out.push(j);
            }
        }
        i += 1;
    }
    out
}

/// A rational root of `p` if one exists.
fn rational_root(p: &[Rational]) -> Option<Rational> {
    if p[0].is_zero() {
        return Some(Rational::zero());
    }
    let lcm = p
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let eval = |x: &Rational| {
        ints.iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
    };
    for num in divisors(&ints[0]) {
        for den in divisors(ints.last().expect("nonempty")) {
            for cand in [
                Rational::new(num.clone(), den.clone()),
                -Rational::new(num.clone(), den.clone()),
            ] {
                if eval(&cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}
