use std::fmt;

use crate::error::{Error, Result};
use crate::exterior::SquareMatrix;
use crate::scalars::{rat, FieldElement, NumberField};

/// Matrices for one lattice: φ_{t₀} = diag(λ^{exponents}) should satisfy
/// P·A = φ_{t₀}·P with A ∈ SL(6, ℤ).
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeData {
    pub name: &'static str,
    /// λ = e^{t₀}.
    pub t0_element: FieldElement,
    pub exponents: Vec<i64>,
    pub a: SquareMatrix<FieldElement>,
    pub p: SquareMatrix<FieldElement>,
}

fn golden_field() -> NumberField {
    NumberField::quadratic(5).expect("x^2-5 is irreducible")
}

/// (3+√5)/2.
pub fn golden_square() -> FieldElement {
    let f = golden_field();
    f.from_rational(rat(3, 2)) + f.generator().scale(&rat(1, 2))
}

fn int(n: i64) -> FieldElement {
    golden_field().from_rational(rat(n, 1))
}

fn block_diag(blocks: &[[[FieldElement; 2]; 2]]) -> SquareMatrix<FieldElement> {
    let n = 2 * blocks.len();
    let mut m = SquareMatrix::zero(n);
    for (b, blk) in blocks.iter().enumerate() {
        for i in 0..2 {
            for j in 0..2 {
                m.set(2 * b + i + 1, 2 * b + j + 1, blk[i][j].clone());
            }
        }
    }
    m
}

/// The two fixtures: 1 has exponents (1,1,−1,−1,0,0), 2 has
/// (1,−1,1,−1,1,−1).
pub fn lattice_fixture(example: u8) -> Option<LatticeData> {
    let f = golden_field();
    let half = |p: i64, q: i64| f.from_rational(rat(p, 2)) + f.generator().scale(&rat(q, 2));
    let hyperbolic = [[int(2), int(1)], [int(1), int(1)]];
    let identity = [[int(1), int(0)], [int(0), int(1)]];
    let conj = [[int(1), half(-1, 1)], [int(1), half(-1, -1)]];
    match example {
        1 => Some(LatticeData {
            name: "exponents (1,1,-1,-1,0,0)",
            t0_element: golden_square(),
            exponents: vec![1, 1, -1, -1, 0, 0],
            a: block_diag(&[hyperbolic.clone(), hyperbolic, identity.clone()]),
            p: block_diag(&[conj.clone(), conj, identity]),
        }),
        2 => Some(LatticeData {
            name: "exponents (1,-1,1,-1,1,-1)",
            t0_element: golden_square(),
            exponents: vec![1, -1, 1, -1, 1, -1],
            a: block_diag(&[hyperbolic.clone(), hyperbolic.clone(), hyperbolic]),
            p: block_diag(&[conj.clone(), conj.clone(), conj]),
        }),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeReport {
    pub checks: Vec<LatticeCheck>,
    /// When P·A ≠ φ·P: a row permutation of P that does conjugate, if any.
    pub diagnostic: Option<String>,
}

impl LatticeReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for LatticeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{}: {} ({})", c.name, if c.passed { "PASS" } else { "FAIL" }, c.detail)?;
        }
        if let Some(d) = &self.diagnostic {
            writeln!(f, "note: {d}")?;
        }
        Ok(())
    }
}

fn power(lambda: &FieldElement, e: i64) -> Result<FieldElement> {
    let mut out = FieldElement::one();
    for _ in 0..e.unsigned_abs() {
        out = if e > 0 { out.checked_mul(lambda)? } else { out.checked_div(lambda)? };
    }
    Ok(out)
}

/// x² − 3x + 1 at `x`.
fn golden_poly(x: &FieldElement) -> Result<FieldElement> {
    let three = FieldElement::from_int(3);
    x.checked_mul(x)?.checked_sub(&three.checked_mul(x)?)?.checked_add(&FieldElement::one())
}

fn mismatches(lhs: &SquareMatrix<FieldElement>, rhs: &SquareMatrix<FieldElement>) -> Vec<(usize, usize)> {
    let n = lhs.dim();
    (1..=n)
        .flat_map(|i| (1..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| lhs.get(i, j) != rhs.get(i, j))
        .collect()
}

fn permute_rows(p: &SquareMatrix<FieldElement>, perm: &[usize]) -> SquareMatrix<FieldElement> {
    let rows = p.rows();
    SquareMatrix::from_rows(perm.iter().map(|&i| rows[i].clone()).collect()).expect("square")
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Verifies the five identities exactly over ℚ(√5).
pub fn lattice_check(
    t0_element: &FieldElement,
    exponents: &[i64],
    a: &SquareMatrix<FieldElement>,
    p: &SquareMatrix<FieldElement>,
) -> Result<LatticeReport> {
    let n = a.dim();
    if p.dim() != n || exponents.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: p.dim().min(exponents.len()) });
    }
    let lambda = t0_element;
    let mut checks = Vec::new();

    // phi_t0 is diagonal with entries t0^exponent
    let is_root = golden_poly(lambda)?.is_zero() && !lambda.is_one();
    let diag: Vec<FieldElement> = exponents.iter().map(|&e| power(lambda, e)).collect::<Result<_>>()?;
    let inv = FieldElement::one().checked_div(lambda)?;
    let in_set = exponents.iter().all(|e| (-1..=1).contains(e))
        && diag.iter().all(|x| x == lambda || x == &inv || x.is_one());
    let phi = SquareMatrix::diagonal(diag.clone());
    checks.push(LatticeCheck {
        name: "phi_t0 diagonal",
        passed: is_root && in_set,
        detail: format!(
            "lambda = {lambda}, lambda^2-3*lambda+1 = {}, diag = ({})",
            golden_poly(lambda)?,
            diag.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
        ),
    });

    // P conjugates A to phi_t0
    let lhs = p.try_mul(a)?;
    let rhs = phi.try_mul(p)?;
    let bad = mismatches(&lhs, &rhs);
    checks.push(LatticeCheck {
        name: "PA = phi_t0 P",
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            "all entries agree".into()
        } else {
            let list: Vec<String> = bad
                .iter()
                .map(|&(i, j)| format!("({i},{j}): {} vs {}", lhs.get(i, j), rhs.get(i, j)))
                .collect();
            format!("{} entries differ: {}", bad.len(), list.join("; "))
        },
    });

    // P is invertible
    let det_p = p.det()?;
    checks.push(LatticeCheck {
        name: "det P != 0",
        passed: !det_p.is_zero(),
        detail: format!("det P = {det_p}"),
    });

    // A is unimodular and integral
    let det_a = a.det()?;
    let integral = a.rows().iter().flatten().all(|x| x.as_rational().is_some_and(|r| r.is_integer()));
    checks.push(LatticeCheck {
        name: "A in SL(n,Z)",
        passed: integral && det_a.is_one(),
        detail: format!("det A = {det_a}, integer entries: {integral}"),
    });

    // 2x2 blocks have char poly x^2-3x+1, or are the identity on zero exponents
    let mut ok = n % 2 == 0;
    let mut notes = Vec::new();
    let off_block = (1..=n)
        .flat_map(|i| (1..=n).map(move |j| (i, j)))
        .any(|(i, j)| (i - 1) / 2 != (j - 1) / 2 && !a.get(i, j).is_zero());
    if off_block {
        ok = false;
        notes.push("A is not block diagonal".to_string());
    }
    for b in 0..n / 2 {
        let (i, j) = (2 * b + 1, 2 * b + 2);
        let block = SquareMatrix::from_rows(vec![
            vec![a.get(i, i).clone(), a.get(i, j).clone()],
            vec![a.get(j, i).clone(), a.get(j, j).clone()],
        ])?;
        if block == SquareMatrix::identity(2) {
            let trivial = exponents[i - 1] == 0 && exponents[j - 1] == 0;
            ok &= trivial;
            notes.push(format!("block {}: identity", b + 1));
            continue;
        }
        let tr = block.trace()?;
        let det = block.det()?;
        let char_ok = tr == FieldElement::from_int(3) && det.is_one();
        let roots_ok = golden_poly(lambda)?.is_zero() && golden_poly(&inv)?.is_zero();
        ok &= char_ok && roots_ok;
        notes.push(format!("block {}: x^2-({tr})*x+({det})", b + 1));
    }
    checks.push(LatticeCheck {
        name: "blocks have char poly x^2-3x+1",
        passed: ok,
        detail: notes.join(", "),
    });

    let diagnostic = if bad.is_empty() {
        None
    } else {
        let mut perm: Vec<usize> = (0..n).collect();
        let mut found = None;
        loop {
            let q = permute_rows(p, &perm);
            if q.try_mul(a)? == phi.try_mul(&q)? {
                found = Some(perm.clone());
                break;
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        Some(match found {
            Some(perm) => format!(
                "reordering the rows of P as ({}) gives PA = phi_t0 P",
                perm.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
            ),
            None => "no row permutation of P conjugates A to phi_t0".into(),
        })
    };
    Ok(LatticeReport { checks, diagnostic })
}

/// Runs [`lattice_check`] on a fixture.
pub fn check_fixture(data: &LatticeData) -> Result<LatticeReport> {
    lattice_check(&data.t0_element, &data.exponents, &data.a, &data.p)
}
