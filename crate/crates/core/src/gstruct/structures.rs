use crate::error::{Error, Result};
use crate::exterior::{volume, KForm};
use crate::liealg::LieAlgebra;
use crate::scalars::{rat, Coeff, FieldElement};

pub type Form = KForm<FieldElement>;

/// e^{i₁…i_k} in dimension n with coefficient ±1.
pub(crate) fn mono(n: usize, sign: i64, idx: &[usize]) -> Form {
    KForm::monomial(n, FieldElement::from_int(sign), idx).expect("valid monomial")
}

pub(crate) fn sum(n: usize, k: usize, parts: &[Form]) -> Form {
    parts
        .iter()
        .fold(KForm::zero(n, k), |acc, p| acc.try_add(p).expect("same space"))
}

/// Converts numeric coefficients into any coefficient ring.
pub fn embed<C: Coeff>(f: &Form) -> KForm<C> {
    f.map(|c| C::from_scalar(c.clone()))
}

pub fn embed_algebra<C: Coeff>(h: &LieAlgebra<FieldElement>) -> LieAlgebra<C> {
    h.map(|f| Ok(embed(f))).expect("embedding is infallible")
}

/// The k-th wedge power.
pub fn wedge_power<C: Coeff>(a: &KForm<C>, k: usize) -> Result<KForm<C>> {
    let mut acc = KForm::constant(a.dim(), C::one());
    for _ in 0..k {
        acc = acc.wedge(a)?;
    }
    Ok(acc)
}

/// An SU(3)-structure (ω, ψ₊, ψ₋) on a 6-dimensional space.
#[derive(Clone, Debug, PartialEq)]
pub struct SU3Structure {
    omega: Form,
    psi_plus: Form,
    psi_minus: Form,
}

impl SU3Structure {
    /// Checks ω∧ψ± = 0 and ψ₊∧ψ₋ = (2/3)ω³ ≠ 0.
    pub fn new(omega: Form, psi_plus: Form, psi_minus: Form) -> Result<Self> {
        for (f, k, name) in [(&omega, 2, "omega"), (&psi_plus, 3, "psi_plus"), (&psi_minus, 3, "psi_minus")] {
            if f.dim() != 6 {
                return Err(Error::DimensionMismatch { expected: 6, found: f.dim() });
            }
            if f.degree() != k {
                return Err(Error::Precondition(format!("{name} must have degree {k}")));
            }
        }
        if !omega.wedge(&psi_plus)?.is_zero() {
            return Err(Error::Precondition("omega ^ psi_plus != 0".into()));
        }
        if !omega.wedge(&psi_minus)?.is_zero() {
            return Err(Error::Precondition("omega ^ psi_minus != 0".into()));
        }
        let w3 = wedge_power(&omega, 3)?;
        if w3.is_zero() {
            return Err(Error::Degenerate("omega^3 = 0".into()));
        }
        let lhs = psi_plus.wedge(&psi_minus)?;
        if lhs != w3.scale(&FieldElement::from_rational(rat(2, 3)))? {
            return Err(Error::Precondition(format!(
                "psi_plus ^ psi_minus = {lhs} is not (2/3) omega^3"
            )));
        }
        Ok(SU3Structure { omega, psi_plus, psi_minus })
    }

    pub fn omega(&self) -> &Form {
        &self.omega
    }

    pub fn psi_plus(&self) -> &Form {
        &self.psi_plus
    }

    pub fn psi_minus(&self) -> &Form {
        &self.psi_minus
    }

    pub fn is_canonical(&self) -> bool {
        self == &canonical_su3()
    }
}

/// ω = e^{12}+e^{34}+e^{56}, ψ₊ = e^{135}−e^{146}−e^{236}−e^{245},
/// ψ₋ = e^{136}+e^{145}+e^{235}−e^{246}.
pub fn canonical_su3() -> SU3Structure {
    let omega = sum(6, 2, &[mono(6, 1, &[1, 2]), mono(6, 1, &[3, 4]), mono(6, 1, &[5, 6])]);
    let psi_plus = sum(
        6,
        3,
        &[mono(6, 1, &[1, 3, 5]), mono(6, -1, &[1, 4, 6]), mono(6, -1, &[2, 3, 6]), mono(6, -1, &[2, 4, 5])],
    );
    let psi_minus = sum(
        6,
        3,
        &[mono(6, 1, &[1, 3, 6]), mono(6, 1, &[1, 4, 5]), mono(6, 1, &[2, 3, 5]), mono(6, -1, &[2, 4, 6])],
    );
    SU3Structure { omega, psi_plus, psi_minus }
}

/// A G₂-structure with its cached 4-form *φ.
#[derive(Clone, Debug, PartialEq)]
pub struct G2Structure {
    phi: Form,
    star_phi: Form,
}

impl G2Structure {
    pub fn new(phi: Form) -> Result<Self> {
        if phi.dim() != 7 {
            return Err(Error::DimensionMismatch { expected: 7, found: phi.dim() });
        }
        if phi.degree() != 3 {
            return Err(Error::DegreeMismatch { expected: 3, found: phi.degree() });
        }
        let star_phi = phi.hodge_star()?;
        Ok(G2Structure { phi, star_phi })
    }

    pub fn phi(&self) -> &Form {
        &self.phi
    }

    pub fn star_phi(&self) -> &Form {
        &self.star_phi
    }
}

fn e7() -> Form {
    mono(7, 1, &[7])
}

/// ω∧e⁷ + ψ₊ for an SU(3)-structure on the first six coordinates.
pub fn closed_candidate(s: &SU3Structure) -> Result<G2Structure> {
    let w = s.omega.lift(7)?.wedge(&e7())?;
    G2Structure::new(w.try_add(&s.psi_plus.lift(7)?)?)
}

/// ω∧e⁷ − ψ₋.
pub fn coclosed_candidate(s: &SU3Structure) -> Result<G2Structure> {
    let w = s.omega.lift(7)?.wedge(&e7())?;
    G2Structure::new(w.try_sub(&s.psi_minus.lift(7)?)?)
}

pub fn canonical_g2_closed_candidate() -> G2Structure {
    closed_candidate(&canonical_su3()).expect("canonical data")
}

/// ω∧e⁷ − ψ₋; its star is ½ω² + ψ₊∧e⁷ (checked).
pub fn canonical_g2_coclosed_candidate() -> G2Structure {
    let s = canonical_su3();
    let g = coclosed_candidate(&s).expect("canonical data");
    let w2 = wedge_power(&s.omega.lift(7).expect("lift"), 2).expect("wedge");
    let expect = w2
        .scale(&FieldElement::from_rational(rat(1, 2)))
        .and_then(|h| h.try_add(&s.psi_plus.lift(7)?.wedge(&e7())?))
        .expect("canonical data");
    assert_eq!(g.star_phi, expect, "*phi of the coclosed candidate");
    g
}

/// The two SU(3) classes with the raw differentials.
#[derive(Clone, Debug, PartialEq)]
pub struct Su3Class<C: Coeff> {
    pub half_flat: bool,
    pub symplectic_half_flat: bool,
    pub d_omega: KForm<C>,
    pub d_omega2: KForm<C>,
    pub d_psi_plus: KForm<C>,
}

pub fn classify_su3<C: Coeff>(h: &LieAlgebra<C>, s: &SU3Structure) -> Result<Su3Class<C>> {
    if h.dim() != 6 {
        return Err(Error::DimensionMismatch { expected: 6, found: h.dim() });
    }
    let d_omega = h.ce_d(&embed(&s.omega))?;
    let d_omega2 = h.ce_d(&embed(&wedge_power(&s.omega, 2)?))?;
    let d_psi_plus = h.ce_d(&embed(&s.psi_plus))?;
    Ok(Su3Class {
        half_flat: d_omega2.is_zero() && d_psi_plus.is_zero(),
        symplectic_half_flat: d_omega.is_zero() && d_psi_plus.is_zero(),
        d_omega,
        d_omega2,
        d_psi_plus,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct G2Class<C: Coeff> {
    pub closed: bool,
    pub coclosed: bool,
    pub d_phi: KForm<C>,
    pub d_star_phi: KForm<C>,
}

pub fn classify_g2<C: Coeff>(g: &LieAlgebra<C>, s: &G2Structure) -> Result<G2Class<C>> {
    if g.dim() != 7 {
        return Err(Error::DimensionMismatch { expected: 7, found: g.dim() });
    }
    let d_phi = g.ce_d(&embed(&s.phi))?;
    let d_star_phi = g.ce_d(&embed(&s.star_phi))?;
    Ok(G2Class {
        closed: d_phi.is_zero(),
        coclosed: d_star_phi.is_zero(),
        d_phi,
        d_star_phi,
    })
}

/// φ ∧ *φ as a multiple of the volume form.
pub fn phi_volume(s: &G2Structure) -> Result<FieldElement> {
    let top = s.phi.wedge(&s.star_phi)?;
    let vol: Form = volume(7);
    debug_assert!(top.is_zero() || top.terms().keys().eq(vol.terms().keys()));
    Ok(top.top_coefficient())
}
