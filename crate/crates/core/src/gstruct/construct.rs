//! One-dimensional extensions carrying G₂-structures and their reductions.

use super::structures::{
    classify_g2, classify_su3, closed_candidate, coclosed_candidate, embed, embed_algebra, wedge_power, Form,
    G2Structure, SU3Structure,
};
use crate::error::{Error, Result};
use crate::exterior::SquareMatrix;
use crate::liealg::{DerivationTemplate, LieAlgebra};
use crate::scalars::{rat, Coeff, FieldElement};

fn check_six(h_dim: usize, d_dim: usize) -> Result<()> {
    if h_dim != 6 {
        return Err(Error::DimensionMismatch { expected: 6, found: h_dim });
    }
    if d_dim != 6 {
        return Err(Error::DimensionMismatch { expected: 6, found: d_dim });
    }
    Ok(())
}

/// D must kill `form` under the derivation action; in the adapted basis this
/// is membership in the template, which also names offending entries.
fn check_shape<C: Coeff>(
    d: &SquareMatrix<C>,
    form: &Form,
    template: DerivationTemplate,
    adapted: bool,
) -> Result<()> {
    if adapted {
        template.check_membership(d)?;
    }
    let moved = embed::<C>(form).matrix_action(d)?;
    if !moved.is_zero() {
        return Err(Error::Precondition(format!(
            "D does not preserve the structure: D.form = {moved}"
        )));
    }
    Ok(())
}

fn check_derivation<C: Coeff>(ext: &LieAlgebra<C>) -> Result<()> {
    let report = ext.jacobi_check()?;
    if report.passed() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("D is not a derivation: {report}")))
    }
}

/// 𝔤 = 𝔥 ⊕_D ℝe₇ with φ = ω∧e⁷ + ψ₊, for symplectic half-flat (𝔥, s) and
/// D in the real form of sl(3, ℂ). Asserts dφ = 0 (identically when D is
/// parametric).
pub fn build_closed<C: Coeff>(
    h: &LieAlgebra<FieldElement>,
    s: &SU3Structure,
    d: &SquareMatrix<C>,
) -> Result<(LieAlgebra<C>, G2Structure)> {
    check_six(h.dim(), d.dim())?;
    let class = classify_su3(h, s)?;
    if !class.symplectic_half_flat {
        return Err(Error::Precondition(format!(
            "not symplectic half-flat: d omega = {}, d psi_plus = {}",
            class.d_omega, class.d_psi_plus
        )));
    }
    check_shape(d, s.psi_plus(), DerivationTemplate::sl3c(), s.is_canonical())?;
    let ext = embed_algebra::<C>(h).extend(d)?;
    check_derivation(&ext)?;
    let g2 = closed_candidate(s)?;
    let gc = classify_g2(&ext, &g2)?;
    if !gc.closed {
        return Err(Error::Postcondition(format!("d phi = {}", gc.d_phi)));
    }
    Ok((ext, g2))
}

/// 𝔤 = 𝔥 ⊕_D ℝe₇ with φ = ω∧e⁷ − ψ₋, for half-flat (𝔥, s) and D in
/// sp(6, ℝ). Asserts d*φ = 0.
pub fn build_coclosed<C: Coeff>(
    h: &LieAlgebra<FieldElement>,
    s: &SU3Structure,
    d: &SquareMatrix<C>,
) -> Result<(LieAlgebra<C>, G2Structure)> {
    check_six(h.dim(), d.dim())?;
    let class = classify_su3(h, s)?;
    if !class.half_flat {
        return Err(Error::Precondition(format!(
            "not half-flat: d omega^2 = {}, d psi_plus = {}",
            class.d_omega2, class.d_psi_plus
        )));
    }
    check_shape(d, s.omega(), DerivationTemplate::sp6r(), s.is_canonical())?;
    let ext = embed_algebra::<C>(h).extend(d)?;
    check_derivation(&ext)?;
    let g2 = coclosed_candidate(s)?;
    let gc = classify_g2(&ext, &g2)?;
    if !gc.coclosed {
        return Err(Error::Postcondition(format!("d*phi = {}", gc.d_star_phi)));
    }
    Ok((ext, g2))
}

/// Picks the sign of a candidate ψ so that ψ₊∧ψ₋ is a positive multiple of
/// ω³, then validates the triple.
fn orient(omega: Form, psi_plus: Form, psi_minus: Form, flip_plus: bool) -> Result<SU3Structure> {
    let w3 = wedge_power(&omega, 3)?.top_coefficient();
    if w3.is_zero() {
        return Err(Error::Degenerate("omega = iota_7 phi has omega^3 = 0".into()));
    }
    let pp = psi_plus.wedge(&psi_minus)?.top_coefficient();
    let same = pp.checked_div(&w3)? == FieldElement::from_rational(rat(2, 3));
    let (plus, minus) = match (same, flip_plus) {
        (true, _) => (psi_plus, psi_minus),
        (false, true) => (psi_plus.neg(), psi_minus),
        (false, false) => (psi_plus, psi_minus.neg()),
    };
    SU3Structure::new(omega, plus, minus)
}

fn split_phi(phi: &Form) -> Result<(Form, Form)> {
    let omega = phi.contract(7)?.restrict(6);
    Ok((omega, phi.restrict(6)))
}

/// From a closed G₂-structure on 𝔥 ⊕_D ℝe₇: ω = ι_{e₇}φ, ψ₊ = φ|𝔥,
/// ψ₋ = *ψ₊ (orientation checked). Returns 𝔥 and the recovered triple,
/// which is symplectic half-flat.
pub fn reduce_closed<C: Coeff>(g: &LieAlgebra<C>, s: &G2Structure) -> Result<(LieAlgebra<C>, SU3Structure)> {
    let class = classify_g2(g, s)?;
    if !class.closed {
        return Err(Error::Precondition(format!("d phi = {} is not zero", class.d_phi)));
    }
    let (h, d) = g.split_extension()?;
    let (omega, psi_plus) = split_phi(s.phi())?;
    let psi_minus = psi_plus.hodge_star()?;
    let su3 = orient(omega, psi_plus, psi_minus, false)?;
    check_shape(&d, su3.psi_plus(), DerivationTemplate::sl3c(), su3.is_canonical())?;
    let hc = classify_su3(&h, &su3)?;
    if !hc.symplectic_half_flat {
        return Err(Error::Postcondition(format!(
            "recovered structure is not symplectic half-flat: d omega = {}, d psi_plus = {}",
            hc.d_omega, hc.d_psi_plus
        )));
    }
    Ok((h, su3))
}

/// From a coclosed G₂-structure: ω = ι_{e₇}φ, ψ₋ = −φ|𝔥 and ψ₊ = ±*ψ₋, the
/// sign fixed by ψ₊∧ψ₋ = (2/3)ω³. The result is half-flat.
pub fn reduce_coclosed<C: Coeff>(g: &LieAlgebra<C>, s: &G2Structure) -> Result<(LieAlgebra<C>, SU3Structure)> {
    let class = classify_g2(g, s)?;
    if !class.coclosed {
        return Err(Error::Precondition(format!("d*phi = {} is not zero", class.d_star_phi)));
    }
    let (h, d) = g.split_extension()?;
    let (omega, rest) = split_phi(s.phi())?;
    let psi_minus = rest.neg();
    let psi_plus = psi_minus.hodge_star()?;
    let su3 = orient(omega, psi_plus, psi_minus, true)?;
    check_shape(&d, su3.omega(), DerivationTemplate::sp6r(), su3.is_canonical())?;
    let hc = classify_su3(&h, &su3)?;
    if !hc.half_flat {
        return Err(Error::Postcondition(format!(
            "recovered structure is not half-flat: d omega^2 = {}, d psi_plus = {}",
            hc.d_omega2, hc.d_psi_plus
        )));
    }
    Ok((h, su3))
}
