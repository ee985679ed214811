use std::fmt;

use crate::error::Result;
use crate::exterior::{KForm, SquareMatrix};
use crate::gstruct::{
    build_closed, build_coclosed, canonical_su3, classify_g2, g2_metric, Definiteness, reduce_closed, reduce_coclosed, Form,
    G2Structure,
};
use crate::liealg::{DerivationTemplate, LieAlgebra};
use crate::notation::{parse_algebra, parse_form};
use crate::scalars::{Coeff, FieldElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClaimStatus {
    Pass,
    Fail,
    /// The printed statement is false as written; the corrected statement
    /// in the detail holds.
    Adjudicated,
}

impl fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimStatus::Pass => "PASS",
            ClaimStatus::Fail => "FAIL",
            ClaimStatus::Adjudicated => "ADJUDICATED",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Claim {
    pub statement: String,
    pub status: ClaimStatus,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExampleReport {
    pub name: &'static str,
    pub claims: Vec<Claim>,
}

/// Closedness of one printed sign pattern of φ on one algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct SignVariant {
    pub form: &'static str,
    pub algebra: &'static str,
    pub closed: bool,
    pub coclosed: bool,
    /// Positive definite, negative definite, or neither.
    pub metric: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExamplesReport {
    pub examples: Vec<ExampleReport>,
    pub sign_variants: Vec<SignVariant>,
}

impl ExamplesReport {
    pub fn passed(&self) -> bool {
        self.examples
            .iter()
            .flat_map(|e| &e.claims)
            .all(|c| c.status != ClaimStatus::Fail)
    }

    pub fn adjudications(&self) -> Vec<&Claim> {
        self.examples
            .iter()
            .flat_map(|e| &e.claims)
            .filter(|c| c.status == ClaimStatus::Adjudicated)
            .collect()
    }
}

impl fmt::Display for ExamplesReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.examples {
            writeln!(f, "== {} ==", e.name)?;
            for c in &e.claims {
                writeln!(f, "  {:<11} {}", c.status.to_string(), c.statement)?;
                if !c.detail.is_empty() {
                    writeln!(f, "              {}", c.detail)?;
                }
            }
        }
        writeln!(f, "== sign conventions ==")?;
        for v in &self.sign_variants {
            writeln!(
                f,
                "  {} on {}: closed {}, coclosed {}, metric {}",
                v.form, v.algebra, v.closed, v.coclosed, v.metric
            )?;
        }
        Ok(())
    }
}

fn claim(statement: impl Into<String>, passed: bool, detail: impl Into<String>) -> Claim {
    Claim {
        statement: statement.into(),
        status: if passed { ClaimStatus::Pass } else { ClaimStatus::Fail },
        detail: detail.into(),
    }
}

fn failed(statement: impl Into<String>, err: impl fmt::Display) -> Claim {
    claim(statement, false, format!("error: {err}"))
}

fn form7(text: &str) -> Form {
    parse_form(text, 7).expect("fixture form").to_scalar().expect("numeric")
}

fn alg(text: &str) -> LieAlgebra<FieldElement> {
    parse_algebra(text).expect("fixture algebra")
}

fn diag(values: &[i64]) -> SquareMatrix<FieldElement> {
    SquareMatrix::diagonal(values.iter().map(|&v| FieldElement::from_int(v)).collect())
}

fn sparse(entries: &[(usize, usize)]) -> SquareMatrix<FieldElement> {
    let mut m = SquareMatrix::zero(6);
    for &(i, j) in entries {
        m.set(i, j, FieldElement::one());
    }
    m
}

fn residual<C: Coeff>(f: &KForm<C>) -> String {
    if f.is_zero() {
        "0".into()
    } else {
        f.to_string()
    }
}

fn membership(template: DerivationTemplate, d: &SquareMatrix<FieldElement>) -> Claim {
    let shape = template.shape;
    match template.check_membership(d) {
        Ok(()) => claim(format!("D lies in {shape}"), true, ""),
        Err(e) => failed(format!("D lies in {shape}"), e),
    }
}

const PHI_PLUS_PSI_MINUS: &str = "e^{127}+e^{347}+e^{567}+e^{136}+e^{145}+e^{235}-e^{246}";
const PHI_CLOSED: &str = "e^{127}+e^{347}+e^{567}+e^{135}-e^{146}-e^{236}-e^{245}";
const PHI_COCLOSED: &str = "e^{127}+e^{347}+e^{567}+e^{246}-e^{235}-e^{136}-e^{145}";
const PHI_MIXED: &str = "e^{127}+e^{347}+e^{567}+e^{136}-e^{145}-e^{235}-e^{246}";

const G_CLOSED_ABELIAN: &str = "(e^{17}, e^{27}, -e^{37}, -e^{47}, 0, 0, 0)";
const G_COCLOSED_ABELIAN: &str = "(e^{17}, -e^{27}, e^{37}, -e^{47}, e^{57}, -e^{67}, 0)";
const G_NILPOTENT: &str = "(0, 0, e^{17}, e^{15}+e^{27}, 0, e^{13}, 0)";
const G_COCLOSED_REDUCTION: &str = "(e^{35}+e^{46}, 0, e^{67}, e^{57}, e^{47}, e^{37}, 0)";

fn closed_abelian() -> Result<ExampleReport> {
    let h = LieAlgebra::abelian(6);
    let d = diag(&[1, 1, -1, -1, 0, 0]);
    let s = canonical_su3();
    let mut claims = vec![membership(DerivationTemplate::sl3c(), &d)];
    match build_closed(&h, &s, &d) {
        Ok((g, g2)) => {
            let printed = alg(G_CLOSED_ABELIAN);
            claims.push(claim(
                format!("h (+)_D Re7 = {G_CLOSED_ABELIAN}"),
                g == printed,
                format!("computed {g}"),
            ));
            let c = classify_g2(&g, &g2)?;
            claims.push(claim("omega^e7 + psi_plus is closed", c.closed, format!("d phi = {}", residual(&c.d_phi))));
            let pc = classify_g2(&printed, &G2Structure::new(form7(PHI_PLUS_PSI_MINUS))?)?;
            claims.push(claim(
                format!("printed phi = {PHI_PLUS_PSI_MINUS} is closed"),
                pc.closed,
                format!("d phi = {}", residual(&pc.d_phi)),
            ));
            match reduce_closed(&g, &g2) {
                Ok((h2, s2)) => claims.push(claim(
                    "reduction returns the abelian h with the canonical (omega, psi_plus)",
                    h2 == h && s2 == s,
                    format!("h = {h2}"),
                )),
                Err(e) => claims.push(failed("reduction round trip", e)),
            }
        }
        Err(e) => claims.push(failed("build the closed extension", e)),
    }
    Ok(ExampleReport {
        name: "abelian h, D = diag(1,1,-1,-1,0,0), closed",
        claims,
    })
}

fn nilpotent_closed() -> Result<ExampleReport> {
    let g = alg(G_NILPOTENT);
    let g2 = G2Structure::new(form7(PHI_CLOSED))?;
    let c = classify_g2(&g, &g2)?;
    let mut claims = vec![
        claim(format!("phi = {PHI_CLOSED} is closed on {G_NILPOTENT}"), c.closed, format!("d phi = {}", residual(&c.d_phi))),
        claim(
            "phi is not coclosed (computed)",
            !c.coclosed,
            format!("d*phi = {}", residual(&c.d_star_phi)),
        ),
    ];
    let printed_h = alg("(0, 0, 0, e^{15}, 0, e^{13})");
    let printed_d = sparse(&[(1, 3), (2, 4)]);
    let (h, d) = g.split_extension()?;
    claims.push(claim(
        "g = h (+)_D Re7 with h = (0, 0, 0, e^{15}, 0, e^{13}) and D = E13 + E24",
        h == printed_h && d == printed_d,
        format!("h = {h}, D = {d}"),
    ));
    claims.push(membership(DerivationTemplate::sl3c(), &d));
    match reduce_closed(&g, &g2) {
        Ok((h2, s2)) => claims.push(claim(
            "(omega, psi_plus) = iota_e7 phi, phi|h is canonical and symplectic half-flat",
            h2 == printed_h && s2 == canonical_su3(),
            format!("omega = {}, psi_plus = {}", s2.omega(), s2.psi_plus()),
        )),
        Err(e) => claims.push(failed("reduction", e)),
    }
    match build_closed(&printed_h, &canonical_su3(), &printed_d) {
        Ok((g3, phi3)) => claims.push(claim(
            "building from (h, D) gives back g and phi",
            g3 == g && phi3 == g2,
            format!("g = {g3}"),
        )),
        Err(e) => claims.push(failed("build from (h, D)", e)),
    }
    Ok(ExampleReport {
        name: "nilpotent g = (0,0,e^{17},e^{15}+e^{27},0,e^{13},0), closed reduction",
        claims,
    })
}

fn coclosed_abelian(printed_claim_closed: bool) -> Result<ExampleReport> {
    let h = LieAlgebra::abelian(6);
    let d = diag(&[1, -1, 1, -1, 1, -1]);
    let s = canonical_su3();
    let mut claims = vec![membership(DerivationTemplate::sp6r(), &d)];
    match build_coclosed(&h, &s, &d) {
        Ok((g, g2)) => {
            let printed = alg(G_COCLOSED_ABELIAN);
            claims.push(claim(
                format!("h (+)_D Re7 = {G_COCLOSED_ABELIAN}"),
                g == printed,
                format!("computed {g}"),
            ));
            let c = classify_g2(&g, &g2)?;
            claims.push(claim(
                "omega^e7 - psi_minus is coclosed",
                c.coclosed,
                format!("d*phi = {}", residual(&c.d_star_phi)),
            ));
            let pc = classify_g2(&printed, &G2Structure::new(form7(PHI_PLUS_PSI_MINUS))?)?;
            if printed_claim_closed {
                claims.push(Claim {
                    statement: format!("printed phi = {PHI_PLUS_PSI_MINUS} is closed"),
                    status: match (pc.closed, pc.coclosed) {
                        (true, _) => ClaimStatus::Pass,
                        (false, true) => ClaimStatus::Adjudicated,
                        (false, false) => ClaimStatus::Fail,
                    },
                    detail: format!(
                        "d phi = {}; d*phi = {}: the form is coclosed, as the construction gives",
                        residual(&pc.d_phi),
                        residual(&pc.d_star_phi)
                    ),
                });
            } else {
                claims.push(claim(
                    format!("printed phi = {PHI_PLUS_PSI_MINUS} is coclosed"),
                    pc.coclosed,
                    format!(
                        "d*phi = {}; it differs from omega^e7 - psi_minus by the sign of psi_minus",
                        residual(&pc.d_star_phi)
                    ),
                ));
            }
            match reduce_coclosed(&g, &g2) {
                Ok((h2, s2)) => claims.push(claim(
                    "reduction returns the abelian h with the canonical (omega, psi_plus)",
                    h2 == h && s2 == s,
                    format!("h = {h2}"),
                )),
                Err(e) => claims.push(failed("reduction round trip", e)),
            }
        }
        Err(e) => claims.push(failed("build the coclosed extension", e)),
    }
    Ok(ExampleReport {
        name: if printed_claim_closed {
            "abelian h, D = diag(1,-1,1,-1,1,-1), coclosed construction"
        } else {
            "abelian h, D = diag(1,-1,1,-1,1,-1), coclosed solvmanifold"
        },
        claims,
    })
}

fn coclosed_reduction() -> Result<ExampleReport> {
    let g = alg(G_COCLOSED_REDUCTION);
    let g2 = G2Structure::new(form7(PHI_COCLOSED))?;
    let c = classify_g2(&g, &g2)?;
    let printed_star = parse_form("e^{1234}+e^{1256}+e^{3456}+e^{1357}-e^{1467}-e^{2367}-e^{2457}", 7)?
        .to_scalar()
        .expect("numeric");
    let mut claims = vec![
        claim(
            format!("phi = {PHI_COCLOSED} is coclosed on {G_COCLOSED_REDUCTION}"),
            c.coclosed,
            format!("d*phi = {}", residual(&c.d_star_phi)),
        ),
        claim(
            "printed *phi equals the computed Hodge star",
            g2.star_phi() == &printed_star,
            format!("*phi = {}", g2.star_phi()),
        ),
    ];
    let printed_h = alg("(e^{35}+e^{46}, 0, 0, 0, 0, 0)");
    let printed_d = sparse(&[(3, 6), (4, 5), (5, 4), (6, 3)]);
    let (h, d) = g.split_extension()?;
    claims.push(claim(
        "g = h (+)_D Re7 with h = (e^{35}+e^{46}, 0, 0, 0, 0, 0) and D = E36 + E45 + E54 + E63",
        h == printed_h && d == printed_d,
        format!("h = {h}, D = {d}"),
    ));
    claims.push(membership(DerivationTemplate::sp6r(), &d));
    match reduce_coclosed(&g, &g2) {
        Ok((h2, s2)) => claims.push(claim(
            "omega = iota_e7 phi, psi_minus = -phi|h, psi_plus = *psi_minus give the canonical half-flat structure",
            h2 == printed_h && s2 == canonical_su3(),
            format!("omega = {}, psi_plus = {}", s2.omega(), s2.psi_plus()),
        )),
        Err(e) => claims.push(failed("reduction", e)),
    }
    match build_coclosed(&printed_h, &canonical_su3(), &printed_d) {
        Ok((g3, phi3)) => claims.push(claim(
            "building from (h, D) gives back g and phi",
            g3 == g && phi3 == g2,
            format!("g = {g3}"),
        )),
        Err(e) => claims.push(failed("build from (h, D)", e)),
    }
    Ok(ExampleReport {
        name: "g = (e^{35}+e^{46},0,e^{67},e^{57},e^{47},e^{37},0), coclosed reduction",
        claims,
    })
}

fn metric_kind(phi: &Form) -> String {
    match g2_metric(phi) {
        Ok(m) => match m.definiteness() {
            Some(Definiteness::Positive) => "positive definite".into(),
            Some(Definiteness::Negative) => "negative definite".into(),
            Some(Definiteness::Indefinite) => "indefinite".into(),
            None => "irrational".into(),
        },
        Err(e) => format!("not stable ({e})"),
    }
}

fn sign_variants() -> Result<Vec<SignVariant>> {
    let forms = [
        ("omega^e7 + psi_plus", PHI_CLOSED),
        ("omega^e7 - psi_minus", PHI_COCLOSED),
        ("omega^e7 + psi_minus", PHI_PLUS_PSI_MINUS),
        ("omega^e7 + e^{136}-e^{145}-e^{235}-e^{246}", PHI_MIXED),
    ];
    let algebras = [G_CLOSED_ABELIAN, G_COCLOSED_ABELIAN, G_COCLOSED_REDUCTION];
    let mut out = Vec::new();
    for (name, text) in forms {
        let phi = form7(text);
        let s = G2Structure::new(phi.clone())?;
        let metric = metric_kind(&phi);
        for a in algebras {
            let c = classify_g2(&alg(a), &s)?;
            out.push(SignVariant {
                form: name,
                algebra: a,
                closed: c.closed,
                coclosed: c.coclosed,
                metric: metric.clone(),
            });
        }
    }
    Ok(out)
}

/// Runs every worked example end to end.
pub fn verify_examples() -> Result<ExamplesReport> {
    Ok(ExamplesReport {
        examples: vec![
            closed_abelian()?,
            nilpotent_closed()?,
            coclosed_abelian(true)?,
            coclosed_abelian(false)?,
            coclosed_reduction()?,
        ],
        sign_variants: sign_variants()?,
    })
}
