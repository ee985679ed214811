use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use super::entries::{fmou_catalog, CatalogEntry, VariantSource};
use crate::error::{Error, Result};
use crate::exterior::{KForm, SquareMatrix};
use crate::gstruct::{build_closed, canonical_su3, classify_g2};
use crate::liealg::{solve_derivations, split_parameters, DerivationTemplate, LieAlgebra};
use crate::scalars::{FieldElement, Param, ParamExpr, Rational, SolutionSpace};

/// One catalog entry pushed through solve, extend and build.
#[derive(Clone, Debug)]
pub struct Table1Row {
    pub entry: CatalogEntry,
    pub variant: VariantSource,
    /// Value of the free constant used, if any.
    pub constant: Option<Rational>,
    pub h: LieAlgebra<FieldElement>,
    pub solution: SolutionSpace,
    /// Free coefficient names, one per basis vector.
    pub free_parameters: Vec<Param>,
    pub basis_matrices: Vec<SquareMatrix<FieldElement>>,
    /// The generic solved derivation in the free coefficients.
    pub derivation: SquareMatrix<ParamExpr>,
    pub extension: LieAlgebra<ParamExpr>,
    pub d_phi: KForm<ParamExpr>,
    /// Dimension of the printed solved derivation space.
    pub printed_dimension: usize,
    pub solved_display_matches: bool,
    pub printed_extension: LieAlgebra<ParamExpr>,
    pub extension_matches: bool,
}

impl Table1Row {
    /// The extension and derivation at given values of the free coefficients.
    pub fn instantiate(&self, values: &[FieldElement]) -> Result<(LieAlgebra<FieldElement>, SquareMatrix<FieldElement>)> {
        if values.len() != self.free_parameters.len() {
            return Err(Error::DimensionMismatch {
                expected: self.free_parameters.len(),
                found: values.len(),
            });
        }
        let map: BTreeMap<Param, FieldElement> =
            self.free_parameters.iter().cloned().zip(values.iter().cloned()).collect();
        let d = self.derivation.eval(&map)?;
        Ok((self.h.extend(&d)?, d))
    }

    pub fn to_json(&self) -> Value {
        let matrices: Vec<Vec<Vec<String>>> = self
            .basis_matrices
            .iter()
            .map(|m| m.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect())
            .collect();
        json!({
            "entry": self.entry.id,
            "printed_names": self.entry.printed_names,
            "field": self.entry.field.min_poly_string(),
            "free_constant": self.entry.free_constant.as_ref().map(|c| json!({
                "name": c.name,
                "constraint": c.constraint,
                "value": self.constant.as_ref().map(|v| v.to_string()),
            })),
            "variant": self.variant.to_string(),
            "parameter_names": self.free_parameters.iter().map(|p| p.as_str()).collect::<Vec<_>>(),
            "solution_dimension": self.solution.dimension,
            "printed_dimension": self.printed_dimension,
            "basis_matrices": matrices,
            "extension_diffs": self.extension.diffs().iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "d_phi_residual": self.d_phi.to_string(),
            "solved_display_matches": self.solved_display_matches,
            "printed_extension": self.printed_extension.to_string(),
            "extension_matches_printed": self.extension_matches,
        })
    }
}

/// The span of a parametric sl(3, ℂ) matrix with no constant part.
fn display_span(m: &SquareMatrix<ParamExpr>) -> Result<SolutionSpace> {
    let template = DerivationTemplate::sl3c();
    let mut parts = split_parameters(m)?.into_iter();
    let constant = parts.next().expect("constant part");
    if !constant.is_zero() {
        return Err(Error::Precondition("printed derivation has a constant part".into()));
    }
    let mut vectors = Vec::new();
    for p in parts {
        let c = template
            .coordinates(&p)?
            .ok_or_else(|| Error::Precondition("printed derivation is not in sl(3,C)".into()))?;
        vectors.push(c);
    }
    SolutionSpace::from_span(template.parameters.clone(), vectors)
}

/// Runs one entry at the default value of its free constant.
pub fn table1_row(entry: &CatalogEntry) -> Result<Table1Row> {
    table1_row_at(entry, None)
}

pub fn table1_row_at(entry: &CatalogEntry, constant: Option<&Rational>) -> Result<Table1Row> {
    let template = DerivationTemplate::sl3c();
    let variant = entry.adjudicate()?;
    let h = entry.instantiate(&entry.symbolic(variant)?, constant)?;
    let solution = solve_derivations(&h, &template)?;
    let derivation = template.from_solution(&solution)?;
    let (extension, g2) = build_closed(&h, &canonical_su3(), &derivation)?;
    let d_phi = classify_g2(&extension, &g2)?.d_phi;
    let printed = display_span(&entry.solved_display()?)?;
    let printed_extension = entry.fix_constant(&entry.extension_display()?, constant)?;
    Ok(Table1Row {
        entry: entry.clone(),
        variant,
        constant: entry
            .free_constant
            .as_ref()
            .map(|c| constant.cloned().unwrap_or_else(|| c.default.clone())),
        free_parameters: solution.pivot_names(),
        basis_matrices: template.basis_matrices(&solution)?,
        printed_dimension: printed.dimension,
        solved_display_matches: printed == solution,
        extension_matches: printed_extension == extension,
        printed_extension,
        h,
        solution,
        derivation,
        extension,
        d_phi,
    })
}

/// Every catalog row, in catalog order.
#[derive(Clone, Debug)]
pub struct Table1Report {
    pub rows: Vec<Table1Row>,
}

impl Table1Report {
    pub fn all_closed(&self) -> bool {
        self.rows.iter().all(|r| r.d_phi.is_zero())
    }

    pub fn dimensions(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.solution.dimension).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "structure": "phi = e^{127}+e^{135}-e^{146}-e^{236}-e^{245}+e^{347}+e^{567}",
            "template": "sl(3,C)",
            "rows": self.rows.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, r) in self.rows.iter().enumerate() {
            let _ = writeln!(out, "[{}] {}", i + 1, r.entry.id);
            if r.entry.printed_names.len() > 1 {
                let _ = writeln!(out, "  printed names: {}", r.entry.printed_names.join(", "));
            }
            if let (Some(c), Some(v)) = (&r.entry.free_constant, &r.constant) {
                let _ = writeln!(out, "  {} = {} ({})", c.name, v, c.constraint);
            }
            let _ = writeln!(out, "  h = {} [{} variant]", r.h, r.variant);
            let names: Vec<&str> = r.free_parameters.iter().map(|p| p.as_str()).collect();
            let _ = writeln!(
                out,
                "  derivations: dimension {} (printed {}), free coefficients [{}]",
                r.solution.dimension,
                r.printed_dimension,
                names.join(", ")
            );
            let _ = writeln!(
                out,
                "  solved derivation vs printed: {}",
                if r.solved_display_matches { "match" } else { "differs" }
            );
            let _ = writeln!(out, "  D = {}", r.derivation);
            let _ = writeln!(out, "  g = {}", r.extension);
            if r.extension_matches {
                let _ = writeln!(out, "  printed extension: match");
            } else {
                let _ = writeln!(out, "  printed extension: differs");
                let _ = writeln!(out, "    printed  {}", r.printed_extension);
            }
            let _ = writeln!(out, "  d phi = {}", r.d_phi);
        }
        out
    }
}

/// Solves, extends and builds the closed structure for every entry.
pub fn reproduce_table1() -> Result<Table1Report> {
    let rows = fmou_catalog().iter().map(table1_row).collect::<Result<Vec<_>>>()?;
    Ok(Table1Report { rows })
}
