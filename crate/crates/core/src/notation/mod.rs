//! Text format for structure equations, forms and matrices.
//!
//! ```text
//! # optional header: the generator `a` is a root of the polynomial
//! field: x^2-5
//! (0, 0, -e^{14}, -e^{13}, e^{25}, -e^{26})
//! omega = e^{12}+e^{34}+e^{56}
//! D = [1, 0; 0, (1/2+1/2*a^1)]
//! ```
//!
//! Coefficients are written `p/q`, products with `*` (juxtaposition works on
//! one line), and algebraic numbers as polynomials in `a`. Parameter names
//! are accepted in forms and matrices but not in structure equations.

mod lexer;
mod parser;

pub use parser::Document;

use parser::{split_header, Parser};

use crate::error::{Error, Result};
use crate::exterior::{KForm, SquareMatrix};
use crate::liealg::LieAlgebra;
use crate::scalars::{Coeff, FieldElement, NumberField, ParamExpr};

/// Parses a whole file.
pub fn parse_document(text: &str) -> Result<Document> {
    let (field, body) = split_header(text)?;
    Parser::new(&body, field)?.document(false)
}

/// Like [`parse_document`] but lets structure equations carry parameters.
pub fn parse_param_document(text: &str) -> Result<Document> {
    let (field, body) = split_header(text)?;
    Parser::new(&body, field)?.document(true)
}

fn require_algebra(doc: Document) -> Result<LieAlgebra<ParamExpr>> {
    doc.algebra.ok_or(Error::Syntax {
        line: 1,
        column: 1,
        message: "no structure equations `( … )` found".into(),
    })
}

/// Structure equations with numeric coefficients.
pub fn parse_algebra(text: &str) -> Result<LieAlgebra<FieldElement>> {
    let alg = require_algebra(parse_document(text)?)?;
    Ok(alg.to_scalar().expect("parameters rejected by the parser"))
}

/// Structure equations that may contain parameters.
pub fn parse_param_algebra(text: &str) -> Result<LieAlgebra<ParamExpr>> {
    require_algebra(parse_param_document(text)?)
}

/// A single form expression in dimension `dim`; a `field:` header is allowed.
pub fn parse_form(text: &str, dim: usize) -> Result<KForm<ParamExpr>> {
    let (field, body) = split_header(text)?;
    parse_form_in(&body, dim, &field)
}

pub fn parse_form_in(text: &str, dim: usize, field: &NumberField) -> Result<KForm<ParamExpr>> {
    let mut p = Parser::new(text, field.clone())?;
    let f = p.form(dim)?;
    trailing(&mut p)?;
    Ok(f)
}

/// A scalar expression such as `1/2+1/2*a^1` over `field`.
pub fn parse_scalar(text: &str, field: &NumberField) -> Result<ParamExpr> {
    let mut p = Parser::new(text, field.clone())?;
    let s = p.scalar()?;
    trailing(&mut p)?;
    Ok(s)
}

/// The first matrix of a file.
pub fn parse_matrix(text: &str) -> Result<SquareMatrix<ParamExpr>> {
    let doc = parse_document(text)?;
    doc.matrices.into_iter().next().map(|(_, m)| m).ok_or(Error::Syntax {
        line: 1,
        column: 1,
        message: "no matrix `[ … ]` found".into(),
    })
}

fn trailing(p: &mut Parser) -> Result<()> {
    if p.at_end() {
        Ok(())
    } else {
        let (line, column) = p.position();
        Err(Error::Syntax {
            line,
            column,
            message: "unexpected trailing input".into(),
        })
    }
}

fn header(field: &NumberField) -> String {
    if field.is_rationals() {
        String::new()
    } else {
        format!("field: {}\n", field.min_poly_string())
    }
}

/// The algebra in file syntax, with a header when `field` is a proper
/// extension.
pub fn format_algebra<C: Coeff>(alg: &LieAlgebra<C>, field: &NumberField) -> String {
    format!("{}{}\n", header(field), alg)
}

/// A matrix in file syntax, one row per line.
pub fn format_matrix<C: Coeff>(m: &SquareMatrix<C>) -> String {
    let rows: Vec<String> = m
        .rows()
        .iter()
        .map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "))
        .collect();
    format!("[{}]", rows.join(";\n "))
}

/// A file holding an algebra together with named forms and matrices.
pub fn format_document(doc: &Document) -> String {
    let mut out = header(&doc.field);
    if let Some(a) = &doc.algebra {
        out.push_str(&format!("{a}\n"));
    }
    for (n, f) in &doc.forms {
        out.push_str(&format!("{n} = {f}\n"));
    }
    for (n, m) in &doc.matrices {
        if n.is_empty() {
            out.push_str(&format!("{}\n", format_matrix(m)));
        } else {
            out.push_str(&format!("{n} = {}\n", format_matrix(m)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn example_algebra() {
        let g = parse_algebra("(0,0,e^{17},e^{15}+e^{27},0,e^{13},0)").unwrap();
        assert_eq!(g.dim(), 7);
        assert_eq!(g.diff(4).to_string(), "e^{15}+e^{27}");
        assert_eq!(g.to_string(), "(0, 0, e^{17}, e^{15}+e^{27}, 0, e^{13}, 0)");
    }

    #[test]
    fn rational_coefficients() {
        let g = parse_algebra("(-1/4*e^{14}-e^{23}, 1/4*e^{24}, -1/2*e^{34}, 0, -3/4*e^{45}, 3/4*e^{46})").unwrap();
        assert_eq!(g.diff(1).to_string(), "-1/4*e^{14}-e^{23}");
        // juxtaposition and unsorted indices
        let h = parse_algebra("(2 e^{51}, 0, 0, 0, 0)").unwrap();
        assert_eq!(h.diff(1).to_string(), "-2*e^{15}");
    }

    #[test]
    fn field_header() {
        let doc = parse_document("field: x^2-5\nD = [1/2+1/2*a^1]").unwrap();
        assert_eq!(doc.field.min_poly_string(), "x^2-5");
        let m = doc.matrix("D").unwrap();
        let phi = m.get(1, 1).as_scalar().unwrap();
        // golden ratio: phi^2 = phi + 1
        assert_eq!(phi.clone() * phi.clone(), phi + FieldElement::one());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_algebra("(e^{11}, 0)"), Err(Error::RepeatedIndex(1))));
        assert!(matches!(
            parse_algebra("(e^{13}, 0)"),
            Err(Error::IndexOutOfRange { index: 3, dim: 2 })
        ));
        match parse_algebra("(0,\n 0 +, 0)") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_algebra("(x*e^{12}, 0)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_algebra("(a*e^{12}, 0)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_algebra("(e^{1}, 0)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_document("field: x^2-4\n(0)"), Err(Error::Syntax { line: 1, .. })));
    }

    #[test]
    fn matrices_and_forms() {
        let doc = parse_document(
            "(0,0,0,0,0,0)\nomega = e^{12}+e^{34}\n  +e^{56}\nD = [a11, 0; 0, -a11]\n",
        )
        .unwrap();
        assert_eq!(doc.form("omega").unwrap().term_count(), 3);
        assert_eq!(doc.form("omega").unwrap().dim(), 6);
        assert_eq!(doc.matrix("D").unwrap().get(2, 2).to_string(), "-a11");
        let printed = format_document(&doc);
        let again = parse_document(&printed).unwrap();
        assert_eq!(again.forms, doc.forms);
        assert_eq!(again.matrices, doc.matrices);
    }

    #[test]
    fn line_break_ends_a_product() {
        let doc = parse_document("field: x^2-5\nalpha = 2\nbeta = a\nD = [1]").unwrap();
        assert_eq!(doc.forms.len(), 2);
        assert_eq!(doc.matrix("D").unwrap().dim(), 1);
    }

    #[test]
    fn scalar_round_trip() {
        let f = NumberField::quadratic(5).unwrap();
        let x = f.from_rational(rat(1, 2)) + f.generator().scale(&rat(1, 2));
        let s = parse_scalar(&x.to_string(), &f).unwrap();
        assert_eq!(s.as_scalar().unwrap(), x);
    }
}
