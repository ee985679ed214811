//! Property bodies, shared by the proptest suite and the acceptance run.

use std::collections::BTreeMap;

use g2lie::exterior::{volume, KForm, SquareMatrix};
use g2lie::liealg::{solve_derivations, DerivationTemplate, LieAlgebra};
use g2lie::notation::{format_algebra, format_document, parse_algebra, parse_document, parse_form_in, Document};
use g2lie::scalars::{rank, solve_homogeneous, FieldElement, NumberField, Param, ParamExpr, Rational};
use g2lie::Error;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use super::gen;

type F = FieldElement;
type Form = KForm<F>;
pub type Outcome = Result<(), TestCaseError>;

pub const CASES: u32 = 1000;

fn sign(e: usize) -> F {
    if e % 2 == 0 {
        F::one()
    } else {
        -F::one()
    }
}

pub fn wedge_associative((a, b, c): (Form, Form, Form)) -> Outcome {
    let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
    let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
    prop_assert_eq!(left, right);
    Ok(())
}

pub fn wedge_graded_commutative((a, b, _): (Form, Form, Form)) -> Outcome {
    let ab = a.wedge(&b).unwrap();
    let ba = b.wedge(&a).unwrap().scale(&sign(a.degree() * b.degree())).unwrap();
    prop_assert_eq!(ab, ba);
    Ok(())
}

/// ι is an anti-derivation and ι_i ι_i = 0.
pub fn contraction((a, b, _): (Form, Form, Form)) -> Outcome {
    let (p, q) = (a.degree(), b.degree());
    for i in 1..=a.dim() {
        prop_assert!(a.contract(i).unwrap().contract(i).unwrap().is_zero());
        if p + q == 0 {
            continue;
        }
        let lhs = a.wedge(&b).unwrap().contract(i).unwrap();
        // ι of a 0-form vanishes
        let mut rhs = KForm::zero(a.dim(), p + q - 1);
        if p > 0 {
            rhs = rhs.try_add(&a.contract(i).unwrap().wedge(&b).unwrap()).unwrap();
        }
        if q > 0 {
            let t = a.wedge(&b.contract(i).unwrap()).unwrap().scale(&sign(p)).unwrap();
            rhs = rhs.try_add(&t).unwrap();
        }
        prop_assert_eq!(lhs, rhs);
    }
    Ok(())
}

/// ** = (−1)^{k(n−k)} and α∧*α = |α|² vol.
pub fn star(a: Form) -> Outcome {
    let (n, k) = (a.dim(), a.degree());
    let twice = a.hodge_star().unwrap().hodge_star().unwrap();
    prop_assert_eq!(twice, a.scale(&sign(k * (n - k))).unwrap());
    let norm = a.terms().values().fold(F::zero(), |acc, c| acc + c.clone() * c.clone());
    let top = a.wedge(&a.hodge_star().unwrap()).unwrap();
    prop_assert_eq!(top, volume::<F>(n).scale(&norm).unwrap());
    Ok(())
}

/// d(α∧β) = dα∧β + (−1)^p α∧dβ and d² = 0.
pub fn leibniz((g, a, b): (LieAlgebra<F>, Form, Form)) -> Outcome {
    let lhs = g.ce_d(&a.wedge(&b).unwrap()).unwrap();
    let r1 = g.ce_d(&a).unwrap().wedge(&b).unwrap();
    let r2 = a.wedge(&g.ce_d(&b).unwrap()).unwrap().scale(&sign(a.degree())).unwrap();
    prop_assert_eq!(lhs, r1.try_add(&r2).unwrap());
    prop_assert!(g.ce_d(&g.ce_d(&a).unwrap()).unwrap().is_zero());
    Ok(())
}

pub fn algebra_round_trip(g: LieAlgebra<F>) -> Outcome {
    let field = g
        .diffs()
        .iter()
        .flat_map(|f| f.terms().values())
        .map(|c| c.field().clone())
        .find(|f| !f.is_rationals())
        .unwrap_or_else(NumberField::rationals);
    let text = format_algebra(&g, &field);
    let back = parse_algebra(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
    prop_assert_eq!(back, g);
    Ok(())
}

/// Equality up to the degree of a zero form, which the text `0` cannot carry.
fn same_form(x: &KForm<ParamExpr>, y: &KForm<ParamExpr>) -> bool {
    if x.is_zero() || y.is_zero() {
        x.is_zero() && y.is_zero() && x.dim() == y.dim()
    } else {
        x == y
    }
}

pub fn form_round_trip((field, a): (NumberField, Form)) -> Outcome {
    let text = a.to_string();
    let back = parse_form_in(&text, a.dim(), &field).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
    prop_assert!(same_form(&back, &a.to_param()), "{} vs {}", back, a);
    Ok(())
}

pub fn document_round_trip((g, m, a): (LieAlgebra<F>, SquareMatrix<F>, Form)) -> Outcome {
    let doc = Document {
        field: NumberField::rationals(),
        algebra: Some(g.to_param()),
        forms: vec![("alpha".into(), a.to_param())],
        matrices: vec![("D".into(), m.to_param())],
    };
    let text = format_document(&doc);
    let back = parse_document(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
    prop_assert_eq!(back.algebra, doc.algebra);
    prop_assert_eq!(back.forms.len(), 1);
    prop_assert_eq!(&back.forms[0].0, &doc.forms[0].0);
    prop_assert!(same_form(&back.forms[0].1, &doc.forms[0].1));
    prop_assert_eq!(back.matrices, doc.matrices);
    Ok(())
}

pub fn field_axioms((x, y, z): (F, F, F)) -> Outcome {
    prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
    prop_assert_eq!(x.clone() * (y.clone() + z.clone()), x.clone() * y.clone() + x.clone() * z.clone());
    prop_assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
    prop_assert_eq!((x.clone() + y.clone()) - y.clone(), x.clone());
    if !x.is_zero() {
        prop_assert!((x.clone() * x.inv().unwrap()).is_one());
        prop_assert_eq!((x.clone() * y.clone()).checked_div(&x).unwrap(), y);
    }
    Ok(())
}

/// Every basis vector solves the system, and dimension + rank = unknowns.
pub fn rank_nullity((m, rows): (usize, Vec<Vec<Rational>>)) -> Outcome {
    let params: Vec<Param> = (0..m).map(|i| Param::new(&format!("x{i}"))).collect();
    let exprs: Vec<ParamExpr> = rows
        .iter()
        .map(|r| {
            r.iter().zip(&params).fold(ParamExpr::zero(), |acc, (c, p)| {
                acc.checked_add(&ParamExpr::term(p.clone(), F::from_rational(c.clone()))).unwrap()
            })
        })
        .collect();
    let space = solve_homogeneous(&exprs, &params).unwrap();
    let dense: Vec<Vec<F>> = rows.iter().map(|r| r.iter().cloned().map(F::from_rational).collect()).collect();
    prop_assert_eq!(space.dimension + rank(&dense, m).unwrap(), m);
    for v in &space.basis {
        let values: BTreeMap<Param, F> = params.iter().cloned().zip(v.iter().cloned()).collect();
        for e in &exprs {
            prop_assert!(e.eval(&values).unwrap().is_zero());
        }
    }
    Ok(())
}

/// Solving any template on a Lie algebra never trips the linearity check.
pub fn linearity(g: LieAlgebra<F>) -> Outcome {
    let mut templates = vec![DerivationTemplate::general(g.dim())];
    if g.dim() == 6 {
        templates.push(DerivationTemplate::sl3c());
        templates.push(DerivationTemplate::sp6r());
    }
    for t in templates {
        match solve_derivations(&g, &t) {
            Err(e @ Error::LinearityViolated { .. }) => {
                return Err(TestCaseError::fail(format!("{g}: {e}")));
            }
            other => {
                other.unwrap();
            }
        }
    }
    Ok(())
}

/// Runs one property with [`CASES`] cases and a fixed seed; returns the
/// failure message, if any.
pub fn run<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Outcome) -> Result<(), String> {
    let config = Config {
        cases: CASES,
        failure_persistence: None,
        rng_algorithm: proptest::test_runner::RngAlgorithm::ChaCha,
        ..Config::default()
    };
    let mut runner = TestRunner::new_with_rng(config, proptest::test_runner::TestRng::deterministic_rng(
        proptest::test_runner::RngAlgorithm::ChaCha,
    ));
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

/// Every suite by name.
pub fn all() -> Vec<(&'static str, Result<(), String>)> {
    vec![
        ("wedge associativity", run(gen::form_triple(), wedge_associative)),
        ("graded commutativity", run(gen::form_triple(), wedge_graded_commutative)),
        ("contraction", run(gen::form_triple(), contraction)),
        ("hodge star", run(gen::any_form(), star)),
        ("leibniz", run(gen::algebra_and_forms(), leibniz)),
        ("algebra round trip", run(gen::lie_algebra(), algebra_round_trip)),
        ("form round trip", run(gen::field_form(), form_round_trip)),
        (
            "document round trip",
            run(
                (2usize..=7).prop_flat_map(|n| {
                    (gen::two_step(n), gen::matrix(n), (0..=n).prop_flat_map(move |k| gen::form(n, k)))
                }),
                document_round_trip,
            ),
        ),
        ("field axioms", run(gen::field_triple(), field_axioms)),
        ("rank-nullity", run(gen::linear_system(), rank_nullity)),
        ("linearity", run(gen::lie_algebra(), linearity)),
    ]
}
