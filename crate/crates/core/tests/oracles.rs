mod common;

use common::gen::CATALOG;
use common::oracle;
use g2lie::catalog::reproduce_table1;
use g2lie::exterior::SquareMatrix;
use g2lie::gstruct::canonical_su3;
use g2lie::liealg::{solve_derivations, DerivationTemplate};
use g2lie::scalars::FieldElement;

fn flatten(m: &SquareMatrix<FieldElement>) -> Vec<FieldElement> {
    m.rows().into_iter().flatten().collect()
}

#[test]
fn general_solver_matches_bracket_identity() {
    for s in CATALOG.iter() {
        let brute = oracle::derivations(&s.h);
        let ours: Vec<_> = s.general.iter().map(flatten).collect();
        assert_eq!(ours.len(), brute.len(), "{}", s.entry.id);
        assert!(oracle::same_span(&ours, &brute, 36), "{}", s.entry.id);
    }
}

#[test]
fn template_solutions_are_stabilizing_derivations() {
    let su3 = canonical_su3();
    for s in CATALOG.iter() {
        for (t, form) in [(DerivationTemplate::sl3c(), su3.psi_plus()), (DerivationTemplate::sp6r(), su3.omega())] {
            let space = solve_derivations(&s.h, &t).unwrap();
            let ours: Vec<_> = t.basis_matrices(&space).unwrap().iter().map(flatten).collect();
            let brute = oracle::stabilizing_derivations(&s.h, form);
            assert!(oracle::same_span(&ours, &brute, 36), "{} {:?}", s.entry.id, t.shape);
        }
    }
}

#[test]
fn templates_are_the_stabilizers() {
    let su3 = canonical_su3();
    let abelian = g2lie::liealg::LieAlgebra::abelian(6);
    assert_eq!(oracle::stabilizing_derivations(&abelian, su3.psi_plus()).len(), 16);
    assert_eq!(oracle::stabilizing_derivations(&abelian, su3.omega()).len(), 21);
    // sl(3,C) also preserves psi_minus; adding omega cuts it down to su(3)
    let sl3c = oracle::stabilizing_derivations(&abelian, su3.psi_plus());
    let stab = |forms: &[&g2lie::gstruct::Form]| {
        let rows = forms.iter().flat_map(|f| oracle::stabilizer_equations(6, f)).collect();
        oracle::null_space(rows, 36)
    };
    assert!(oracle::same_span(&sl3c, &stab(&[su3.psi_plus(), su3.psi_minus()]), 36));
    assert_eq!(stab(&[su3.psi_plus(), su3.omega()]).len(), 8);
}

#[test]
fn sl3c_dimensions_from_the_oracle() {
    let psi = canonical_su3().psi_plus().clone();
    let dims: Vec<usize> = CATALOG.iter().map(|s| oracle::stabilizing_derivations(&s.h, &psi).len()).collect();
    assert_eq!(dims, [16, 1, 3, 3, 1, 3, 1, 0, 1, 1, 3, 1, 0, 0]);
    assert_eq!(dims, reproduce_table1().unwrap().dimensions());
}

#[test]
fn ce_d_matches_evaluation() {
    for s in CATALOG.iter() {
        let ext = s.h.extend(&common::gen::combination(&s.general, &[
            g2lie::scalars::rat(1, 2),
            g2lie::scalars::rat(-3, 1),
            g2lie::scalars::rat(2, 5),
        ]))
        .unwrap();
        for g in [&s.h, &ext] {
            for k in 0..=3 {
                for a in oracle::basis_forms(g.dim(), k) {
                    assert_eq!(g.ce_d(&a).unwrap(), oracle::ce_d_by_evaluation(g, &a), "{} {a}", s.entry.id);
                }
            }
        }
    }
}

#[test]
fn expansion_of_the_bad_algebra() {
    let g = g2lie::notation::parse_algebra("(0, 0, e^{12}, e^{34}, 0, 0)").unwrap();
    let r = g.jacobi_check().unwrap();
    assert_eq!(r.to_string(), "e^{124} at k=4");
    assert_eq!(oracle::ce_d_by_evaluation(&g, g.diff(4)).to_string(), "e^{124}");
}
