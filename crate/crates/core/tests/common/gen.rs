//! Random inputs for the property suites.

use std::sync::LazyLock;

use g2lie::catalog::{fmou_catalog, CatalogEntry};
use g2lie::exterior::{Blade, KForm, SquareMatrix};
use g2lie::liealg::{solve_derivations, DerivationTemplate, LieAlgebra};
use g2lie::scalars::{rat, FieldElement, NumberField, Rational};
use proptest::prelude::*;
use proptest::sample::subsequence;

type F = FieldElement;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=6, 1i64..=4, any::<bool>()).prop_map(|(p, q, neg)| rat(if neg { -p } else { p }, q))
}

pub fn scalar() -> impl Strategy<Value = F> {
    rational().prop_map(F::from_rational)
}

pub fn fields() -> Vec<NumberField> {
    let poly = |c: &[i64]| c.iter().map(|&x| rat(x, 1)).collect::<Vec<_>>();
    vec![
        NumberField::rationals(),
        NumberField::quadratic(5).unwrap(),
        NumberField::new(poly(&[-2, 0, 0, 1])).unwrap(),
        NumberField::new(poly(&[-3, 0, 0, 0, 0, 0, 1])).unwrap(),
    ]
}

pub fn field() -> impl Strategy<Value = NumberField> {
    proptest::sample::select(fields())
}

pub fn element_of(f: NumberField) -> impl Strategy<Value = F> {
    let d = f.degree();
    proptest::collection::vec(rational(), d).prop_map(move |c| f.element(c))
}

/// Three elements of one random field.
pub fn field_triple() -> impl Strategy<Value = (F, F, F)> {
    field().prop_flat_map(|f| (element_of(f.clone()), element_of(f.clone()), element_of(f)))
}

/// A random k-form in dimension n with up to five terms.
pub fn form(n: usize, k: usize) -> impl Strategy<Value = KForm<F>> {
    let idx = subsequence((1..=n).collect::<Vec<_>>(), k);
    proptest::collection::vec((idx, scalar()), 0..=5).prop_map(move |terms| {
        KForm::from_terms(n, k, terms.into_iter().map(|(i, c)| (Blade::sorted(&i).unwrap(), c))).unwrap()
    })
}

pub fn any_form() -> impl Strategy<Value = KForm<F>> {
    (1usize..=7).prop_flat_map(|n| (0..=n).prop_flat_map(move |k| form(n, k)))
}

/// Three forms of random degrees in one dimension.
pub fn form_triple() -> impl Strategy<Value = (KForm<F>, KForm<F>, KForm<F>)> {
    (1usize..=7).prop_flat_map(|n| {
        (0..=n, 0..=n, 0..=n).prop_flat_map(move |(p, q, r)| (form(n, p), form(n, q), form(n, r)))
    })
}

/// A form over a random number field, for round trips.
pub fn field_form() -> impl Strategy<Value = (NumberField, KForm<F>)> {
    (field(), 1usize..=7).prop_flat_map(|(f, n)| {
        (0..=n).prop_flat_map(move |k| {
            let idx = subsequence((1..=n).collect::<Vec<_>>(), k);
            let f2 = f.clone();
            proptest::collection::vec((idx, element_of(f.clone())), 0..=4).prop_map(move |terms| {
                let form =
                    KForm::from_terms(n, k, terms.into_iter().map(|(i, c)| (Blade::sorted(&i).unwrap(), c))).unwrap();
                (f2.clone(), form)
            })
        })
    })
}

pub struct Seeded {
    pub entry: CatalogEntry,
    pub h: LieAlgebra<F>,
    pub general: Vec<SquareMatrix<F>>,
}

/// Catalog algebras with a basis of all their derivations.
pub static CATALOG: LazyLock<Vec<Seeded>> = LazyLock::new(|| {
    fmou_catalog()
        .into_iter()
        .map(|entry| {
            let h = entry.algebra().unwrap();
            let t = DerivationTemplate::general(6);
            let general = t.basis_matrices(&solve_derivations(&h, &t).unwrap()).unwrap();
            Seeded { entry, h, general }
        })
        .collect()
});

pub fn combination(basis: &[SquareMatrix<F>], coeffs: &[Rational]) -> SquareMatrix<F> {
    basis.iter().zip(coeffs).fold(SquareMatrix::zero(6), |acc, (m, c)| {
        acc.try_add(&m.scale(&F::from_rational(c.clone())).unwrap()).unwrap()
    })
}

/// A 2-step nilpotent algebra: de^k for k in `targets` is a random
/// combination of e^{ij} with i, j among the other indices, which are closed.
pub fn two_step(n: usize) -> impl Strategy<Value = LieAlgebra<F>> {
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    (
        Just((1..=n).collect::<Vec<_>>()).prop_shuffle(),
        1..n,
        proptest::collection::vec(proptest::collection::vec((0..pairs.len(), rational()), 0..=3), n),
    )
        .prop_map(move |(perm, split, raw)| {
            let (closed, targets) = perm.split_at(split.max(1).min(n - 1));
            let mut diffs = vec![KForm::zero(n, 2); n];
            for (&k, terms) in targets.iter().zip(&raw) {
                let mut de = KForm::zero(n, 2);
                for &(p, ref c) in terms {
                    let (i, j) = pairs[p];
                    let (i, j) = (closed[i % closed.len()], closed[j % closed.len()]);
                    if i != j {
                        let t = KForm::monomial(n, F::from_rational(c.clone()), &[i, j]).unwrap();
                        de = de.try_add(&t).unwrap();
                    }
                }
                diffs[k - 1] = de;
            }
            LieAlgebra::new(diffs, true).unwrap()
        })
}

/// A catalog algebra, or its extension by a random derivation, or a random
/// 2-step nilpotent algebra.
pub fn lie_algebra() -> impl Strategy<Value = LieAlgebra<F>> {
    let seeded = (0..CATALOG.len(), proptest::collection::vec(rational(), 36), any::<bool>()).prop_map(
        |(i, coeffs, extend)| {
            let s = &CATALOG[i];
            if extend {
                s.h.extend(&combination(&s.general, &coeffs)).unwrap()
            } else {
                s.h.clone()
            }
        },
    );
    prop_oneof![seeded, (2usize..=7).prop_flat_map(two_step)]
}

/// An algebra with two forms in its dimension.
pub fn algebra_and_forms() -> impl Strategy<Value = (LieAlgebra<F>, KForm<F>, KForm<F>)> {
    lie_algebra().prop_flat_map(|g| {
        let n = g.dim();
        (Just(g), 0..n, 0..n).prop_flat_map(move |(g, p, q)| (Just(g), form(n, p), form(n, q)))
    })
}

/// A homogeneous linear system in `m` unknowns.
pub fn linear_system() -> impl Strategy<Value = (usize, Vec<Vec<Rational>>)> {
    (1usize..=8).prop_flat_map(|m| {
        (Just(m), proptest::collection::vec(proptest::collection::vec(rational(), m), 0..=8))
    })
}

pub fn matrix(n: usize) -> impl Strategy<Value = SquareMatrix<F>> {
    proptest::collection::vec(proptest::collection::vec(scalar(), n), n)
        .prop_map(|rows| SquareMatrix::from_rows(rows).unwrap())
}
