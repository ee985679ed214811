//! Random instantiations of the closed and coclosed constructions, and the
//! biconditional on perturbed inputs.

use g2lie::catalog::{fmou_catalog, table1_row_at};
use g2lie::exterior::KForm;
use g2lie::gstruct::{
    build_coclosed, canonical_g2_closed_candidate, canonical_g2_coclosed_candidate, canonical_su3, classify_g2,
    classify_su3, reduce_closed, reduce_coclosed,
};
use g2lie::liealg::{solve_derivations, DerivationTemplate, LieAlgebra};
use g2lie::notation::parse_algebra;
use g2lie::scalars::{rat, FieldElement, Rational};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

type F = FieldElement;

pub const PER_ALGEBRA: usize = 20;

#[derive(Default, Debug)]
pub struct Tally {
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn random_rational(rng: &mut StdRng) -> Rational {
    rat(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

fn random_values(rng: &mut StdRng, n: usize) -> Vec<F> {
    (0..n).map(|_| F::from_rational(random_rational(rng))).collect()
}

/// Every catalog row at every sample of its free constant: random
/// instantiations of the solved derivation give closed structures, and
/// reducing gives back 𝔥 with the canonical SU(3)-structure.
pub fn closed_instantiations(seed: u64) -> Tally {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut t = Tally::default();
    let phi = canonical_g2_closed_candidate();
    for entry in fmou_catalog() {
        for value in entry.sample_values() {
            let row = table1_row_at(&entry, value.as_ref()).unwrap();
            for _ in 0..PER_ALGEBRA {
                let values = random_values(&mut rng, row.free_parameters.len());
                let (g, _) = row.instantiate(&values).unwrap();
                let c = classify_g2(&g, &phi).unwrap();
                let back = reduce_closed(&g, &phi);
                let ok = c.closed
                    && g.jacobi_check().unwrap().passed()
                    && back.as_ref().is_ok_and(|(h, s)| h == &row.h && s == &canonical_su3());
                t.record(ok, || format!("{} at {values:?}: d phi = {}", entry.id, c.d_phi));
            }
        }
    }
    t
}

/// Half-flat inputs: every catalog algebra and the half-flat ideal of the
/// coclosed reduction example.
pub fn half_flat_algebras() -> Vec<(String, LieAlgebra<F>)> {
    let mut out: Vec<(String, LieAlgebra<F>)> =
        fmou_catalog().into_iter().map(|e| (e.id.to_string(), e.algebra().unwrap())).collect();
    out.push(("(e^{35}+e^{46},0,0,0,0,0)".into(), parse_algebra("(e^{35}+e^{46}, 0, 0, 0, 0, 0)").unwrap()));
    out
}

pub fn coclosed_instantiations(seed: u64) -> Tally {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut t = Tally::default();
    let su3 = canonical_su3();
    let template = DerivationTemplate::sp6r();
    for (name, h) in half_flat_algebras() {
        assert!(classify_su3(&h, &su3).unwrap().half_flat, "{name}");
        let space = solve_derivations(&h, &template).unwrap();
        for _ in 0..PER_ALGEBRA {
            let coeffs = random_values(&mut rng, space.dimension);
            let d = template.instantiate(&space.combination(&coeffs).unwrap()).unwrap();
            let built = build_coclosed(&h, &su3, &d);
            let ok = built.as_ref().is_ok_and(|(g, phi)| {
                classify_g2(g, phi).unwrap().coclosed
                    && reduce_coclosed(g, phi).is_ok_and(|(h2, s)| h2 == h && s == su3)
            });
            t.record(ok, || format!("{name}: {:?}", built.err()));
        }
    }
    t
}

/// A 2-step nilpotent algebra on a random split of a shuffled basis.
pub fn random_two_step(rng: &mut StdRng) -> LieAlgebra<F> {
    let mut idx: Vec<usize> = (1..=6).collect();
    idx.shuffle(rng);
    let split = rng.gen_range(2..=4);
    let (closed, targets) = idx.split_at(split);
    let mut diffs = vec![KForm::zero(6, 2); 6];
    for &k in targets {
        let mut de = KForm::zero(6, 2);
        for _ in 0..rng.gen_range(0..=2) {
            let i = *closed.choose(rng).unwrap();
            let j = *closed.choose(rng).unwrap();
            if i != j {
                let c = F::from_rational(random_rational(rng));
                de = de.try_add(&KForm::monomial(6, c, &[i, j]).unwrap()).unwrap();
            }
        }
        diffs[k - 1] = de;
    }
    LieAlgebra::new(diffs, true).unwrap()
}

/// On random algebras (mostly not symplectic half-flat) with random
/// template-shaped derivations: dφ ≠ 0 ⟺ dω ≠ 0 ∨ dψ₊ ≠ 0 for sl(3, ℂ),
/// and d*φ ≠ 0 ⟺ dω² ≠ 0 ∨ dψ₊ ≠ 0 for sp(6, ℝ). Runs until `want`
/// inputs of each kind failed the hypothesis.
pub fn perturbations(seed: u64, want: usize) -> (Tally, Tally) {
    let mut rng = StdRng::seed_from_u64(seed);
    let su3 = canonical_su3();
    let (closed_phi, coclosed_phi) = (canonical_g2_closed_candidate(), canonical_g2_coclosed_candidate());
    let (mut closed, mut coclosed) = (Tally::default(), Tally::default());
    let (mut non_shf, mut non_hf) = (0, 0);
    let mut rounds = 0;
    while (non_shf < want || non_hf < want) && rounds < 100 * want {
        rounds += 1;
        let h = random_two_step(&mut rng);
        let c = classify_su3(&h, &su3).unwrap();
        for (template, phi, tally, bad, hypothesis_fails) in [
            (DerivationTemplate::sl3c(), &closed_phi, &mut closed, &mut non_shf, !c.d_omega.is_zero() || !c.d_psi_plus.is_zero()),
            (DerivationTemplate::sp6r(), &coclosed_phi, &mut coclosed, &mut non_hf, !c.d_omega2.is_zero() || !c.d_psi_plus.is_zero()),
        ] {
            let space = solve_derivations(&h, &template).unwrap();
            let coeffs = random_values(&mut rng, space.dimension);
            let d = template.instantiate(&space.combination(&coeffs).unwrap()).unwrap();
            let g = h.extend(&d).unwrap();
            let gc = classify_g2(&g, phi).unwrap();
            let residual_nonzero = match template.shape {
                g2lie::liealg::Shape::Sl3c => !gc.d_phi.is_zero(),
                _ => !gc.d_star_phi.is_zero(),
            };
            if hypothesis_fails {
                *bad += 1;
            }
            tally.record(g.jacobi_check().unwrap().passed() && residual_nonzero == hypothesis_fails, || {
                format!("{h} with D = {d}: residual nonzero {residual_nonzero}, hypothesis fails {hypothesis_fails}")
            });
        }
    }
    assert!(non_shf >= want && non_hf >= want, "only {non_shf} / {non_hf} perturbations");
    (closed, coclosed)
}
