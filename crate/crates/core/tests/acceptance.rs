//! One PASS/FAIL line per acceptance criterion.
//!
//! Runs without the libtest harness so the lines always print. A FAIL is
//! tolerated only when it is exactly one of the known discrepancies listed
//! in `KNOWN`; any other failure makes the binary exit nonzero.

mod common;

use std::process::ExitCode;

use common::{bicond, oracle, props};
use g2lie::catalog::{check_fixture, fmou_catalog, lattice_fixture, reproduce_table1, verify_examples};
use g2lie::exterior::{KForm, SquareMatrix};
use g2lie::gstruct::{
    canonical_g2_closed_candidate, canonical_su3, g2_metric, phi_volume, su3_acs, su3_metric, wedge_power,
};
use g2lie::liealg::{solve_derivations, DerivationTemplate};
use g2lie::scalars::{rat, FieldElement};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

type F = FieldElement;

struct Outcome {
    passed: bool,
    detail: String,
    /// Reasons for failure; empty when passed.
    problems: Vec<String>,
}

impl Outcome {
    fn from_problems(ok_detail: String, problems: Vec<String>) -> Self {
        Outcome {
            passed: problems.is_empty(),
            detail: if problems.is_empty() { ok_detail } else { problems.join("; ") },
            problems,
        }
    }
}

const PRINTED_DIMS: [usize; 14] = [16, 1, 3, 3, 1, 3, 0, 0, 1, 1, 3, 1, 0, 0];

/// Failures traced to the source data, each with the exact problem text
/// it must produce.
const KNOWN: [(u8, &str); 2] = [
    (1, "g_{6,38}^0: derivation space has dimension 1, printed 0"),
    (4, "fixture 1: PA = phi_t0 P fails (reordering the rows of P as (1,3,2,4,5,6) gives PA = phi_t0 P)"),
];

fn table1() -> Outcome {
    let report = reproduce_table1().unwrap();
    let mut problems = Vec::new();
    for (row, printed) in report.rows.iter().zip(PRINTED_DIMS) {
        if row.solution.dimension != printed {
            problems.push(format!(
                "{}: derivation space has dimension {}, printed {printed}",
                row.entry.id, row.solution.dimension
            ));
        } else if !row.solved_display_matches {
            problems.push(format!("{}: basis differs from the printed solution", row.entry.id));
        }
        if !row.d_phi.is_zero() {
            problems.push(format!("{}: d phi = {}", row.entry.id, row.d_phi));
        }
    }
    let ok = format!("dimensions {:?}, d phi = 0 on all 14 parametric extensions", report.dimensions());
    Outcome::from_problems(ok, problems)
}

fn biconditionals() -> Outcome {
    let closed = bicond::closed_instantiations(1);
    let coclosed = bicond::coclosed_instantiations(2);
    let (pc, pcc) = bicond::perturbations(3, bicond::PER_ALGEBRA);
    let problems: Vec<String> = [&closed, &coclosed, &pc, &pcc].iter().flat_map(|t| t.failures.clone()).collect();
    let ok = format!(
        "{} closed and {} coclosed instantiations, {} + {} perturbations",
        closed.cases, coclosed.cases, pc.cases, pcc.cases
    );
    Outcome::from_problems(ok, problems)
}

fn examples() -> Outcome {
    let report = verify_examples().unwrap();
    let problems: Vec<String> = report
        .examples
        .iter()
        .flat_map(|e| e.claims.iter().filter(|c| c.status == g2lie::catalog::ClaimStatus::Fail))
        .map(|c| format!("{}: {}", c.statement, c.detail))
        .collect();
    let claims: usize = report.examples.iter().map(|e| e.claims.len()).sum();
    let ok = format!(
        "{} examples, {claims} claims, {} adjudicated, {} sign variants recorded",
        report.examples.len(),
        report.adjudications().len(),
        report.sign_variants.len()
    );
    Outcome::from_problems(ok, problems)
}

fn lattices() -> Outcome {
    let mut problems = Vec::new();
    for k in [1, 2] {
        let r = check_fixture(&lattice_fixture(k).unwrap()).unwrap();
        for c in r.checks.iter().filter(|c| !c.passed) {
            let note = r.diagnostic.as_deref().unwrap_or("no diagnostic");
            problems.push(format!("fixture {k}: {} fails ({note})", c.name));
        }
    }
    Outcome::from_problems("five identities on both fixtures".into(), problems)
}

fn metric_identities() -> Outcome {
    let mut problems = Vec::new();
    let su3 = canonical_su3();
    let g2 = canonical_g2_closed_candidate();
    if !g2_metric(g2.phi()).unwrap().is_identity() {
        problems.push("g_phi is not the identity".into());
    }
    if !su3_metric(su3.omega(), su3.psi_plus()).unwrap().is_identity() {
        problems.push("su3 metric is not the identity".into());
    }
    let j = su3_acs(su3.psi_plus(), su3.omega()).unwrap();
    if j.try_mul(&j).unwrap() != SquareMatrix::identity(6).neg() {
        problems.push("(J*)^2 != -id".into());
    }
    let w3 = wedge_power(su3.omega(), 3).unwrap().scale(&F::from_rational(rat(2, 3))).unwrap();
    if su3.psi_plus().wedge(su3.psi_minus()).unwrap() != w3 {
        problems.push("psi_plus ^ psi_minus != (2/3) omega^3".into());
    }
    if phi_volume(&g2).unwrap() != F::from_int(7) {
        problems.push("phi ^ *phi != 7 vol".into());
    }
    let mut monomials = 0;
    for n in [6, 7] {
        for k in 0..=n {
            for a in oracle::basis_forms(n, k) {
                monomials += 1;
                let sign = if (k * (n - k)) % 2 == 0 { F::one() } else { -F::one() };
                if a.hodge_star().unwrap().hodge_star().unwrap() != a.scale(&sign).unwrap() {
                    problems.push(format!("** on {a} in dimension {n}"));
                }
            }
        }
    }
    let ok = format!("metrics are the identity, J^2 = -id, form identities hold, ** checked on {monomials} monomials");
    Outcome::from_problems(ok, problems)
}

fn oracle_equivalence() -> Outcome {
    let mut problems = Vec::new();
    let catalog = fmou_catalog();
    let algebras: Vec<_> = catalog.iter().map(|e| (e.id, e.algebra().unwrap())).collect();
    for (id, h) in &algebras {
        let t = DerivationTemplate::general(6);
        let ours: Vec<Vec<F>> = t
            .basis_matrices(&solve_derivations(h, &t).unwrap())
            .unwrap()
            .iter()
            .map(|m| m.rows().into_iter().flatten().collect())
            .collect();
        let brute = oracle::derivations(h);
        if ours.len() != brute.len() || !oracle::same_span(&ours, &brute, 36) {
            problems.push(format!("{id}: general derivations {} vs brute force {}", ours.len(), brute.len()));
        }
    }
    let mut rng = StdRng::seed_from_u64(6);
    let chosen: Vec<_> = algebras.choose_multiple(&mut rng, 3).collect();
    let mut forms = 0;
    for (id, h) in &chosen {
        for k in 0..=3 {
            for a in oracle::basis_forms(6, k) {
                forms += 1;
                let ours: KForm<F> = h.ce_d(&a).unwrap();
                if ours != oracle::ce_d_by_evaluation(h, &a) {
                    problems.push(format!("{id}: d({a})"));
                }
            }
        }
    }
    let names: Vec<&str> = chosen.iter().map(|(id, _)| *id).collect();
    let ok = format!("general solver agrees on 14 algebras; ce_d agrees on {forms} basis forms of {names:?}");
    Outcome::from_problems(ok, problems)
}

fn property_suites() -> Outcome {
    let results = props::all();
    let problems: Vec<String> =
        results.iter().filter_map(|(name, r)| r.as_ref().err().map(|e| format!("{name}: {e}"))).collect();
    let names: Vec<&str> = results.iter().map(|(n, _)| *n).collect();
    let ok = format!("{} cases each of {}", props::CASES, names.join(", "));
    Outcome::from_problems(ok, problems)
}

fn main() -> ExitCode {
    let criteria: [(u8, &str, fn() -> Outcome); 7] = [
        (1, "table reproduction", table1),
        (2, "closed/coclosed biconditionals", biconditionals),
        (3, "worked examples", examples),
        (4, "lattice identities", lattices),
        (5, "metric and form identities", metric_identities),
        (6, "oracle equivalence", oracle_equivalence),
        (7, "property suites", property_suites),
    ];
    let mut unexpected = Vec::new();
    for (n, title, run) in criteria {
        let out = run();
        let status = if out.passed { "PASS" } else { "FAIL" };
        println!("{status} criterion {n} ({title}): {}", out.detail);
        let known: Vec<&str> = KNOWN.iter().filter(|(k, _)| *k == n).map(|(_, p)| *p).collect();
        if out.problems != known {
            unexpected.push(n);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: every FAIL above is a known discrepancy in the source data");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected result in criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
