use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::json;

use g2lie::catalog::{check_fixture, lattice_fixture, reproduce_table1, verify_examples};
use g2lie::exterior::SquareMatrix;
use g2lie::gstruct::{
    build_closed, build_coclosed, canonical_g2_closed_candidate, canonical_g2_coclosed_candidate, canonical_su3,
    classify_g2, classify_su3, reduce_closed, reduce_coclosed, Form, G2Structure, SU3Structure,
};
use g2lie::liealg::{solve_derivations, DerivationTemplate, LieAlgebra};
use g2lie::notation::{format_matrix, parse_document, parse_param_document, Document};
use g2lie::scalars::{FieldElement, ParamExpr};
use g2lie::Error;

#[derive(Parser)]
#[command(name = "g2lie", version, about = "G2- and SU(3)-structures on Lie algebras, in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Template {
    Sl3c,
    Sp6r,
    General,
}

#[derive(Clone, Copy, ValueEnum)]
enum Build {
    Closed,
    Coclosed,
}

#[derive(Subcommand)]
enum Command {
    /// Check d^2 = 0 on every generator.
    CheckJacobi { file: PathBuf },
    /// Classify an SU(3)- or G2-structure (canonical forms unless given).
    #[command(group(ArgGroup::new("kind").required(true).args(["su3", "g2"])))]
    Classify {
        #[arg(long)]
        su3: bool,
        #[arg(long)]
        g2: bool,
        file: PathBuf,
        /// File with `omega`, `psi_plus`, `psi_minus` or `phi`.
        #[arg(long)]
        forms: Option<PathBuf>,
    },
    /// Derivations of the algebra inside a matrix template.
    SolveDerivations {
        #[arg(long, value_enum)]
        template: Template,
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// The extension by a derivation, optionally carrying a G2-structure.
    Extend {
        file: PathBuf,
        #[arg(long)]
        derivation: PathBuf,
        #[arg(long, value_enum)]
        build: Option<Build>,
    },
    /// Recover the SU(3)-structure on the ideal of a 7-dimensional algebra.
    #[command(group(ArgGroup::new("kind").required(true).args(["closed", "coclosed"])))]
    Reduce {
        #[arg(long)]
        closed: bool,
        #[arg(long)]
        coclosed: bool,
        file: PathBuf,
    },
    /// Solve, extend and build for every catalog entry.
    ReproduceTable1 {
        #[arg(long)]
        json: bool,
        /// Also write table1.txt and table1.json here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the worked examples and sign conventions.
    VerifyExamples,
    /// Check the lattice identities of a fixture.
    LatticeCheck {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        example: u8,
    },
}

enum Failure {
    Math(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. }
            | Error::RepeatedIndex(_)
            | Error::IndexOutOfRange { .. }
            | Error::DimensionMismatch { .. }
            | Error::DegreeMismatch { .. }
            | Error::Reducible { .. }
            | Error::NotMonic
            | Error::DegreeZero
            | Error::Parametric(_)
            | Error::UnknownParameter(_) => Failure::Input(e.to_string()),
            _ => Failure::Math(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn numeric_algebra(doc: &Document, path: &Path) -> Result<LieAlgebra<FieldElement>, Failure> {
    let alg = doc
        .algebra
        .as_ref()
        .ok_or_else(|| Failure::Input(format!("{}: no structure equations", path.display())))?;
    alg.to_scalar()
        .ok_or_else(|| Failure::Input(format!("{}: structure equations must be numeric", path.display())))
}

fn numeric_form(doc: &Document, name: &str) -> Result<Option<Form>, Failure> {
    doc.form(name)
        .map(|f| f.to_scalar().ok_or_else(|| Failure::Input(format!("form `{name}` must be numeric"))))
        .transpose()
}

fn load(path: &Path) -> Result<Document, Failure> {
    Ok(parse_document(&read(path)?)?)
}

fn su3_from(doc: &Document) -> Result<SU3Structure, Failure> {
    let omega = numeric_form(doc, "omega")?;
    let plus = numeric_form(doc, "psi_plus")?;
    match (omega, plus) {
        (None, None) => Ok(canonical_su3()),
        (Some(omega), Some(plus)) => {
            let minus = match numeric_form(doc, "psi_minus")? {
                Some(m) => m,
                None => plus.hodge_star()?,
            };
            Ok(SU3Structure::new(omega, plus, minus)?)
        }
        _ => Err(Failure::Input("give both `omega` and `psi_plus`".into())),
    }
}

fn g2_from(doc: &Document, closed: bool) -> Result<G2Structure, Failure> {
    match numeric_form(doc, "phi")? {
        Some(phi) => Ok(G2Structure::new(phi)?),
        None if closed => Ok(canonical_g2_closed_candidate()),
        None => Ok(canonical_g2_coclosed_candidate()),
    }
}

fn check_jacobi(file: &Path) -> Outcome {
    let doc = load(file)?;
    let g = numeric_algebra(&doc, file)?;
    let report = g.jacobi_check()?;
    if report.passed() {
        println!("PASS");
    } else {
        println!("FAIL");
        for (k, r) in &report.residuals {
            println!("residual: {r} at k={k}");
        }
    }
    Ok(report.passed())
}

fn classify(su3: bool, file: &Path, forms: Option<&Path>) -> Outcome {
    let doc = load(file)?;
    let g = numeric_algebra(&doc, file)?;
    let form_doc = match forms {
        Some(p) => load(p)?,
        None => doc,
    };
    if su3 {
        let c = classify_su3(&g, &su3_from(&form_doc)?)?;
        println!("half-flat: {}, symplectic half-flat: {}", c.half_flat, c.symplectic_half_flat);
        println!("d omega = {}", c.d_omega);
        println!("d omega^2 = {}", c.d_omega2);
        println!("d psi_plus = {}", c.d_psi_plus);
    } else {
        let c = classify_g2(&g, &g2_from(&form_doc, true)?)?;
        println!("closed: {}, coclosed: {}", c.closed, c.coclosed);
        println!("d phi = {}", c.d_phi);
        println!("d *phi = {}", c.d_star_phi);
    }
    Ok(true)
}

fn solve(template: Template, file: &Path, as_json: bool) -> Outcome {
    let doc = load(file)?;
    let h = numeric_algebra(&doc, file)?;
    let t = match template {
        Template::Sl3c => DerivationTemplate::sl3c(),
        Template::Sp6r => DerivationTemplate::sp6r(),
        Template::General => DerivationTemplate::general(h.dim()),
    };
    let space = solve_derivations(&h, &t)?;
    let basis = t.basis_matrices(&space)?;
    let general = t.from_solution(&space)?;
    if as_json {
        let matrices: Vec<Vec<Vec<String>>> = basis
            .iter()
            .map(|m| m.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect())
            .collect();
        let v = json!({
            "algebra": h.to_string(),
            "dimension": space.dimension,
            "free_coefficients": space.pivot_names().iter().map(|p| p.as_str()).collect::<Vec<_>>(),
            "solution_space": serde_json::to_value(&space).map_err(|e| Failure::Math(e.to_string()))?,
            "basis_matrices": matrices,
        });
        println!("{}", serde_json::to_string_pretty(&v).expect("json"));
    } else {
        println!("dimension: {}", space.dimension);
        let pivots = space.pivot_names();
        let names: Vec<&str> = pivots.iter().map(|p| p.as_str()).collect();
        println!("free coefficients: [{}]", names.join(", "));
        println!("D = {}", format_matrix(&general));
        for (i, m) in basis.iter().enumerate() {
            println!("basis {}:\n{}", i + 1, format_matrix(m));
        }
    }
    Ok(true)
}

fn print_structure<C: g2lie::scalars::Coeff>(g: &LieAlgebra<C>, s: &G2Structure) -> Outcome {
    let c = classify_g2(g, s)?;
    println!("g = {g}");
    println!("phi = {}", s.phi());
    println!("*phi = {}", s.star_phi());
    println!("closed: {}, coclosed: {}", c.closed, c.coclosed);
    Ok(true)
}

fn extend(file: &Path, derivation: &Path, build: Option<Build>) -> Outcome {
    let doc = load(file)?;
    let h = numeric_algebra(&doc, file)?;
    let mdoc = parse_param_document(&read(derivation)?)?;
    let d: SquareMatrix<ParamExpr> = mdoc
        .matrix("D")
        .or_else(|| mdoc.matrices.first().map(|(_, m)| m))
        .cloned()
        .ok_or_else(|| Failure::Input(format!("{}: no matrix", derivation.display())))?;
    match build {
        None => {
            let g = h.to_param().extend(&d)?;
            println!("g = {g}");
            let report = g.jacobi_check()?;
            if report.passed() {
                println!("jacobi: PASS");
            } else {
                println!("jacobi: FAIL");
                for (k, r) in &report.residuals {
                    println!("residual: {r} at k={k}");
                }
            }
            Ok(report.passed())
        }
        Some(Build::Closed) => {
            let (g, s) = build_closed(&h, &su3_from(&doc)?, &d)?;
            print_structure(&g, &s)
        }
        Some(Build::Coclosed) => {
            let (g, s) = build_coclosed(&h, &su3_from(&doc)?, &d)?;
            print_structure(&g, &s)
        }
    }
}

fn reduce(closed: bool, file: &Path) -> Outcome {
    let doc = parse_param_document(&read(file)?)?;
    let g = doc
        .algebra
        .clone()
        .ok_or_else(|| Failure::Input(format!("{}: no structure equations", file.display())))?;
    let s = g2_from(&doc, closed)?;
    let (h, su3) = if closed { reduce_closed(&g, &s)? } else { reduce_coclosed(&g, &s)? };
    let c = classify_su3(&h, &su3)?;
    println!("h = {h}");
    println!("omega = {}", su3.omega());
    println!("psi_plus = {}", su3.psi_plus());
    println!("psi_minus = {}", su3.psi_minus());
    println!("half-flat: {}, symplectic half-flat: {}", c.half_flat, c.symplectic_half_flat);
    Ok(true)
}

fn table1(as_json: bool, out: Option<&Path>) -> Outcome {
    let report = reproduce_table1()?;
    let text = report.to_text();
    let js = serde_json::to_string_pretty(&report.to_json()).expect("json") + "\n";
    if let Some(dir) = out {
        let write = |name: &str, body: &str| {
            fs::create_dir_all(dir)
                .and_then(|_| fs::write(dir.join(name), body))
                .map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))
        };
        write("table1.txt", &text)?;
        write("table1.json", &js)?;
    }
    print!("{}", if as_json { js } else { text });
    Ok(report.all_closed())
}

fn examples() -> Outcome {
    let report = verify_examples()?;
    print!("{report}");
    Ok(report.passed())
}

fn lattice(example: u8) -> Outcome {
    let data = lattice_fixture(example).ok_or_else(|| Failure::Input(format!("no fixture {example}")))?;
    let report = check_fixture(&data)?;
    let mut out = format!("lattice: {}\n", data.name);
    let _ = write!(out, "{report}");
    print!("{out}");
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::CheckJacobi { file } => check_jacobi(file),
        Command::Classify { su3, file, forms, .. } => classify(*su3, file, forms.as_deref()),
        Command::SolveDerivations { template, file, json } => solve(*template, file, *json),
        Command::Extend { file, derivation, build } => extend(file, derivation, *build),
        Command::Reduce { closed, file, .. } => reduce(*closed, file),
        Command::ReproduceTable1 { json, out } => table1(*json, out.as_deref()),
        Command::VerifyExamples => examples(),
        Command::LatticeCheck { example } => lattice(*example),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Math(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
