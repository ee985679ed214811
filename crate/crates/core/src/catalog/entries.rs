use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gstruct::{canonical_su3, classify_su3};
use crate::liealg::{DerivationTemplate, LieAlgebra};
use crate::notation::{parse_param_algebra, parse_scalar};
use crate::scalars::{rat, FieldElement, NumberField, Param, ParamExpr, Rational};

/// A real constant the structure equations depend on.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeConstant {
    pub name: &'static str,
    pub constraint: &'static str,
    /// Name of the parameter used in the stored text. When `reciprocal` is
    /// set the text is written in 1/value, which keeps it affine.
    pub placeholder: &'static str,
    pub reciprocal: bool,
    pub samples: Vec<Rational>,
    pub default: Rational,
}

impl FreeConstant {
    /// Value to substitute for the placeholder.
    pub fn placeholder_value(&self, value: &Rational) -> Result<Rational> {
        if self.reciprocal {
            if value == &rat(0, 1) {
                return Err(Error::DivisionByZero);
            }
            Ok(rat(1, 1) / value)
        } else {
            Ok(value.clone())
        }
    }
}

/// Which printed form of the structure equations a variant comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum VariantSource {
    /// The classification list.
    List,
    /// The solved extension with every derivation parameter set to zero.
    Extension,
}

impl fmt::Display for VariantSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VariantSource::List => "list",
            VariantSource::Extension => "extension",
        })
    }
}

/// Jacobi and symplectic half-flat status of one printed variant.
#[derive(Clone, Debug, PartialEq)]
pub struct VariantCheck {
    pub source: VariantSource,
    pub diffs: String,
    pub jacobi: bool,
    pub symplectic_half_flat: bool,
}

impl VariantCheck {
    pub fn valid(&self) -> bool {
        self.jacobi && self.symplectic_half_flat
    }
}

/// Shape of the derivation space printed for an entry.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SolvedDisplay {
    /// All of sl(3, ℂ).
    Full,
    /// Sparse (row, column, entry) list; empty means only D = 0.
    Entries(&'static [(usize, usize, &'static str)]),
}

/// One six-dimensional Lie algebra with the canonical symplectic half-flat
/// structure.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub printed_names: Vec<&'static str>,
    pub field: NumberField,
    pub free_constant: Option<FreeConstant>,
    pub list_text: &'static str,
    /// The seven-dimensional extension as printed, parametric in the free
    /// derivation coefficients.
    pub extension_text: &'static str,
    pub solved: SolvedDisplay,
}

impl CatalogEntry {
    fn header(&self) -> String {
        if self.field.is_rationals() {
            String::new()
        } else {
            format!("field: {}\n", self.field.min_poly_string())
        }
    }

    fn parse(&self, text: &str) -> Result<LieAlgebra<ParamExpr>> {
        parse_param_algebra(&format!("{}{}", self.header(), text))
    }

    /// The printed extension, symbolic in derivation parameters and in the
    /// placeholder.
    pub fn extension_display(&self) -> Result<LieAlgebra<ParamExpr>> {
        self.parse(self.extension_text)
    }

    /// The structure equations of a variant, possibly depending on the
    /// placeholder.
    pub fn symbolic(&self, source: VariantSource) -> Result<LieAlgebra<ParamExpr>> {
        match source {
            VariantSource::List => self.parse(self.list_text),
            VariantSource::Extension => {
                let ext = self.extension_display()?;
                let zero: BTreeMap<Param, ParamExpr> = ext
                    .diffs()
                    .iter()
                    .flat_map(|f| f.terms().values().flat_map(|c| c.params().cloned().collect::<Vec<_>>()))
                    .filter(|p| Some(p.as_str()) != self.free_constant.as_ref().map(|c| c.placeholder))
                    .map(|p| (p, ParamExpr::zero()))
                    .collect();
                let ext = ext.map(|f| f.substitute(&zero))?;
                Ok(ext.split_extension()?.0)
            }
        }
    }

    fn placeholder_map(&self, value: Option<&Rational>) -> Result<BTreeMap<Param, FieldElement>> {
        let mut map = BTreeMap::new();
        if let Some(c) = &self.free_constant {
            let v = value.unwrap_or(&c.default);
            map.insert(Param::new(c.placeholder), FieldElement::from_rational(c.placeholder_value(v)?));
        }
        Ok(map)
    }

    /// Substitutes the free constant (default value when `value` is `None`).
    pub fn instantiate(&self, alg: &LieAlgebra<ParamExpr>, value: Option<&Rational>) -> Result<LieAlgebra<FieldElement>> {
        let map = self.placeholder_map(value)?;
        alg.map(|f| f.eval(&map))
    }

    /// Substitutes the free constant, leaving other parameters in place.
    pub fn fix_constant(&self, alg: &LieAlgebra<ParamExpr>, value: Option<&Rational>) -> Result<LieAlgebra<ParamExpr>> {
        let map: BTreeMap<Param, ParamExpr> = self
            .placeholder_map(value)?
            .into_iter()
            .map(|(p, v)| (p, ParamExpr::constant(v)))
            .collect();
        alg.map(|f| f.substitute(&map))
    }

    /// Values of the free constant to test: its samples, or a single `None`.
    pub fn sample_values(&self) -> Vec<Option<Rational>> {
        match &self.free_constant {
            Some(c) => c.samples.iter().cloned().map(Some).collect(),
            None => vec![None],
        }
    }

    /// Jacobi and classification for one variant over every sample value.
    pub fn check_variant(&self, source: VariantSource) -> Result<VariantCheck> {
        let sym = self.symbolic(source)?;
        let mut jacobi = true;
        let mut shf = true;
        for v in self.sample_values() {
            let h = self.instantiate(&sym, v.as_ref())?;
            jacobi &= h.jacobi_check()?.passed();
            if jacobi {
                shf &= classify_su3(&h, &canonical_su3())?.symplectic_half_flat;
            }
        }
        Ok(VariantCheck {
            source,
            diffs: sym.to_string(),
            jacobi,
            symplectic_half_flat: jacobi && shf,
        })
    }

    /// Both printed variants, with duplicates removed.
    pub fn variants(&self) -> Result<Vec<VariantCheck>> {
        let list = self.check_variant(VariantSource::List)?;
        let ext = self.check_variant(VariantSource::Extension)?;
        if self.symbolic(VariantSource::List)? == self.symbolic(VariantSource::Extension)? {
            Ok(vec![list])
        } else {
            Ok(vec![list, ext])
        }
    }

    /// The first valid variant, list first.
    pub fn adjudicate(&self) -> Result<VariantSource> {
        self.variants()?
            .into_iter()
            .find(|v| v.valid())
            .map(|v| v.source)
            .ok_or_else(|| Error::Precondition(format!("{}: no printed variant is symplectic half-flat", self.id)))
    }

    /// Structure equations of the adjudicated variant, symbolic in the free
    /// constant.
    pub fn symbolic_algebra(&self) -> Result<LieAlgebra<ParamExpr>> {
        self.symbolic(self.adjudicate()?)
    }

    /// The adjudicated structure equations at a value of the free constant.
    pub fn algebra_at(&self, value: Option<&Rational>) -> Result<LieAlgebra<FieldElement>> {
        self.instantiate(&self.symbolic_algebra()?, value)
    }

    /// The adjudicated structure equations at the default value.
    pub fn algebra(&self) -> Result<LieAlgebra<FieldElement>> {
        self.algebra_at(None)
    }

    /// dω and dψ₊ of the canonical structure computed with the constant
    /// left symbolic. Structure constants enter linearly, so this is exact
    /// in the constant.
    pub fn symbolically_closed(&self) -> Result<bool> {
        let h = self.symbolic_algebra()?;
        let c = classify_su3(&h, &canonical_su3())?;
        Ok(c.symplectic_half_flat)
    }

    /// The printed solved derivation as a parametric matrix.
    pub fn solved_display(&self) -> Result<crate::exterior::SquareMatrix<ParamExpr>> {
        match self.solved {
            SolvedDisplay::Full => Ok(DerivationTemplate::sl3c().matrix),
            SolvedDisplay::Entries(list) => {
                let mut m = crate::exterior::SquareMatrix::zero(6);
                for &(i, j, s) in list {
                    m.set(i, j, parse_scalar(s, &self.field)?);
                }
                Ok(m)
            }
        }
    }
}

fn free_constant(name: &'static str, constraint: &'static str, placeholder: &'static str, reciprocal: bool, samples: &[(i64, i64)], default: (i64, i64)) -> FreeConstant {
    FreeConstant {
        name,
        constraint,
        placeholder,
        reciprocal,
        samples: samples.iter().map(|&(n, d)| rat(n, d)).collect(),
        default: rat(default.0, default.1),
    }
}

const G57_D: &[(usize, usize, &str)] = &[
    (1, 1, "a11"),
    (2, 2, "a11"),
    (1, 3, "a13"),
    (2, 4, "a13"),
    (3, 1, "a31"),
    (4, 2, "a31"),
    (3, 3, "-a11"),
    (4, 4, "-a11"),
];

const ROTATION_D: &[(usize, usize, &str)] = &[(1, 3, "a13"), (2, 4, "a13"), (3, 1, "-a13"), (4, 2, "-a13")];

/// The fourteen six-dimensional solvable Lie algebras carrying the
/// canonical symplectic half-flat structure, in classification order.
pub fn fmou_catalog() -> Vec<CatalogEntry> {
    let q = NumberField::rationals();
    let sixth_root_of_three = NumberField::new(vec![rat(-3, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)])
        .expect("x^6-3 is irreducible");
    let entry = |id, names: &[&'static str], list_text, extension_text, solved| CatalogEntry {
        id,
        printed_names: names.to_vec(),
        field: q.clone(),
        free_constant: None,
        list_text,
        extension_text,
        solved,
    };
    vec![
        entry(
            "a",
            &["a"],
            "(0, 0, 0, 0, 0, 0)",
            "(a11*e^{17}-a12*e^{27}+a31*e^{37}-a32*e^{47}+a51*e^{57}-a52*e^{67}, \
              a12*e^{17}+a11*e^{27}+a32*e^{37}+a31*e^{47}+a52*e^{57}+a51*e^{67}, \
              a13*e^{17}-a14*e^{27}+a33*e^{37}-a34*e^{47}+a53*e^{57}-a54*e^{67}, \
              a14*e^{17}+a13*e^{27}+a34*e^{37}+a33*e^{47}+a54*e^{57}+a53*e^{67}, \
              a15*e^{17}-a16*e^{27}+a35*e^{37}-a36*e^{47}+(-a11-a33)*e^{57}+(a12+a34)*e^{67}, \
              a16*e^{17}+a15*e^{27}+a36*e^{37}+a35*e^{47}+(-a12-a34)*e^{57}+(-a11-a33)*e^{67}, 0)",
            SolvedDisplay::Full,
        ),
        entry(
            "e(1,1)+e(1,1)",
            &["e(1,1)+e(1,1)"],
            "(0, 0, -e^{14}, -e^{13}, e^{25}, -e^{26})",
            "(0, 0, -e^{14}+a33*e^{37}, -e^{13}+a33*e^{47}, e^{25}-a33*e^{57}, -e^{26}-a33*e^{67}, 0)",
            SolvedDisplay::Entries(&[(3, 3, "a33"), (4, 4, "a33"), (5, 5, "-a33"), (6, 6, "-a33")]),
        ),
        entry(
            "g_{5,1}+R",
            &["g_{5,1}+R"],
            "(0, 0, 0, e^{15}, 0, e^{13})",
            "(0, 0, a13*e^{17}+a35*e^{57}, e^{15}+a13*e^{27}+a35*e^{67}, a15*e^{17}+a35*e^{37}, \
              e^{13}+a15*e^{27}+a35*e^{47}, 0)",
            SolvedDisplay::Entries(&[
                (1, 3, "a13"),
                (2, 4, "a13"),
                (1, 5, "a15"),
                (2, 6, "a15"),
                (3, 5, "a35"),
                (4, 6, "a35"),
                (5, 3, "a35"),
                (6, 4, "a35"),
            ]),
        ),
        entry(
            "g_{5,7}^{-1,-1,1}+R",
            &["g_{5,7}^{-1,-1,1}+R"],
            "(-e^{15}, e^{25}, -e^{35}, e^{45}, 0, 0)",
            "(-e^{15}+a13*e^{17}+a11*e^{37}, e^{25}+a11*e^{17}+a31*e^{37}, -e^{35}+a13*e^{17}+a11*e^{37}, \
              e^{45}+a13*e^{27}-a11*e^{47}, 0, 0, 0)",
            SolvedDisplay::Entries(G57_D),
        ),
        CatalogEntry {
            free_constant: Some(free_constant(
                "alpha",
                "alpha >= 0",
                "alpha",
                false,
                &[(0, 1), (1, 2), (1, 1), (2, 1), (3, 1)],
                (1, 1),
            )),
            ..entry(
                "g_{5,17}^{alpha,-alpha,1}+R",
                &["g_{5,17}^{alpha,-alpha,1}+R"],
                "(alpha*e^{15}+e^{35}, -alpha*e^{25}+e^{45}, -e^{15}+alpha*e^{35}, -e^{25}-alpha*e^{45}, 0, 0)",
                "(alpha*e^{15}+e^{35}-a13*e^{37}, -alpha*e^{25}+e^{45}-a13*e^{47}, \
                  -e^{15}+alpha*e^{35}+a13*e^{17}, -e^{25}-alpha*e^{45}+a13*e^{27}, 0, 0, 0)",
                SolvedDisplay::Entries(ROTATION_D),
            )
        },
        entry(
            "g_{6,N3}",
            &["g_{6,N3}"],
            "(0, e^{35}, 0, 2*e^{15}, 0, e^{13})",
            "(1/2*a13*e^{37}-a15*e^{57}, e^{35}+1/2*a13*e^{47}-a15*e^{67}, a13*e^{17}+2*a35*e^{57}, \
              a13*e^{27}+2*a35*e^{67}, a15*e^{17}+a35*e^{37}, e^{13}+a15*e^{27}+a35*e^{47}, 0)",
            SolvedDisplay::Entries(&[
                (1, 3, "a13"),
                (2, 4, "a13"),
                (1, 5, "a15"),
                (2, 6, "a15"),
                (3, 1, "1/2*a13"),
                (4, 2, "1/2*a13"),
                (3, 5, "a35"),
                (4, 6, "a35"),
                (5, 1, "-a15"),
                (6, 2, "-a15"),
                (5, 3, "2*a35"),
                (6, 4, "2*a35"),
            ]),
        ),
        entry(
            "g_{6,38}^0",
            &["g_{6,38}^0"],
            "(2*e^{36}, 0, -e^{26}, -e^{26}+e^{25}, -e^{23}-e^{24}, e^{23})",
            "(2*e^{36}, 0, -e^{26}, -e^{26}+e^{25}, -e^{23}-e^{24}, e^{23}, 0)",
            SolvedDisplay::Entries(&[]),
        ),
        entry(
            "g_{6,54}^{0,-1}",
            &["g_{6,54}^{0,-1}"],
            "(e^{16}+e^{45}, -e^{26}, -e^{36}+e^{25}, e^{46}, 0, 0)",
            "(e^{16}+e^{45}, -e^{26}, -e^{36}+e^{25}, e^{46}, 0, 0, 0)",
            SolvedDisplay::Entries(&[]),
        ),
        entry(
            "g_{6,118}^{0,-1,-1}",
            &["g_{6,118}^{0,-1,-1}"],
            "(-e^{15}+e^{36}, e^{46}+e^{25}, -e^{16}-e^{35}, -e^{45}-e^{26}, 0, 0)",
            "(-e^{15}+e^{36}-a13*e^{37}, e^{46}+e^{25}-a13*e^{47}, -e^{16}-e^{35}+a13*e^{17}, \
              e^{45}-e^{26}-a13*e^{27}, 0, 0, 0)",
            SolvedDisplay::Entries(ROTATION_D),
        ),
        entry(
            "A_{6,13}^{-2/3,1/3,-1}",
            &["A_{6,13}^{-2/3,1/3,-1}"],
            "(-1/4*e^{14}-e^{23}, 1/4*e^{24}, -e^{26}, -e^{26}+e^{25}, -e^{23}-e^{24}, e^{23})",
            "(-1/4*e^{14}-e^{23}+a11*e^{17}, 1/4*e^{24}+a11*e^{27}, -1/2*e^{34}, 0, \
              -3/4*e^{45}-a11*e^{57}, 3/4*e^{46}-a11*e^{67}, 0)",
            SolvedDisplay::Entries(&[(1, 1, "a11"), (2, 2, "a11"), (5, 5, "-a11"), (6, 6, "-a11")]),
        ),
        entry(
            "A_{6,54}^{2,1}",
            &["A_{6,54}^{2,1}"],
            "(-1/2*e^{15}, 1/2*e^{25}+e^{16}, -1/2*e^{35}, 1/2*e^{45}+e^{36}, 0, -e^{56})",
            "(-1/2*e^{15}+a11*e^{17}+a31*e^{37}, 1/2*e^{25}+e^{16}+a11*e^{27}+a31*e^{47}, \
              -1/2*e^{35}+a13*e^{17}-a11*e^{37}, -1/2*e^{45}+e^{36}+a13*e^{27}-a11*e^{47}, 0, e^{56}, 0)",
            SolvedDisplay::Entries(G57_D),
        ),
        CatalogEntry {
            free_constant: Some(free_constant(
                "alpha",
                "alpha != 0",
                "alpha_inv",
                true,
                &[(-2, 1), (-1, 1), (1, 2), (1, 1), (2, 1)],
                (2, 1),
            )),
            ..entry(
                "A_{6,70}^{alpha,alpha/2}",
                &["A_{6,70}^{alpha,alpha/2}"],
                "(-1/2*e^{15}+alpha_inv*e^{35}+e^{26}, 1/2*e^{25}+alpha_inv*e^{45}, \
                  -alpha_inv*e^{15}-1/2*e^{35}+e^{46}, -alpha_inv*e^{25}+1/2*e^{45}, 0, e^{56})",
                "(-1/2*e^{15}+alpha_inv*e^{35}+e^{26}-a13*e^{37}, 1/2*e^{25}+alpha_inv*e^{45}-a13*e^{47}, \
                  -alpha_inv*e^{15}-1/2*e^{35}+e^{46}+a13*e^{17}, -alpha_inv*e^{25}+1/2*e^{45}+a13*e^{27}, \
                  0, e^{56}, 0)",
                SolvedDisplay::Entries(ROTATION_D),
            )
        },
        entry(
            "A_{6,71}^{-3/2}",
            &["A_{6,71}^{-3/2}"],
            "(-3/4*e^{16}, 3/4*e^{26}+e^{35}, 1/4*e^{36}+e^{45}, -1/4*e^{46}+e^{15}, 1/2*e^{56}, 0)",
            "(-3/4*e^{16}, 3/4*e^{26}+e^{35}, 1/4*e^{36}+e^{45}, -1/4*e^{46}+e^{15}, 1/2*e^{56}, 0, 0)",
            SolvedDisplay::Entries(&[]),
        ),
        // a = 3^{1/6}: 3^{1/3} = a^2, 3^{-1/3} = a^4/3, 3^{2/3} = a^4,
        // 3^{-1/6} = a^5/3, 3^{5/6} = a^5
        CatalogEntry {
            field: sixth_root_of_three,
            ..entry(
                "N_6",
                &["N_{6,3}^{0,-2,0,2}", "N_{6,13}^{0,-2,0,-2}"],
                "(-2*a^2*e^{16}, 2/3*a^4*e^{26}, 1/3*a^4*e^{36}+a^4*e^{45}, 0, \
                  -1/3*a^4*e^{34}-1/3*a^4*e^{56}, 0)",
                "(-2/3*a^5*e^{16}, 2/3*a^5*e^{26}, 1/3*a^5*e^{36}+a^5*e^{45}, 0, \
                  1/3*a^5*e^{34}+1/3*a^5*e^{56}, 0, 0)",
                SolvedDisplay::Entries(&[]),
            )
        },
    ]
}

/// Looks an entry up by id or by any printed name.
pub fn find_entry(name: &str) -> Option<CatalogEntry> {
    fmou_catalog()
        .into_iter()
        .find(|e| e.id == name || e.printed_names.contains(&name))
}
