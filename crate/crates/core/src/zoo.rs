//! Built-in catalog of manifolds, structures, forms, curves and expected
//! results.
//!
//! Every entry carries expectation records; [`ZooEntry::verify`] runs them
//! against the engine. Forms inside expectations are written in the
//! [`parse_form`] syntax so the records serialize cleanly.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cohomology::{
    cohomology_space, cup_map_between, current_homology_space, stage_report, type_subgroup, Bidegree, CohomologySpace,
    Field, Side,
};
use crate::complexstruct::{block_matrix, is_integrable, nijenhuis, pair_coframe, AlmostComplexStructure};
use crate::deform::{obstruction, semicontinuity_scan, validate_twist_formula, DeformationCurve, ObstructionMode};
use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::hermitian::{form_predicates, HermitianData};
use crate::lie::{check_presentation, parse_presentation, Presentation, StructureReport};
use crate::linalg::Matrix;
use crate::parse::{parse_form, Mode};
use crate::scalar::{Gq, Scalar, Q};

/// Why invariant cohomology computes the manifold's cohomology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Validity {
    /// Nomizu.
    Nilpotent,
    /// Hattori.
    CompletelySolvable,
    /// Averaging over a compact factor.
    CompactFactor,
    /// No theorem applies; results are about invariant forms only.
    InvariantOnly,
}

impl Validity {
    /// Whether the structural report is consistent with this flag.
    pub fn consistent_with(self, r: &StructureReport) -> bool {
        r.jacobi
            && match self {
                Validity::Nilpotent => r.nilpotent && r.unimodular,
                Validity::CompletelySolvable => r.solvable && r.completely_solvable_heuristic,
                Validity::CompactFactor => r.unimodular && !r.solvable,
                Validity::InvariantOnly => true,
            }
    }

    /// The strongest flag the structural report supports.
    pub fn infer(r: &StructureReport) -> Validity {
        [
            Validity::Nilpotent,
            Validity::CompletelySolvable,
            Validity::CompactFactor,
        ]
        .into_iter()
        .find(|v| v.consistent_with(r))
        .unwrap_or(Validity::InvariantOnly)
    }
}

#[derive(Clone, Debug)]
pub struct NamedStructure {
    pub name: String,
    pub structure: AlmostComplexStructure,
}

/// `form + t·velocity`.
#[derive(Clone, Debug)]
pub struct NamedForm {
    pub name: String,
    pub form: Form<Gq>,
    pub velocity: Option<Form<Gq>>,
}

impl NamedForm {
    pub fn at(&self, t: &Gq) -> Form<Gq> {
        match &self.velocity {
            Some(v) => &self.form + &v.scale(t),
            None => self.form.clone(),
        }
    }
}

/// `φ_t = base + t·velocity`.
#[derive(Clone, Debug)]
pub struct NamedCurve {
    pub name: String,
    pub base: Vec<Form<Gq>>,
    pub velocity: Vec<Form<Gq>>,
    pub curve: DeformationCurve,
}

impl NamedCurve {
    pub fn linear(name: &str, base: Vec<Form<Gq>>, velocity: Vec<Form<Gq>>) -> Result<NamedCurve> {
        let curve = DeformationCurve::linear_coframe(&base, &velocity)?;
        Ok(NamedCurve {
            name: name.to_string(),
            base,
            velocity,
            curve,
        })
    }
}

#[derive(Clone, Debug)]
pub struct NamedDirection {
    pub name: String,
    pub matrix: Matrix<Gq>,
}

/// Which stage flag an expectation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StageFlag {
    Pure,
    Full,
    ComplexPure,
    ComplexFull,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PredicateFlag {
    Nondegenerate,
    Closed,
    Compatible,
    AlmostKahler,
    SemiKahler,
    Balanced,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanField {
    HPlus,
    HMinus,
    Pure,
    Full,
}

/// A computation whose result an expectation pins down.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Quantity {
    Betti {
        degree: usize,
    },
    Integrable {
        structure: &'static str,
    },
    /// `Nij(ϑ_i, ϑ_j) ≠ 0`, 1-based.
    NijenhuisNonzero {
        structure: &'static str,
        i: usize,
        j: usize,
    },
    Stage {
        structure: &'static str,
        degree: usize,
        side: Side,
        flag: StageFlag,
    },
    HPlus {
        structure: &'static str,
    },
    HMinus {
        structure: &'static str,
    },
    /// `dim(H⁺ ∩ H⁻)`.
    Intersection {
        structure: &'static str,
    },
    /// Complex dimension of `H^S_J` (forms) or `H^J_S` (currents).
    TypeDim {
        structure: &'static str,
        degree: usize,
        side: Side,
        types: Vec<Bidegree>,
    },
    Harmonic {
        structure: &'static str,
        degree: usize,
    },
    Predicate {
        structure: &'static str,
        form: &'static str,
        flag: PredicateFlag,
    },
    /// `d` of a named form, printed.
    Differential {
        form: &'static str,
    },
    Exact {
        form: &'static str,
    },
    /// `[a] ↦ [ω^{[power]} ∧ a]` from `H^source` is an isomorphism.
    CupIso {
        form: &'static str,
        power: usize,
        source: usize,
        t: Option<Gq>,
    },
    CupInjective {
        form: &'static str,
        power: usize,
        source: usize,
        t: Option<Gq>,
    },
    /// `ω^{[power]} ∧ class` is cohomologous to `image`.
    CupImage {
        form: &'static str,
        power: usize,
        t: Option<Gq>,
        class: &'static str,
        image: &'static str,
    },
    Scan {
        curve: &'static str,
        t: Gq,
        field: ScanField,
    },
    Obstruction {
        structure: &'static str,
        alpha: &'static str,
        direction: &'static str,
        mode: ObstructionMode,
        order: u32,
    },
    /// The transcribed ten-term polynomial agrees with the engine on
    /// `samples` random `(A, B)` blocks.
    TwistFormula {
        alpha: &'static str,
        samples: usize,
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expected {
    Bool(bool),
    Count(usize),
    AtLeast(usize),
    Form(String),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Actual {
    Bool(bool),
    Count(usize),
    Form(String),
}

impl Expected {
    pub fn matches(&self, actual: &Actual) -> bool {
        match (self, actual) {
            (Expected::Bool(a), Actual::Bool(b)) => a == b,
            (Expected::Count(a), Actual::Count(b)) => a == b,
            (Expected::AtLeast(a), Actual::Count(b)) => b >= a,
            (Expected::Form(a), Actual::Form(b)) => a == b,
            _ => false,
        }
    }
}

impl std::fmt::Display for Actual {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Actual::Bool(b) => write!(f, "{b}"),
            Actual::Count(n) => write!(f, "{n}"),
            Actual::Form(s) => write!(f, "{s}"),
        }
    }
}

impl std::fmt::Display for Expected {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Expected::Bool(b) => write!(f, "{b}"),
            Expected::Count(n) => write!(f, "{n}"),
            Expected::AtLeast(n) => write!(f, ">= {n}"),
            Expected::Form(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Expectation {
    pub quantity: Quantity,
    pub expected: Expected,
    /// Where the value comes from.
    pub source: &'static str,
}

/// Outcome of one expectation.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub expectation: Expectation,
    pub actual: Option<Actual>,
    pub error: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct ZooEntry {
    pub name: String,
    pub description: String,
    /// The notation the presentation was parsed from.
    pub notation: String,
    pub mode: Mode,
    pub presentation: Presentation,
    pub validity: Validity,
    pub structures: Vec<NamedStructure>,
    pub forms: Vec<NamedForm>,
    pub curves: Vec<NamedCurve>,
    pub directions: Vec<NamedDirection>,
    pub expectations: Vec<Expectation>,
}

impl ZooEntry {
    pub fn dim(&self) -> usize {
        self.presentation.dim()
    }

    pub fn structure(&self, name: &str) -> Result<&AlmostComplexStructure> {
        self.structures
            .iter()
            .find(|s| s.name == name)
            .map(|s| &s.structure)
            .ok_or_else(|| Error::UnknownName(format!("{}:{name}", self.name)))
    }

    /// The first listed structure.
    pub fn default_structure(&self) -> Option<&NamedStructure> {
        self.structures.first()
    }

    pub fn form(&self, name: &str) -> Result<&NamedForm> {
        self.forms
            .iter()
            .find(|f| f.name == name)
            .ok_or_else(|| Error::UnknownName(format!("{}:{name}", self.name)))
    }

    /// A named form, or else a form expression.
    pub fn resolve_form(&self, text: &str, t: Option<&Gq>) -> Result<Form<Gq>> {
        match self.form(text) {
            Ok(f) => Ok(f.at(t.unwrap_or(&Gq::zero()))),
            Err(_) => parse_form(text, self.dim()),
        }
    }

    pub fn curve(&self, name: &str) -> Result<&DeformationCurve> {
        self.curves
            .iter()
            .find(|c| c.name == name)
            .map(|c| &c.curve)
            .ok_or_else(|| Error::UnknownName(format!("{}:{name}", self.name)))
    }

    pub fn direction(&self, name: &str) -> Result<&Matrix<Gq>> {
        self.directions
            .iter()
            .find(|d| d.name == name)
            .map(|d| &d.matrix)
            .ok_or_else(|| Error::UnknownName(format!("{}:{name}", self.name)))
    }

    /// The structure a form family lives with; falls back to the default.
    fn structure_at(&self, name: &str, t: Option<&Gq>) -> Result<AlmostComplexStructure> {
        if let (Some(t), Ok(c)) = (t, self.curve(name)) {
            return c.evaluate(t);
        }
        self.structure(name).cloned()
    }

    fn space(&self, k: usize) -> CohomologySpace {
        cohomology_space(&self.presentation, k, Field::Complex)
    }

    /// Run one quantity.
    pub fn evaluate(&self, q: &Quantity) -> Result<Actual> {
        let p = &self.presentation;
        Ok(match q {
            Quantity::Betti { degree } => Actual::Count(self.space(*degree).dim()),
            Quantity::Integrable { structure } => Actual::Bool(is_integrable(p, self.structure(structure)?)),
            Quantity::NijenhuisNonzero { structure, i, j } => {
                let nij = nijenhuis(p, self.structure(structure)?);
                Actual::Bool(nij.iter().any(|((a, b), _)| (*a, *b) == (i - 1, j - 1)))
            }
            Quantity::Stage {
                structure,
                degree,
                side,
                flag,
            } => {
                let space = match side {
                    Side::Forms => self.space(*degree),
                    Side::Currents => current_homology_space(p, *degree, Field::Complex),
                };
                let r = stage_report(&space, self.structure(structure)?)?;
                Actual::Bool(match flag {
                    StageFlag::Pure => r.pure,
                    StageFlag::Full => r.full,
                    StageFlag::ComplexPure => r.complex_pure,
                    StageFlag::ComplexFull => r.complex_full,
                })
            }
            Quantity::HPlus { structure } | Quantity::HMinus { structure } | Quantity::Intersection { structure } => {
                let r = stage_report(&self.space(2), self.structure(structure)?)?;
                Actual::Count(
                    match q {
                        Quantity::HPlus { .. } => r.h_plus,
                        Quantity::HMinus { .. } => r.h_minus,
                        _ => r.intersection,
                    }
                    .expect("stage 2 reports h±"),
                )
            }
            Quantity::TypeDim {
                structure,
                degree,
                side,
                types,
            } => {
                let space = match side {
                    Side::Forms => self.space(*degree),
                    Side::Currents => current_homology_space(p, *degree, Field::Complex),
                };
                Actual::Count(type_subgroup(&space, self.structure(structure)?, types, false)?.dim)
            }
            Quantity::Harmonic { structure, degree } => {
                let h = HermitianData::standard(p, self.structure(structure)?)?;
                Actual::Count(h.harmonic_space(*degree).dim())
            }
            Quantity::Predicate { structure, form, flag } => {
                let r = form_predicates(p, self.structure(structure)?, &self.resolve_form(form, None)?)?;
                Actual::Bool(match flag {
                    PredicateFlag::Nondegenerate => r.nondegenerate,
                    PredicateFlag::Closed => r.closed,
                    PredicateFlag::Compatible => r.compatible,
                    PredicateFlag::AlmostKahler => r.almost_kahler,
                    PredicateFlag::SemiKahler => r.semi_kahler,
                    PredicateFlag::Balanced => r.balanced,
                })
            }
            Quantity::Differential { form } => Actual::Form(p.d(&self.resolve_form(form, None)?).to_string()),
            Quantity::Exact { form } => Actual::Bool({
                let f = self.resolve_form(form, None)?;
                let k = f.degree().unwrap_or(0);
                self.space(k).is_exact(&f)?
            }),
            Quantity::CupIso { form, power, source, t } | Quantity::CupInjective { form, power, source, t } => {
                let gamma = self.resolve_form(form, t.as_ref())?.divided_power(*power);
                let target = source + 2 * power;
                let m = cup_map_between(&self.space(*source), &self.space(target), &gamma)?;
                Actual::Bool(if matches!(q, Quantity::CupIso { .. }) {
                    m.iso
                } else {
                    m.injective
                })
            }
            Quantity::CupImage {
                form,
                power,
                t,
                class,
                image,
            } => {
                let gamma = self.resolve_form(form, t.as_ref())?.divided_power(*power);
                let a = self.resolve_form(class, None)?;
                let b = self.resolve_form(image, None)?;
                let prod = gamma.wedge(&a);
                let k = prod.degree().unwrap_or(0);
                let space = self.space(k);
                let diff = &prod - &b;
                Actual::Bool(!space.is_exact(&b)? && space.is_exact(&diff)?)
            }
            Quantity::Scan { curve, t, field } => {
                let rows = semicontinuity_scan(p, self.curve(curve)?, std::slice::from_ref(t));
                let row = &rows[0];
                if let Some(e) = &row.error {
                    return Err(Error::Precondition(e.clone()));
                }
                match field {
                    ScanField::HPlus => Actual::Count(row.h_plus.expect("stage 2")),
                    ScanField::HMinus => Actual::Count(row.h_minus.expect("stage 2")),
                    ScanField::Pure => Actual::Bool(row.pure.expect("evaluated")),
                    ScanField::Full => Actual::Bool(row.full.expect("evaluated")),
                }
            }
            Quantity::Obstruction {
                structure,
                alpha,
                direction,
                mode,
                order,
            } => {
                let j = self.structure_at(structure, None)?;
                let r = obstruction(
                    p,
                    &j,
                    &self.resolve_form(alpha, None)?,
                    self.direction(direction)?,
                    *order,
                    *mode,
                )?;
                Actual::Bool(r.solvable())
            }
            Quantity::TwistFormula { alpha, samples, seed } => {
                let alpha = self.resolve_form(alpha, None)?.to_real()?;
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let n = self.dim() / 2;
                let mut all = true;
                for _ in 0..*samples {
                    let mut draw = || {
                        let rows = (0..n)
                            .map(|_| {
                                (0..n)
                                    .map(|_| Q::new(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
                                    .collect()
                            })
                            .collect();
                        Matrix::from_rows(rows)
                    };
                    let (a, b) = (draw(), draw());
                    all &= validate_twist_formula(p, &alpha, &a, &b);
                }
                Actual::Bool(all)
            }
        })
    }

    /// Run every expectation.
    pub fn verify(&self) -> Vec<Check> {
        use rayon::prelude::*;
        self.expectations
            .par_iter()
            .map(|e| match self.evaluate(&e.quantity) {
                Ok(a) => Check {
                    pass: e.expected.matches(&a),
                    expectation: e.clone(),
                    actual: Some(a),
                    error: None,
                },
                Err(err) => Check {
                    expectation: e.clone(),
                    actual: None,
                    error: Some(err.to_string()),
                    pass: false,
                },
            })
            .collect()
    }
}

/// User-facing description of a manifold and its data, the JSON format
/// for custom manifolds.
///
/// ```
/// use acscohom::zoo::{lookup, ManifoldSpec, ZooEntry};
/// let spec = lookup("kt4").unwrap().to_spec();
/// let json = serde_json::to_string(&spec).unwrap();
/// let back: ManifoldSpec = serde_json::from_str(&json).unwrap();
/// let entry = ZooEntry::from_spec(&back).unwrap();
/// assert_eq!(entry.structures.len(), 2);
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifoldSpec {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub presentation: String,
    #[serde(default = "real_mode")]
    pub mode: Mode,
    /// Inferred from the structure report when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validity: Option<Validity>,
    #[serde(default)]
    pub structures: Vec<StructureSpec>,
    #[serde(default)]
    pub forms: Vec<FormSpec>,
    #[serde(default)]
    pub curves: Vec<CurveSpec>,
    #[serde(default)]
    pub directions: Vec<DirectionSpec>,
}

fn real_mode() -> Mode {
    Mode::Real
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureSpec {
    pub name: String,
    #[serde(flatten)]
    pub data: StructureData,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureData {
    /// `φ^a = e^i + i e^j`, 1-based.
    Pairs(Vec<(usize, usize)>),
    /// Form expressions for the `(1,0)`-coframe.
    Coframe(Vec<String>),
    /// Real frame endomorphism, rows of `J`.
    Matrix(Vec<Vec<Q>>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormSpec {
    pub name: String,
    pub form: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub velocity: Option<String>,
}

/// `φ_t = coframe + t·velocity`; an empty velocity is a constant curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub name: String,
    pub coframe: Vec<String>,
    #[serde(default)]
    pub velocity: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirectionSpec {
    pub name: String,
    pub matrix: Vec<Vec<Gq>>,
}

fn unique<'a>(kind: &str, names: impl Iterator<Item = &'a str>) -> Result<()> {
    let mut seen = std::collections::BTreeSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(Error::Config(format!("duplicate {kind} name {n}")));
        }
    }
    Ok(())
}

fn square<S: Scalar>(rows: &[Vec<S>], dim: usize) -> Result<Matrix<S>> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::Config(format!("expected a {dim}×{dim} matrix")));
    }
    Ok(Matrix::from_rows(rows.to_vec()))
}

impl ZooEntry {
    /// Build an entry without expectations.
    pub fn from_spec(spec: &ManifoldSpec) -> Result<ZooEntry> {
        let presentation = parse_presentation(&spec.presentation, spec.mode)?;
        let report = check_presentation(&presentation);
        let validity = match spec.validity {
            Some(v) if !v.consistent_with(&report) => {
                return Err(Error::Config(format!(
                    "validity flag {v:?} does not match the structure report"
                )))
            }
            Some(v) => v,
            None => Validity::infer(&report),
        };
        let dim = presentation.dim();
        let forms_of =
            |texts: &[String]| -> Result<Vec<Form<Gq>>> { texts.iter().map(|t| parse_form(t, dim)).collect() };
        unique("structure", spec.structures.iter().map(|s| s.name.as_str()))?;
        unique("form", spec.forms.iter().map(|s| s.name.as_str()))?;
        unique("curve", spec.curves.iter().map(|s| s.name.as_str()))?;
        unique("direction", spec.directions.iter().map(|s| s.name.as_str()))?;
        let structures = spec
            .structures
            .iter()
            .map(|s| {
                let structure = match &s.data {
                    StructureData::Pairs(pairs) => AlmostComplexStructure::from_coframe(&pair_coframe(dim, pairs))?,
                    StructureData::Coframe(texts) => AlmostComplexStructure::from_coframe(&forms_of(texts)?)?,
                    StructureData::Matrix(rows) => AlmostComplexStructure::from_real_matrix(&square(rows, dim)?)?,
                };
                if structure.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: structure.dim(),
                    });
                }
                Ok(named(&s.name, structure))
            })
            .collect::<Result<Vec<_>>>()?;
        let forms = spec
            .forms
            .iter()
            .map(|f| {
                Ok(NamedForm {
                    name: f.name.clone(),
                    form: parse_form(&f.form, dim)?,
                    velocity: f.velocity.as_deref().map(|v| parse_form(v, dim)).transpose()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let curves = spec
            .curves
            .iter()
            .map(|c| {
                let base = forms_of(&c.coframe)?;
                let velocity = if c.velocity.is_empty() {
                    base.iter().map(|_| Form::zero(dim)).collect()
                } else {
                    forms_of(&c.velocity)?
                };
                NamedCurve::linear(&c.name, base, velocity)
            })
            .collect::<Result<Vec<_>>>()?;
        let directions = spec
            .directions
            .iter()
            .map(|d| {
                Ok(NamedDirection {
                    name: d.name.clone(),
                    matrix: square(&d.matrix, dim)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ZooEntry {
            name: spec.name.clone(),
            description: spec.description.clone(),
            notation: spec.presentation.clone(),
            mode: spec.mode,
            presentation,
            validity,
            structures,
            forms,
            curves,
            directions,
            expectations: Vec::new(),
        })
    }

    /// The entry's data in the custom-manifold format. Expectations are
    /// not part of it.
    pub fn to_spec(&self) -> ManifoldSpec {
        let texts = |fs: &[Form<Gq>]| fs.iter().map(|f| f.to_string()).collect::<Vec<_>>();
        ManifoldSpec {
            name: self.name.clone(),
            description: self.description.clone(),
            presentation: self.notation.clone(),
            mode: self.mode,
            validity: Some(self.validity),
            structures: self
                .structures
                .iter()
                .map(|s| StructureSpec {
                    name: s.name.clone(),
                    data: StructureData::Coframe(texts(s.structure.coframe())),
                })
                .collect(),
            forms: self
                .forms
                .iter()
                .map(|f| FormSpec {
                    name: f.name.clone(),
                    form: f.form.to_string(),
                    velocity: f.velocity.as_ref().map(|v| v.to_string()),
                })
                .collect(),
            curves: self
                .curves
                .iter()
                .map(|c| CurveSpec {
                    name: c.name.clone(),
                    coframe: texts(&c.base),
                    velocity: texts(&c.velocity),
                })
                .collect(),
            directions: self
                .directions
                .iter()
                .map(|d| DirectionSpec {
                    name: d.name.clone(),
                    matrix: d.matrix.clone().into_rows(),
                })
                .collect(),
        }
    }
}

/// Names of the catalog entries, in catalog order.
pub const NAMES: [&str; 11] = [
    "n1", "n2", "kt4", "ft6", "iwasawa", "etabeta5", "s3t3", "solv6", "n6c1", "t4", "t6",
];

/// Every entry, built once.
pub fn catalog() -> &'static [ZooEntry] {
    static CATALOG: OnceLock<Vec<ZooEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        NAMES
            .iter()
            .map(|n| build(n).expect("catalog entries are valid"))
            .collect()
    })
}

pub fn lookup(name: &str) -> Result<&'static ZooEntry> {
    catalog()
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

// Construction helpers.

fn exp(quantity: Quantity, expected: Expected, source: &'static str) -> Expectation {
    Expectation {
        quantity,
        expected,
        source,
    }
}

fn betti(k: usize, b: usize, source: &'static str) -> Expectation {
    exp(Quantity::Betti { degree: k }, Expected::Count(b), source)
}

fn stage(s: &'static str, k: usize, flag: StageFlag, v: bool, source: &'static str) -> Expectation {
    exp(
        Quantity::Stage {
            structure: s,
            degree: k,
            side: Side::Forms,
            flag,
        },
        Expected::Bool(v),
        source,
    )
}

fn acs(pairs: &[(usize, usize)], dim: usize) -> AlmostComplexStructure {
    AlmostComplexStructure::from_coframe(&pair_coframe(dim, pairs)).expect("spanning coframe")
}

fn named(name: &str, structure: AlmostComplexStructure) -> NamedStructure {
    NamedStructure {
        name: name.to_string(),
        structure,
    }
}

fn fixed_form(name: &str, text: &str, dim: usize) -> NamedForm {
    NamedForm {
        name: name.to_string(),
        form: parse_form(text, dim).expect("valid form"),
        velocity: None,
    }
}

/// `(i/2) Σ φ^a ∧ φ̄^a` for a structure.
fn fundamental_form(j: &AlmostComplexStructure) -> Form<Gq> {
    let mut w = Form::zero(j.dim());
    for a in 1..=j.n() {
        w += j.phi(&[a], &[a]);
    }
    w.scale(&Gq::new(Q::zero(), Q::new(1, 2)))
}

/// `φ^1_t = φ^1 + t φ̄^1`, other entries fixed.
fn first_entry_curve(j: &AlmostComplexStructure) -> NamedCurve {
    let base = j.coframe().to_vec();
    let mut vel: Vec<Form<Gq>> = base.iter().map(|f| Form::zero(f.dim())).collect();
    vel[0] = base[0].conjugate();
    NamedCurve::linear("phi1", base, vel).expect("valid coframe")
}

struct Draft {
    name: &'static str,
    description: &'static str,
    notation: &'static str,
    mode: Mode,
    validity: Validity,
}

impl Draft {
    fn finish(
        self,
        structures: Vec<NamedStructure>,
        forms: Vec<NamedForm>,
        curves: Vec<NamedCurve>,
        directions: Vec<NamedDirection>,
        expectations: Vec<Expectation>,
    ) -> Result<ZooEntry> {
        let presentation = parse_presentation(self.notation, self.mode)?;
        Ok(ZooEntry {
            name: self.name.to_string(),
            description: self.description.to_string(),
            notation: self.notation.to_string(),
            mode: self.mode,
            presentation,
            validity: self.validity,
            structures,
            forms,
            curves,
            directions,
            expectations,
        })
    }
}

fn build(name: &str) -> Result<ZooEntry> {
    use Expected::{AtLeast, Bool, Count};
    use StageFlag::*;
    let std3 = [(1, 2), (3, 4), (5, 6)];
    match name {
        "n1" => {
            let j = acs(&std3, 6);
            Draft {
                name: "n1",
                description: "6-dimensional nilmanifold with a C∞-full, non-C∞-pure complex structure",
                notation: "(0^3, 12, 14, 24)",
                mode: Mode::Real,
                validity: Validity::Nilpotent,
            }
            .finish(
                vec![named("J", j)],
                vec![],
                vec![],
                vec![],
                vec![
                    betti(2, 5, "five listed harmonic representatives of H^2"),
                    exp(
                        Quantity::Integrable { structure: "J" },
                        Bool(true),
                        "integrability check",
                    ),
                    exp(
                        Quantity::TypeDim {
                            structure: "J",
                            degree: 2,
                            side: Side::Forms,
                            types: vec![(2, 0), (0, 2)],
                        },
                        Count(4),
                        "listed basis of H^{(2,0),(0,2)}",
                    ),
                    exp(
                        Quantity::TypeDim {
                            structure: "J",
                            degree: 2,
                            side: Side::Forms,
                            types: vec![(1, 1)],
                        },
                        Count(3),
                        "listed basis of H^{(1,1)}",
                    ),
                    exp(
                        Quantity::Intersection { structure: "J" },
                        Count(2),
                        "shared summand of both lists",
                    ),
                    stage("J", 2, Full, true, "full but not pure"),
                    stage("J", 2, Pure, false, "full but not pure"),
                    exp(
                        Quantity::Harmonic {
                            structure: "J",
                            degree: 2,
                        },
                        Count(5),
                        "harmonic representatives for the standard metric",
                    ),
                ],
            )
        }
        "n2" => {
            let j = acs(&std3, 6);
            Draft {
                name: "n2",
                description: "6-dimensional nilmanifold with a C∞-pure, non-C∞-full complex structure",
                notation: "(0^4, 12, 34)",
                mode: Mode::Real,
                validity: Validity::Nilpotent,
            }
            .finish(
                vec![named("J", j)],
                vec![],
                vec![],
                vec![],
                vec![
                    betti(2, 8, "eight listed classes in H^2"),
                    exp(
                        Quantity::Integrable { structure: "J" },
                        Bool(true),
                        "integrability check",
                    ),
                    exp(
                        Quantity::TypeDim {
                            structure: "J",
                            degree: 2,
                            side: Side::Forms,
                            types: vec![(2, 0), (0, 2)],
                        },
                        Count(2),
                        "H^{(2,0),(0,2)} spanned by two classes",
                    ),
                    exp(
                        Quantity::TypeDim {
                            structure: "J",
                            degree: 2,
                            side: Side::Forms,
                            types: vec![(1, 1)],
                        },
                        Count(2),
                        "H^{(1,1)} spanned by two classes",
                    ),
                    exp(
                        Quantity::Intersection { structure: "J" },
                        Count(0),
                        "the two lists are disjoint",
                    ),
                    stage("J", 2, Pure, true, "pure but not full"),
                    stage("J", 2, Full, false, "pure but not full"),
                ],
            )
        }
        "kt4" => Draft {
            name: "kt4",
            description: "4-dimensional nilmanifold with a non-integrable J and a second structure J′",
            notation: "(0^2, 14, 12)",
            mode: Mode::Real,
            validity: Validity::Nilpotent,
        }
        .finish(
            vec![
                named("J", acs(&[(1, 2), (3, 4)], 4)),
                named("Jp", acs(&[(1, 3), (2, 4)], 4)),
            ],
            vec![],
            vec![],
            vec![],
            vec![
                betti(1, 2, "listed basis of H^1"),
                betti(2, 2, "listed basis of H^2"),
                exp(
                    Quantity::Integrable { structure: "J" },
                    Bool(false),
                    "Nijenhuis tensor nonzero",
                ),
                exp(
                    Quantity::NijenhuisNonzero {
                        structure: "J",
                        i: 1,
                        j: 3,
                    },
                    Bool(true),
                    "Nij(ϑ_1, ϑ_3) nonzero",
                ),
                stage("J", 2, Pure, true, "J pure and full at stage 2"),
                stage("J", 2, Full, true, "J pure and full at stage 2"),
                stage("J", 2, ComplexFull, false, "J not complex-pure-and-full at stage 2"),
                stage("Jp", 2, ComplexPure, true, "J′ complex-pure-and-full at stage 2"),
                stage("Jp", 2, ComplexFull, true, "J′ complex-pure-and-full at stage 2"),
                exp(Quantity::HMinus { structure: "Jp" }, Count(0), "h⁻ of J′ vanishes"),
            ],
        ),
        "ft6" => {
            let dim = 6;
            Draft {
                name: "ft6",
                description: "6-dimensional nilmanifold with a semi-Kähler, non-balanced structure",
                notation: "(0^4, 12, 13)",
                mode: Mode::Real,
                validity: Validity::Nilpotent,
            }
            .finish(
                vec![
                    named("J", acs(&[(1, 5), (2, 3), (4, 6)], dim)),
                    named("Jp", acs(&std3, dim)),
                ],
                vec![fixed_form("omega", "e15 + e23 + e46", dim)],
                vec![],
                vec![],
                vec![
                    betti(1, 4, "listed basis of H^1"),
                    exp(
                        Quantity::Differential { form: "omega" },
                        Expected::Form("-e134".into()),
                        "dω",
                    ),
                    exp(
                        Quantity::Predicate {
                            structure: "J",
                            form: "omega",
                            flag: PredicateFlag::SemiKahler,
                        },
                        Bool(true),
                        "d(ω^2) = 0 with ω compatible",
                    ),
                    exp(
                        Quantity::Predicate {
                            structure: "J",
                            form: "omega",
                            flag: PredicateFlag::Balanced,
                        },
                        Bool(false),
                        "J is not integrable",
                    ),
                    exp(Quantity::Exact { form: "e12346" }, Bool(true), "e^{12346} = d e^{3456}"),
                    exp(
                        Quantity::CupInjective {
                            form: "omega",
                            power: 2,
                            source: 1,
                            t: None,
                        },
                        Bool(false),
                        "ω^2 kills [e^1]",
                    ),
                    stage("Jp", 2, Pure, false, "J′ not pure"),
                    stage("Jp", 2, Full, false, "J′ not full"),
                ],
            )
        }
        "iwasawa" => {
            let p = parse_presentation("(0, 0, -12)", Mode::Complex)?;
            let j = AlmostComplexStructure::from_coframe(&p.complex_coframe().expect("complex mode"))?;
            let omega = fundamental_form(&j);
            Draft {
                name: "iwasawa",
                description: "Iwasawa manifold with its balanced metric",
                notation: "(0, 0, -12)",
                mode: Mode::Complex,
                validity: Validity::Nilpotent,
            }
            .finish(
                vec![named("J", j)],
                vec![NamedForm {
                    name: "omega".into(),
                    form: omega,
                    velocity: None,
                }],
                vec![],
                vec![],
                vec![
                    betti(1, 4, "listed basis of H^1"),
                    betti(5, 4, "listed basis of H^5"),
                    exp(Quantity::Integrable { structure: "J" }, Bool(true), "complex structure"),
                    exp(
                        Quantity::Predicate {
                            structure: "J",
                            form: "omega",
                            flag: PredicateFlag::Balanced,
                        },
                        Bool(true),
                        "balanced form",
                    ),
                    exp(
                        Quantity::CupIso {
                            form: "omega",
                            power: 2,
                            source: 1,
                            t: None,
                        },
                        Bool(true),
                        "ω^2: H^1 → H^5 is an isomorphism",
                    ),
                    stage("J", 1, ComplexPure, true, "complex-pure-and-full at stage 1"),
                    stage("J", 1, ComplexFull, true, "complex-pure-and-full at stage 1"),
                    exp(
                        Quantity::Stage {
                            structure: "J",
                            degree: 1,
                            side: Side::Currents,
                            flag: ComplexFull,
                        },
                        Bool(true),
                        "complex-pure-and-full at stage 1 on currents",
                    ),
                    exp(
                        Quantity::Stage {
                            structure: "J",
                            degree: 1,
                            side: Side::Currents,
                            flag: ComplexPure,
                        },
                        Bool(true),
                        "complex-pure-and-full at stage 1 on currents",
                    ),
                ],
            )
        }
        "etabeta5" => {
            let p = parse_presentation("(0^4, -12-34)", Mode::Complex)?;
            let j = AlmostComplexStructure::from_coframe(&p.complex_coframe().expect("complex mode"))?;
            let omega = fundamental_form(&j);
            let curve = first_entry_curve(&j);
            Draft {
                name: "etabeta5",
                description: "10-dimensional nilmanifold ηβ₅ with a balanced metric and a curve of structures",
                notation: "(0^4, -12-34)",
                mode: Mode::Complex,
                validity: Validity::Nilpotent,
            }
            .finish(
                vec![named("J", j)],
                vec![NamedForm {
                    name: "omega".into(),
                    form: omega,
                    velocity: None,
                }],
                vec![curve],
                vec![],
                vec![
                    betti(1, 8, "listed basis of H^1"),
                    betti(9, 8, "listed basis of H^9"),
                    betti(2, 26, "ten anti-invariant plus sixteen invariant classes"),
                    exp(Quantity::HMinus { structure: "J" }, Count(10), "h⁻ = 10"),
                    exp(Quantity::HPlus { structure: "J" }, Count(16), "h⁺ = 16"),
                    exp(Quantity::Integrable { structure: "J" }, Bool(true), "complex structure"),
                    exp(
                        Quantity::Predicate {
                            structure: "J",
                            form: "omega",
                            flag: PredicateFlag::Balanced,
                        },
                        Bool(true),
                        "balanced form",
                    ),
                    exp(
                        Quantity::CupIso {
                            form: "omega",
                            power: 4,
                            source: 1,
                            t: None,
                        },
                        Bool(true),
                        "ω^4: H^1 → H^9 is an isomorphism",
                    ),
                    exp(
                        Quantity::TypeDim {
                            structure: "J",
                            degree: 1,
                            side: Side::Forms,
                            types: vec![(1, 0)],
                        },
                        Count(4),
                        "H^{(1,0)} ≅ H_{(0,1)}",
                    ),
                    exp(
                        Quantity::TypeDim {
                            structure: "J",
                            degree: 1,
                            side: Side::Currents,
                            types: vec![(0, 1)],
                        },
                        Count(4),
                        "H^{(1,0)} ≅ H_{(0,1)}",
                    ),
                    exp(
                        Quantity::Scan {
                            curve: "phi1",
                            t: Gq::zero(),
                            field: ScanField::HMinus,
                        },
                        Count(10),
                        "h⁻ at t = 0",
                    ),
                    exp(
                        Quantity::Scan {
                            curve: "phi1",
                            t: Gq::ratio(1, 2),
                            field: ScanField::HMinus,
                        },
                        AtLeast(12),
                        "h⁻ jumps up along the curve",
                    ),
                    exp(
                        Quantity::Scan {
                            curve: "phi1",
                            t: Gq::ratio(1, 2),
                            field: ScanField::Pure,
                        },
                        Bool(false),
                        "not C∞-pure for t ≠ 0",
                    ),
                ],
            )
        }
        "s3t3" => {
            let j = acs(&[(1, 4), (2, 5), (3, 6)], 6);
            let curve = first_entry_curve(&j);
            Draft {
                name: "s3t3",
                description: "S³×T³ with a C∞-full complex structure and a curve breaking lower semicontinuity of h⁺",
                notation: "(23, -13, 12, 0^3)",
                mode: Mode::Real,
                validity: Validity::CompactFactor,
            }
            .finish(
                vec![named("J", j)],
                vec![],
                vec![curve],
                vec![],
                vec![
                    betti(2, 3, "listed basis of H^2"),
                    exp(Quantity::HPlus { structure: "J" }, Count(3), "H^2 = H⁺"),
                    exp(Quantity::HMinus { structure: "J" }, Count(3), "H^2 = H⁻"),
                    stage("J", 2, Full, true, "C∞-full"),
                    exp(
                        Quantity::Scan {
                            curve: "phi1",
                            t: Gq::zero(),
                            field: ScanField::HPlus,
                        },
                        Count(3),
                        "h⁺ at t = 0",
                    ),
                    exp(
                        Quantity::Scan {
                            curve: "phi1",
                            t: Gq::new(Q::zero(), Q::new(1, 4)),
                            field: ScanField::HPlus,
                        },
                        Count(1),
                        "h⁺ drops for non-real t",
                    ),
                ],
            )
        }
        "solv6" => {
            let dim = 6;
            let j = acs(&[(1, 4), (2, 5), (3, 6)], dim);
            let base = j.coframe().to_vec();
            let mut vel: Vec<Form<Gq>> = base.iter().map(|_| Form::zero(dim)).collect();
            vel[1] = Form::e(dim, &[6]).scale(&Gq::i());
            let curve = NamedCurve::linear("J_t", base, vel)?;
            Draft {
                name: "solv6",
                description: "completely solvable 6-dimensional solvmanifold with an almost-Kähler structure",
                notation: "(0, -12, 34, 0, 15, 46)",
                mode: Mode::Real,
                validity: Validity::CompletelySolvable,
            }
            .finish(
                vec![named("J", j)],
                vec![
                    fixed_form("omega", "e14 + e25 + e36", dim),
                    NamedForm {
                        name: "omega_t".into(),
                        form: parse_form("e14 + e25 + e36", dim)?,
                        velocity: Some(Form::e(dim, &[2, 6])),
                    },
                ],
                vec![curve],
                vec![],
                vec![
                    betti(1, 2, "listed basis of H^1"),
                    betti(5, 2, "listed basis of H^5"),
                    exp(
                        Quantity::Predicate {
                            structure: "J",
                            form: "omega",
                            flag: PredicateFlag::AlmostKahler,
                        },
                        Bool(true),
                        "J-compatible symplectic form",
                    ),
                    exp(
                        Quantity::CupIso {
                            form: "omega_t",
                            power: 2,
                            source: 1,
                            t: Some(Gq::ratio(1, 5)),
                        },
                        Bool(true),
                        "ω_t^2: H^1 → H^5 is an isomorphism",
                    ),
                    exp(
                        Quantity::CupImage {
                            form: "omega_t",
                            power: 2,
                            t: Some(Gq::ratio(1, 5)),
                            class: "e1",
                            image: "-e12356",
                        },
                        Bool(true),
                        "ω_t^2 e^1 up to the sign of the transcription",
                    ),
                    exp(
                        Quantity::CupImage {
                            form: "omega_t",
                            power: 2,
                            t: Some(Gq::ratio(1, 5)),
                            class: "e4",
                            image: "-e23456",
                        },
                        Bool(true),
                        "ω_t^2 e^4 up to the sign of the transcription",
                    ),
                ],
            )
        }
        "n6c1" => {
            let j = AlmostComplexStructure::from_real_matrix(&block_matrix(3))?;
            let mut l = Matrix::zeros(6, 6);
            l[(0, 5)] = Gq::one();
            l[(3, 2)] = Gq::one();
            Draft {
                name: "n6c1",
                description: "Sol(3)×Sol(3) quotient, cohomologically Kähler without Kähler structures",
                notation: "(12, 0, -36, 24, 56, 0)",
                mode: Mode::Real,
                validity: Validity::CompletelySolvable,
            }
            .finish(
                vec![named("J", j)],
                vec![fixed_form("alpha", "e14", 6)],
                vec![],
                vec![NamedDirection {
                    name: "b13".into(),
                    matrix: l,
                }],
                vec![
                    exp(
                        Quantity::TwistFormula {
                            alpha: "alpha",
                            samples: 10,
                            seed: 1,
                        },
                        Bool(true),
                        "displayed expansion of d(α(L·,·) + α(·,L·))",
                    ),
                    exp(
                        Quantity::Obstruction {
                            structure: "J",
                            alpha: "alpha",
                            direction: "b13",
                            mode: ObstructionMode::PaperLiteral,
                            order: 1,
                        },
                        Bool(true),
                        "printed first-order condition has a free β",
                    ),
                    exp(
                        Quantity::Obstruction {
                            structure: "J",
                            alpha: "alpha",
                            direction: "b13",
                            mode: ObstructionMode::Projected,
                            order: 1,
                        },
                        Bool(false),
                        "no admissible β exists",
                    ),
                ],
            )
        }
        "t4" | "t6" => {
            let (dim, notation, desc) = if name == "t4" {
                (4, "(0^4)", "flat 4-torus")
            } else {
                (6, "(0^6)", "flat 6-torus")
            };
            let pairs: Vec<(usize, usize)> = (0..dim / 2).map(|a| (2 * a + 1, 2 * a + 2)).collect();
            let j = acs(&pairs, dim);
            let omega = fundamental_form(&j);
            let j_base = j.coframe().to_vec();
            let binom = |k: usize| (0..k).fold(1usize, |acc, i| acc * (dim - i) / (i + 1));
            let mut expectations: Vec<Expectation> =
                (0..=dim).map(|k| betti(k, binom(k), "binomial coefficient")).collect();
            expectations.push(exp(
                Quantity::Predicate {
                    structure: "J",
                    form: "omega",
                    flag: PredicateFlag::AlmostKahler,
                },
                Bool(true),
                "flat Kähler structure",
            ));
            expectations.push(stage("J", 2, Pure, true, "Kähler"));
            expectations.push(stage("J", 2, Full, true, "Kähler"));
            Draft {
                name: if name == "t4" { "t4" } else { "t6" },
                description: desc,
                notation,
                mode: Mode::Real,
                validity: Validity::Nilpotent,
            }
            .finish(
                vec![named("J", j)],
                vec![NamedForm {
                    name: "omega".into(),
                    form: omega,
                    velocity: None,
                }],
                vec![NamedCurve::linear(
                    "constant",
                    j_base.clone(),
                    j_base.iter().map(|_| Form::zero(dim)).collect(),
                )?],
                vec![],
                expectations,
            )
        }
        other => Err(Error::UnknownName(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_expectations_hold() {
        let mut failed = Vec::new();
        for e in catalog() {
            for c in e.verify() {
                if !c.pass {
                    failed.push(format!(
                        "{}: {:?} expected {} got {:?} {:?}",
                        e.name, c.expectation.quantity, c.expectation.expected, c.actual, c.error
                    ));
                }
            }
        }
        assert!(failed.is_empty(), "{}", failed.join("\n"));
    }

    #[test]
    fn unknown_name() {
        assert_eq!(lookup("nosuch").unwrap_err(), Error::UnknownName("nosuch".into()));
    }

    #[test]
    fn flags_match_structure_reports() {
        for e in catalog() {
            let r = check_presentation(&e.presentation);
            assert!(e.validity.consistent_with(&r), "{}: {:?}", e.name, r);
        }
    }

    #[test]
    fn specs_round_trip() {
        for e in catalog() {
            let spec = e.to_spec();
            let json = serde_json::to_string(&spec).unwrap();
            let back: ManifoldSpec = serde_json::from_str(&json).unwrap();
            assert_eq!(back, spec);
            let rebuilt = ZooEntry::from_spec(&back).unwrap();
            assert_eq!(rebuilt.presentation, e.presentation, "{}", e.name);
            assert_eq!(rebuilt.validity, e.validity);
            for (a, b) in rebuilt.structures.iter().zip(&e.structures) {
                assert_eq!(a.structure.matrix(), b.structure.matrix());
            }
            for (a, b) in rebuilt.forms.iter().zip(&e.forms) {
                assert_eq!(a.form, b.form);
            }
            for (a, b) in rebuilt.directions.iter().zip(&e.directions) {
                assert_eq!(a.matrix, b.matrix);
            }
        }
    }

    #[test]
    fn custom_spec_errors() {
        let base = r#"{"name": "x", "presentation": "(0^2, 12)"}"#;
        let spec: ManifoldSpec = serde_json::from_str(base).unwrap();
        let e = ZooEntry::from_spec(&spec).unwrap();
        assert_eq!(e.validity, Validity::Nilpotent);
        let bad = r#"{"name": "x", "presentation": "(0^2, 12)", "validity": "compact-factor"}"#;
        let spec: ManifoldSpec = serde_json::from_str(bad).unwrap();
        assert!(matches!(ZooEntry::from_spec(&spec), Err(Error::Config(_))));
        let dup = r#"{"name": "x", "presentation": "(0^4)",
            "structures": [{"name": "J", "pairs": [[1, 2], [3, 4]]}, {"name": "J", "pairs": [[1, 3], [2, 4]]}]}"#;
        let spec: ManifoldSpec = serde_json::from_str(dup).unwrap();
        assert!(matches!(ZooEntry::from_spec(&spec), Err(Error::Config(_))));
    }

    #[test]
    fn iwasawa_fixture() {
        let e = lookup("iwasawa").unwrap();
        assert_eq!(e.mode, Mode::Complex);
        let eqs = crate::complexstruct::complex_structure_equations(&e.presentation, e.structure("J").unwrap());
        let j = e.structure("J").unwrap();
        assert_eq!(eqs[2], -Form::term(6, j.theta_mono(&[1, 2], &[]), Gq::one()));
        assert_eq!(e.form("omega").unwrap().form, parse_form("e12 + e34 + e56", 6).unwrap());
    }
}
