//! Batch analysis: resolve a configuration against a manifold, run the
//! requested computations, and assemble a deterministic report.
//!
//! Resolution happens before anything is computed, so a bad name or a
//! malformed input fails without partial output. Failures during the
//! computations themselves are collected under `errors`.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cohomology::{
    betti_numbers, cohomology_space, cup_map_between, current_homology_space, stage_report, CupMap, Field, StageReport,
};
use crate::complexstruct::{is_integrable, AlmostComplexStructure};
use crate::deform::{obstruction, semicontinuity_scan, DeformationCurve, ObstructionMode, ObstructionReport, ScanRow};
use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::hermitian::{form_predicates, positivity_on_complex_hyperplanes, Positivity, PredicateReport};
use crate::lie::{check_presentation, StructureReport};
use crate::linalg::Matrix;
use crate::parse::Mode;
use crate::scalar::Gq;
use crate::zoo::{lookup, ManifoldSpec, Validity, ZooEntry};

/// A named form or a form expression, optionally at a parameter value.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FormRef {
    pub form: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Gq>,
}

impl FormRef {
    pub fn new(form: &str) -> FormRef {
        FormRef {
            form: form.to_string(),
            t: None,
        }
    }
}

/// `γ = ω^{[power]}` on `H^source`; without `power`, the whole Lefschetz
/// family `ω^{[k]} : H^{n−k} → H^{n+k}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CupRequest {
    #[serde(flatten)]
    pub form: FormRef,
    pub power: Option<usize>,
    pub source: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PositivityRequest {
    #[serde(flatten)]
    pub form: FormRef,
    /// `ψ` with `Φ = c ψ^{n−1}`, for the exact path.
    pub root: Option<String>,
    pub trials: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRequest {
    pub curve: String,
    pub samples: Vec<Gq>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObstructionRequest {
    pub alpha: String,
    pub direction: String,
    pub mode: ObstructionMode,
    pub order: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    /// Zoo name, JSON manifold file, or presentation text file.
    pub target: String,
    /// Restrict to one structure; predicates and obstructions use it, or
    /// the first structure when absent.
    pub structure: Option<String>,
    /// Stages for the pure/full report.
    pub stages: Vec<usize>,
    /// Also report stages on the current side.
    pub currents: bool,
    pub predicates: Vec<FormRef>,
    pub positivity: Vec<PositivityRequest>,
    pub cup: Vec<CupRequest>,
    pub scan: Option<ScanRequest>,
    pub obstruction: Option<ObstructionRequest>,
    pub seed: u64,
}

impl AnalysisConfig {
    pub fn new(target: &str) -> AnalysisConfig {
        AnalysisConfig {
            target: target.to_string(),
            structure: None,
            stages: vec![2],
            currents: false,
            predicates: Vec::new(),
            positivity: Vec::new(),
            cup: Vec::new(),
            scan: None,
            obstruction: None,
            seed: 0,
        }
    }
}

/// Load a zoo entry by name, or a manifold from a file.
///
/// JSON files follow [`ManifoldSpec`]. Any other file holds a presentation;
/// lines starting with `#` are comments and a line `mode: complex` switches
/// the notation.
pub fn load_target(target: &str) -> Result<ZooEntry> {
    if let Ok(e) = lookup(target) {
        return Ok(e.clone());
    }
    let path = Path::new(target);
    if !path.is_file() {
        return Err(Error::UnknownName(target.to_string()));
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{target}: {e}")))?;
    if text.trim_start().starts_with('{') {
        let spec: ManifoldSpec = serde_json::from_str(&text).map_err(|e| Error::Config(format!("{target}: {e}")))?;
        return ZooEntry::from_spec(&spec);
    }
    let mut mode = Mode::Real;
    let mut body = String::new();
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match line.strip_prefix("mode:").map(str::trim) {
            Some("complex") => mode = Mode::Complex,
            Some("real") => mode = Mode::Real,
            Some(other) => return Err(Error::Config(format!("unknown mode `{other}`"))),
            None => {
                body.push_str(line);
                body.push(' ');
            }
        }
    }
    let name = path
        .file_stem()
        .map_or_else(|| target.to_string(), |s| s.to_string_lossy().into_owned());
    ZooEntry::from_spec(&ManifoldSpec {
        name,
        description: String::new(),
        presentation: body.trim().to_string(),
        mode,
        validity: None,
        structures: Vec::new(),
        forms: Vec::new(),
        curves: Vec::new(),
        directions: Vec::new(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ManifoldInfo {
    pub name: String,
    pub presentation: String,
    pub mode: Mode,
    pub dim: usize,
    pub structure: StructureReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureEntry {
    pub name: String,
    pub integrable: bool,
    pub stages: Vec<StageReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub current_stages: Vec<StageReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PredicateEntry {
    pub structure: String,
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<Gq>,
    #[serde(flatten)]
    pub report: PredicateReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct PositivityEntry {
    pub structure: String,
    pub name: String,
    #[serde(flatten)]
    pub verdict: Positivity,
}

#[derive(Clone, Debug, Serialize)]
pub struct CupEntry {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<Gq>,
    pub power: usize,
    #[serde(flatten)]
    pub map: CupMap,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanEntry {
    pub curve: String,
    #[serde(flatten)]
    pub row: ScanRow,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionEntry {
    pub structure: String,
    pub alpha: String,
    pub direction: String,
    pub solvable: bool,
    #[serde(flatten)]
    pub report: ObstructionReport,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorEntry {
    /// Which analysis failed.
    pub context: String,
    pub kind: &'static str,
    pub mathematical: bool,
    pub message: String,
}

impl ErrorEntry {
    fn new(context: impl Into<String>, e: &Error) -> ErrorEntry {
        ErrorEntry {
            context: context.into(),
            kind: e.kind(),
            mathematical: e.is_mathematical(),
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub manifold: ManifoldInfo,
    pub validity: Validity,
    pub betti: Vec<usize>,
    pub structures: Vec<StructureEntry>,
    pub predicates: Vec<PredicateEntry>,
    pub positivity: Vec<PositivityEntry>,
    pub cup_maps: Vec<CupEntry>,
    pub scan: Vec<ScanEntry>,
    pub obstruction: Vec<ObstructionEntry>,
    pub errors: Vec<ErrorEntry>,
}

impl Report {
    /// 0 on success, 1 if a computation failed mathematically, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.errors.is_empty() {
            0
        } else if self.errors.iter().all(|e| e.mathematical) {
            1
        } else {
            2
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Exit code for an error that prevented a report.
pub fn exit_code_for(e: &Error) -> i32 {
    if e.is_mathematical() {
        1
    } else {
        2
    }
}

/// Label, form, optional root, trials.
type PositivityJob = (String, Form<Gq>, Option<Form<Gq>>, usize);
/// Label, parameter, form, optional (power, source).
type CupJob = (String, Option<Gq>, Form<Gq>, Option<(usize, usize)>);

/// Everything a configuration refers to, looked up.
struct Plan<'a> {
    entry: &'a ZooEntry,
    structures: Vec<(String, AlmostComplexStructure)>,
    main: Option<(String, AlmostComplexStructure)>,
    predicates: Vec<(String, Option<Gq>, Form<Gq>)>,
    positivity: Vec<PositivityJob>,
    cup: Vec<CupJob>,
    scan: Option<(String, DeformationCurve, Vec<Gq>)>,
    obstruction: Option<(ObstructionRequest, Form<Gq>, Matrix<Gq>)>,
}

fn plan<'a>(entry: &'a ZooEntry, config: &AnalysisConfig) -> Result<Plan<'a>> {
    let dim = entry.dim();
    let structures: Vec<(String, AlmostComplexStructure)> = match &config.structure {
        Some(name) => vec![(name.clone(), entry.structure(name)?.clone())],
        None => entry
            .structures
            .iter()
            .map(|s| (s.name.clone(), s.structure.clone()))
            .collect(),
    };
    let main = structures.first().cloned();
    let need_structure = |what: &str| -> Result<()> {
        match main {
            Some(_) => Ok(()),
            None => Err(Error::Config(format!("{what} needs an almost-complex structure"))),
        }
    };
    for &k in &config.stages {
        if k == 0 || k >= dim {
            return Err(Error::Config(format!("stage {k} outside 1..{dim}")));
        }
    }
    let form = |r: &FormRef| entry.resolve_form(&r.form, r.t.as_ref());
    if !config.predicates.is_empty() {
        need_structure("predicates")?;
    }
    let predicates = config
        .predicates
        .iter()
        .map(|r| Ok((r.form.clone(), r.t.clone(), form(r)?)))
        .collect::<Result<Vec<_>>>()?;
    if !config.positivity.is_empty() {
        need_structure("positivity")?;
    }
    let positivity = config
        .positivity
        .iter()
        .map(|r| {
            let root = r.root.as_deref().map(|s| entry.resolve_form(s, None)).transpose()?;
            Ok((r.form.form.clone(), form(&r.form)?, root, r.trials))
        })
        .collect::<Result<Vec<_>>>()?;
    let cup = config
        .cup
        .iter()
        .map(|r| {
            let degrees = match (r.power, r.source) {
                (Some(p), Some(s)) if s + 2 * p <= dim => Some((p, s)),
                (Some(p), Some(s)) => return Err(Error::Config(format!("H^{s} · ω^[{p}] exceeds dimension {dim}"))),
                (None, None) => None,
                _ => return Err(Error::Config("cup maps need both power and source, or neither".into())),
            };
            Ok((r.form.form.clone(), r.form.t.clone(), form(&r.form)?, degrees))
        })
        .collect::<Result<Vec<_>>>()?;
    let scan = config
        .scan
        .as_ref()
        .map(|s| Ok((s.curve.clone(), entry.curve(&s.curve)?.clone(), s.samples.clone())))
        .transpose()?;
    let obstruction = match &config.obstruction {
        Some(o) => {
            need_structure("obstruction")?;
            Some((
                o.clone(),
                entry.resolve_form(&o.alpha, None)?,
                entry.direction(&o.direction)?.clone(),
            ))
        }
        None => None,
    };
    Ok(Plan {
        entry,
        structures,
        main,
        predicates,
        positivity,
        cup,
        scan,
        obstruction,
    })
}

/// Run a configuration. `Err` means nothing was computed.
pub fn run(config: &AnalysisConfig) -> Result<Report> {
    let entry = load_target(&config.target)?;
    run_on(&entry, config)
}

/// Run a configuration against an already loaded manifold; the target
/// field is ignored.
pub fn run_on(entry: &ZooEntry, config: &AnalysisConfig) -> Result<Report> {
    let plan = plan(entry, config)?;
    let p = &plan.entry.presentation;
    let mut errors = Vec::new();

    let betti = betti_numbers(p);

    let spaces: Vec<_> = config
        .stages
        .par_iter()
        .map(|&k| {
            let forms = cohomology_space(p, k, Field::Complex);
            let currents = config.currents.then(|| current_homology_space(p, k, Field::Complex));
            (forms, currents)
        })
        .collect();
    let mut structures = Vec::new();
    for (name, j) in &plan.structures {
        let mut stages = Vec::new();
        let mut current_stages = Vec::new();
        for (forms, currents) in &spaces {
            match stage_report(forms, j) {
                Ok(r) => stages.push(r),
                Err(e) => errors.push(ErrorEntry::new(format!("stage {} of {name}", forms.degree()), &e)),
            }
            if let Some(c) = currents {
                match stage_report(c, j) {
                    Ok(r) => current_stages.push(r),
                    Err(e) => errors.push(ErrorEntry::new(format!("current stage {} of {name}", c.degree()), &e)),
                }
            }
        }
        structures.push(StructureEntry {
            name: name.clone(),
            integrable: is_integrable(p, j),
            stages,
            current_stages,
        });
    }

    let mut predicates = Vec::new();
    if let Some((sname, j)) = &plan.main {
        for (name, t, form) in &plan.predicates {
            match form_predicates(p, j, form) {
                Ok(report) => predicates.push(PredicateEntry {
                    structure: sname.clone(),
                    name: name.clone(),
                    t: t.clone(),
                    report,
                }),
                Err(e) => errors.push(ErrorEntry::new(format!("predicates of {name}"), &e)),
            }
        }
    }

    let mut positivity = Vec::new();
    if let Some((sname, j)) = &plan.main {
        for (i, (name, form, root, trials)) in plan.positivity.iter().enumerate() {
            let seed = config.seed.wrapping_add(i as u64);
            match positivity_on_complex_hyperplanes(j, form, root.as_ref(), *trials, seed) {
                Ok(verdict) => positivity.push(PositivityEntry {
                    structure: sname.clone(),
                    name: name.clone(),
                    verdict,
                }),
                Err(e) => errors.push(ErrorEntry::new(format!("positivity of {name}"), &e)),
            }
        }
    }

    let mut cup_maps = Vec::new();
    let n = p.dim() / 2;
    for (name, t, form, degrees) in &plan.cup {
        let maps: Vec<(usize, usize)> = match degrees {
            Some(d) => vec![*d],
            None => (1..=n).map(|k| (k, n - k)).collect(),
        };
        let results: Vec<_> = maps
            .par_iter()
            .map(|&(power, source)| {
                let space = |k| cohomology_space(p, k, Field::Complex);
                let gamma = form.divided_power(power);
                (
                    power,
                    cup_map_between(&space(source), &space(source + 2 * power), &gamma),
                )
            })
            .collect();
        for (power, r) in results {
            match r {
                Ok(map) => cup_maps.push(CupEntry {
                    name: name.clone(),
                    t: t.clone(),
                    power,
                    map,
                }),
                Err(e) => errors.push(ErrorEntry::new(format!("cup map of {name}^[{power}]"), &e)),
            }
        }
    }

    let mut scan = Vec::new();
    if let Some((curve, c, samples)) = &plan.scan {
        for row in semicontinuity_scan(p, c, samples) {
            scan.push(ScanEntry {
                curve: curve.clone(),
                row,
            });
        }
    }

    let mut obstructions = Vec::new();
    if let (Some((req, alpha, l)), Some((sname, j))) = (&plan.obstruction, &plan.main) {
        match obstruction(p, j, alpha, l, req.order, req.mode) {
            Ok(report) => obstructions.push(ObstructionEntry {
                structure: sname.clone(),
                alpha: req.alpha.clone(),
                direction: req.direction.clone(),
                solvable: report.solvable(),
                report,
            }),
            Err(e) => errors.push(ErrorEntry::new("obstruction", &e)),
        }
    }

    Ok(Report {
        manifold: ManifoldInfo {
            name: plan.entry.name.clone(),
            presentation: plan.entry.notation.clone(),
            mode: plan.entry.mode,
            dim: p.dim(),
            structure: check_presentation(p),
        },
        validity: plan.entry.validity,
        betti,
        structures,
        predicates,
        positivity,
        cup_maps,
        scan,
        obstruction: obstructions,
        errors,
    })
}

fn flag(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Plain-text rendering of a report.
pub fn render_text(r: &Report) -> String {
    use std::fmt::Write;
    let mut s = String::new();
    let m = &r.manifold;
    let _ = writeln!(
        s,
        "{} {} (dim {}, {:?} notation)",
        m.name, m.presentation, m.dim, m.mode
    );
    let _ = writeln!(s, "validity: {:?}", r.validity);
    let _ = writeln!(
        s,
        "betti: {}",
        r.betti.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" ")
    );
    for st in &r.structures {
        let _ = writeln!(s, "structure {}: integrable {}", st.name, flag(st.integrable));
        for (side, stages) in [("forms", &st.stages), ("currents", &st.current_stages)] {
            for g in stages {
                let _ = write!(
                    s,
                    "  stage {} ({side}): pure {} full {} complex-pure {} complex-full {}",
                    g.degree,
                    flag(g.pure),
                    flag(g.full),
                    flag(g.complex_pure),
                    flag(g.complex_full)
                );
                if let (Some(hp), Some(hm)) = (g.h_plus, g.h_minus) {
                    let _ = write!(s, " h+ {hp} h- {hm}");
                }
                s.push('\n');
            }
        }
    }
    for pr in &r.predicates {
        let q = &pr.report;
        let _ = writeln!(
            s,
            "form {} = {} under {}: nondegenerate {} closed {} taming {} compatible {} almost-kahler {} semi-kahler {} balanced {}{}",
            pr.name,
            q.form,
            pr.structure,
            flag(q.nondegenerate),
            flag(q.closed),
            flag(q.taming),
            flag(q.compatible),
            flag(q.almost_kahler),
            flag(q.semi_kahler),
            flag(q.balanced),
            q.hlc.map_or(String::new(), |h| format!(" hlc {}", flag(h)))
        );
        let _ = writeln!(s, "  d = {}", q.d_form);
    }
    for pv in &r.positivity {
        let verdict = match &pv.verdict {
            Positivity::ExactPositive => "positive (exact)".to_string(),
            Positivity::Counterexample { trial, value, .. } => {
                format!("counterexample at trial {trial}, value {value}")
            }
            Positivity::NoCounterexampleFound { trials } => format!("no counterexample in {trials} trials"),
        };
        let _ = writeln!(s, "positivity of {} under {}: {verdict}", pv.name, pv.structure);
    }
    for c in &r.cup_maps {
        let _ = writeln!(
            s,
            "{}^[{}]: H^{} -> H^{} rank {} injective {} surjective {} iso {}",
            c.name,
            c.power,
            c.map.source_degree,
            c.map.target_degree,
            c.map.rank,
            flag(c.map.injective),
            flag(c.map.surjective),
            flag(c.map.iso)
        );
    }
    for row in &r.scan {
        let w = &row.row;
        match &w.error {
            Some(e) => {
                let _ = writeln!(s, "{} at t = {}: {e}", row.curve, w.t);
            }
            None => {
                let opt = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
                let _ = writeln!(
                    s,
                    "{} at t = {}: h+ {} h- {} pure {} full {}",
                    row.curve,
                    w.t,
                    opt(w.h_plus),
                    opt(w.h_minus),
                    w.pure.map_or("-", flag),
                    w.full.map_or("-", flag)
                );
            }
        }
    }
    for o in &r.obstruction {
        let _ = writeln!(
            s,
            "obstruction for {} along {} ({:?}, order {}): {}",
            o.alpha,
            o.direction,
            o.report.mode,
            o.report.requested_order,
            if o.solvable { "solvable" } else { "obstructed" }
        );
        for v in &o.report.orders {
            let _ = writeln!(
                s,
                "  order {}: {}",
                v.order,
                if v.solvable { "solvable" } else { "obstructed" }
            );
            for (h, b) in v.witness.iter().enumerate() {
                let _ = writeln!(s, "    beta_{} = {b}", h + 1);
            }
            if let Some(cert) = &v.certificate {
                for (h, c) in cert.iter().enumerate() {
                    let _ = writeln!(s, "    certificate block {}: {c}", h + 1);
                }
            }
        }
    }
    for e in &r.errors {
        let _ = writeln!(s, "error in {}: {}", e.context, e.message);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn iwasawa_stage_one() {
        let mut c = AnalysisConfig::new("iwasawa");
        c.stages = vec![1];
        c.currents = true;
        let r = run(&c).unwrap();
        assert_eq!(r.betti, vec![1, 4, 8, 10, 8, 4, 1]);
        let s = &r.structures[0];
        assert!(s.integrable);
        assert!(s.stages[0].complex_pure && s.stages[0].complex_full);
        assert!(s.current_stages[0].complex_pure && s.current_stages[0].complex_full);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn obstruction_report_has_certificate() {
        let mut c = AnalysisConfig::new("n6c1");
        c.stages.clear();
        c.obstruction = Some(ObstructionRequest {
            alpha: "e14".into(),
            direction: "b13".into(),
            mode: ObstructionMode::Projected,
            order: 1,
        });
        let r = run(&c).unwrap();
        let o = &r.obstruction[0];
        assert!(!o.solvable);
        assert!(o.report.orders[0].certificate.is_some());
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["obstruction"][0]["solvable"], false);
        assert!(json["obstruction"][0]["orders"][0]["certificate"].is_array());
    }

    #[test]
    fn resolution_errors_come_first() {
        let mut c = AnalysisConfig::new("n1");
        c.predicates = vec![FormRef::new("nosuch")];
        assert_eq!(exit_code_for(&run(&c).unwrap_err()), 2);
        let mut c = AnalysisConfig::new("n1");
        c.obstruction = Some(ObstructionRequest {
            alpha: "e12".into(),
            direction: "missing".into(),
            mode: ObstructionMode::Projected,
            order: 1,
        });
        assert!(matches!(run(&c), Err(Error::UnknownName(_))));
        assert!(matches!(
            run(&AnalysisConfig::new("nosuch")),
            Err(Error::UnknownName(_))
        ));
    }

    #[test]
    fn mathematical_failures_are_collected() {
        let mut c = AnalysisConfig::new("ft6");
        c.structure = Some("J".into());
        c.stages.clear();
        c.predicates = vec![FormRef::new("omega"), FormRef::new("e1")];
        c.cup = vec![CupRequest {
            form: FormRef::new("omega"),
            power: Some(2),
            source: Some(1),
        }];
        let r = run(&c).unwrap();
        assert_eq!(r.predicates.len(), 1);
        assert!(r.predicates[0].report.semi_kahler);
        assert_eq!(r.errors.len(), 1);
        assert_eq!(r.errors[0].kind, "degree_mismatch");
        assert!(!r.cup_maps[0].map.injective);
    }

    #[test]
    fn json_is_deterministic() {
        let mut c = AnalysisConfig::new("etabeta5");
        c.scan = Some(ScanRequest {
            curve: "phi1".into(),
            samples: vec![Gq::zero(), Gq::ratio(1, 2), Gq::ratio(1, 1)],
        });
        c.positivity = vec![PositivityRequest {
            form: FormRef::new("e(1,2,3,4) + e(5,6,7,8)"),
            root: None,
            trials: 5,
        }];
        c.seed = 7;
        let a = run(&c).unwrap().to_json();
        let b = run(&c).unwrap().to_json();
        assert_eq!(a, b);
        assert!(a.contains("\"h_minus\": 10"));
    }

    #[test]
    fn presentation_files() {
        let dir = std::env::temp_dir().join(format!("acscohom-analysis-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let good = dir.join("heis.txt");
        std::fs::write(&good, "# Heisenberg times a line\n(0^2, 12, 0)\n").unwrap();
        let r = run(&AnalysisConfig::new(good.to_str().unwrap())).unwrap();
        assert_eq!(r.manifold.name, "heis");
        assert_eq!(r.betti, vec![1, 3, 4, 3, 1]);
        assert!(r.structures.is_empty());
        let bad = dir.join("bad.txt");
        std::fs::write(&bad, "(0^2, 1x)\n").unwrap();
        let e = run(&AnalysisConfig::new(bad.to_str().unwrap())).unwrap_err();
        assert_eq!(exit_code_for(&e), 2);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
