use std::process::ExitCode;

use acscohom::analysis::{
    exit_code_for, render_text, run, AnalysisConfig, CupRequest, FormRef, ObstructionRequest, PositivityRequest,
    Report, ScanRequest,
};
use acscohom::deform::ObstructionMode;
use acscohom::zoo::{catalog, lookup, Check, ZooEntry};
use acscohom::{Error, Gq};
use clap::{Args, Parser, Subcommand};

/// Exact invariant cohomology under almost-complex structures.
#[derive(Parser, Debug)]
#[command(name = "acscohom", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Built-in manifolds.
    Zoo {
        #[command(subcommand)]
        action: ZooAction,
    },
    /// Betti numbers and pure/full stages.
    Analyze {
        #[command(flatten)]
        target: Target,
        /// Stage to report; repeatable.
        #[arg(long = "stage")]
        stages: Vec<usize>,
        /// Also report the current side.
        #[arg(long)]
        currents: bool,
    },
    /// Metric predicates of 2-forms, and positivity of (2n−2)-forms.
    Predicates {
        #[command(flatten)]
        target: Target,
        /// Named form or expression; repeatable.
        #[arg(long = "form")]
        forms: Vec<String>,
        /// Parameter value for forms with a velocity.
        #[arg(long)]
        t: Option<Gq>,
        /// (2n−2)-form to test on complex hyperplanes; repeatable.
        #[arg(long = "positivity")]
        positivity: Vec<String>,
        /// ψ with Φ = c ψ^{n−1}.
        #[arg(long)]
        root: Option<String>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Cup maps [a] ↦ [ω^[k] ∧ a]; without --power, the Lefschetz family.
    Cup {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        form: String,
        #[arg(long)]
        t: Option<Gq>,
        #[arg(long, requires = "source")]
        power: Option<usize>,
        #[arg(long, requires = "power")]
        source: Option<usize>,
    },
    /// h⁺, h⁻ and stage-2 flags along a curve.
    Scan {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        curve: String,
        /// Comma-separated parameter values such as `0,1/2,1/4 i`.
        #[arg(long, value_delimiter = ',', required = true)]
        samples: Vec<Gq>,
    },
    /// Order-by-order obstruction for deforming a J-invariant class.
    Obstruction {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        direction: String,
        #[arg(long, default_value = "projected")]
        mode: ObstructionMode,
        #[arg(long, default_value_t = 1)]
        order: u32,
    },
}

#[derive(Args, Debug)]
struct Target {
    /// Zoo name, JSON manifold file, or presentation file.
    target: String,
    /// Structure name.
    #[arg(long)]
    structure: Option<String>,
}

#[derive(Subcommand, Debug)]
enum ZooAction {
    List,
    Show {
        name: String,
    },
    /// Run expectation records; all entries when no name is given.
    Verify {
        name: Option<String>,
    },
}

fn config(target: Target, seed: u64) -> AnalysisConfig {
    let mut c = AnalysisConfig::new(&target.target);
    c.structure = target.structure;
    c.stages.clear();
    c.seed = seed;
    c
}

fn emit_report(report: &Report, json: bool) -> ExitCode {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", render_text(report));
    }
    ExitCode::from(report.exit_code() as u8)
}

fn fail(e: &Error, json: bool) -> ExitCode {
    if json {
        let body = serde_json::json!({
            "errors": [{ "context": "config", "kind": e.kind(), "mathematical": e.is_mathematical(), "message": e.to_string() }]
        });
        eprintln!("{}", serde_json::to_string_pretty(&body).expect("static json"));
    } else {
        eprintln!("error: {e}");
    }
    ExitCode::from(exit_code_for(e) as u8)
}

fn zoo(action: ZooAction, json: bool) -> Result<ExitCode, Error> {
    match action {
        ZooAction::List => {
            if json {
                let rows: Vec<_> = catalog()
                    .iter()
                    .map(|e| {
                        serde_json::json!({
                            "name": e.name,
                            "presentation": e.notation,
                            "dim": e.dim(),
                            "validity": e.validity,
                            "description": e.description,
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&rows).expect("json"));
            } else {
                for e in catalog() {
                    println!("{:<10} {:<26} {}", e.name, e.notation, e.description);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        ZooAction::Show { name } => {
            let e = lookup(&name)?;
            if json {
                let body = serde_json::json!({ "spec": e.to_spec(), "expectations": e.expectations });
                println!("{}", serde_json::to_string_pretty(&body).expect("json"));
            } else {
                show(e);
            }
            Ok(ExitCode::SUCCESS)
        }
        ZooAction::Verify { name } => {
            let entries: Vec<&ZooEntry> = match name {
                Some(n) => vec![lookup(&n)?],
                None => catalog().iter().collect(),
            };
            let mut all = true;
            let mut out = Vec::new();
            for e in entries {
                let checks = e.verify();
                all &= checks.iter().all(|c| c.pass);
                if json {
                    out.push(serde_json::json!({ "name": e.name, "checks": checks }));
                } else {
                    for c in &checks {
                        println!("{}", check_line(e, c));
                    }
                }
            }
            if json {
                println!("{}", serde_json::to_string_pretty(&out).expect("json"));
            }
            Ok(if all { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn check_line(e: &ZooEntry, c: &Check) -> String {
    let got = match (&c.actual, &c.error) {
        (Some(a), _) => a.to_string(),
        (None, Some(err)) => format!("error: {err}"),
        (None, None) => "-".into(),
    };
    format!(
        "{} {:<9} {:?}: expected {}, got {} ({})",
        if c.pass { "PASS" } else { "FAIL" },
        e.name,
        c.expectation.quantity,
        c.expectation.expected,
        got,
        c.expectation.source
    )
}

fn show(e: &ZooEntry) {
    println!("{}: {}", e.name, e.description);
    println!(
        "presentation {} ({:?} notation), validity {:?}",
        e.notation, e.mode, e.validity
    );
    for s in &e.structures {
        let coframe: Vec<String> = s.structure.coframe().iter().map(|f| f.to_string()).collect();
        println!("structure {}: {}", s.name, coframe.join(", "));
    }
    for f in &e.forms {
        match &f.velocity {
            Some(v) => println!("form {} = {} + t ({})", f.name, f.form, v),
            None => println!("form {} = {}", f.name, f.form),
        }
    }
    for c in &e.curves {
        let terms: Vec<String> = c
            .base
            .iter()
            .zip(&c.velocity)
            .map(|(b, v)| {
                if v.is_zero() {
                    b.to_string()
                } else {
                    format!("{b} + t ({v})")
                }
            })
            .collect();
        println!("curve {}: {}", c.name, terms.join(", "));
    }
    for d in &e.directions {
        println!("direction {}: {:?}", d.name, d.matrix);
    }
    println!("{} expectation records", e.expectations.len());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    let seed = cli.seed;
    let cfg = match cli.command {
        Command::Zoo { action } => return zoo(action, json).unwrap_or_else(|e| fail(&e, json)),
        Command::Analyze {
            target,
            stages,
            currents,
        } => {
            let mut c = config(target, seed);
            c.stages = if stages.is_empty() { vec![2] } else { stages };
            c.currents = currents;
            c
        }
        Command::Predicates {
            target,
            forms,
            t,
            positivity,
            root,
            trials,
        } => {
            let mut c = config(target, seed);
            c.predicates = forms
                .iter()
                .map(|f| FormRef {
                    form: f.clone(),
                    t: t.clone(),
                })
                .collect();
            c.positivity = positivity
                .iter()
                .map(|f| PositivityRequest {
                    form: FormRef {
                        form: f.clone(),
                        t: t.clone(),
                    },
                    root: root.clone(),
                    trials,
                })
                .collect();
            c
        }
        Command::Cup {
            target,
            form,
            t,
            power,
            source,
        } => {
            let mut c = config(target, seed);
            c.cup = vec![CupRequest {
                form: FormRef { form, t },
                power,
                source,
            }];
            c
        }
        Command::Scan { target, curve, samples } => {
            let mut c = config(target, seed);
            c.scan = Some(ScanRequest { curve, samples });
            c
        }
        Command::Obstruction {
            target,
            alpha,
            direction,
            mode,
            order,
        } => {
            let mut c = config(target, seed);
            c.obstruction = Some(ObstructionRequest {
                alpha,
                direction,
                mode,
                order,
            });
            c
        }
    };
    match run(&cfg) {
        Ok(report) => emit_report(&report, json),
        Err(e) => fail(&e, json),
    }
}
