//! Command-line front end: builds groups, cocycles and twisted doubles,
//! runs the verifiers, and emits consolidated reports.
//!
//! Exit status: 0 when every clause passed, 1 when some clause failed,
//! 2 on malformed input.

use clap::{Parser, Subcommand};
use qdouble::catalog::{default_catalog, make_entry, parse_cocycle, parse_group, CatalogEntry};
use qdouble::cochain::{chi_from_phi, verify_3cocycle, verify_chi_2cocycle};
use qdouble::crossedmod::{
    regular_object_of, verify_hexagon, verify_object, CrossedGModule,
};
use qdouble::dpr::{attach_antipode, build_dpr, verify_dpr, DPRInstance};
use qdouble::group::{load_group_json, verify_group, FiniteGroup};
use qdouble::qhopf::{
    verify_antipode, verify_quasibialgebra, verify_quasitriangular, QuasiHopfData,
};
use qdouble::reconstruct::{
    verify_doudelta, verify_doufg, verify_doufh, verify_douR_douphi_douact,
};
use qdouble::report::{Report, Status};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "qdouble", version, about = "Twisted quantum doubles of finite groups, verified exactly")]
struct Cli {
    /// Emit the report as JSON on stdout
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a finite group from a descriptor or JSON file and verify its
    /// axioms
    Group {
        /// Descriptor: zn:4, s:3, d:4, prod(zn:2,zn:2)
        #[arg(long)]
        spec: Option<String>,
        /// JSON file with {"label", "size", "mul"}
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Verify a 3-cocycle and the 2-cocycle chi it induces
    Cocycle {
        #[arg(long)]
        group: String,
        /// trivial | std:zn:<n>:p=<k> | path to .json
        #[arg(long)]
        cocycle: String,
    },
    /// Build D^phi(G), solve for the antipode, optionally write it out
    Build {
        #[arg(long)]
        group: String,
        #[arg(long)]
        cocycle: String,
        /// Write the full quasi-Hopf data as JSON to this path
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run all quasi-Hopf verifiers on a built double or on raw JSON data
    Verify {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        cocycle: Option<String>,
        /// Raw quasi-Hopf JSON (as written by `build --output`)
        #[arg(long)]
        input: Option<PathBuf>,
        /// Previous RunReport JSON; exit 0 iff its failed clauses reproduce
        #[arg(long)]
        replay: Option<PathBuf>,
    },
    /// Verify the crossed-module category on the regular object, or on an
    /// object file
    Crossed {
        #[arg(long)]
        group: String,
        #[arg(long)]
        cocycle: String,
        /// JSON object file {"group","cocycle","grading","action"}
        #[arg(long)]
        object: Option<PathBuf>,
        #[arg(long)]
        replay: Option<PathBuf>,
    },
    /// Verify the general quantum-double relations on the instance
    Reconstruct {
        #[arg(long)]
        group: String,
        #[arg(long)]
        cocycle: String,
        /// Comma-separated subset of doufh,doufg,doudelta,structural or `all`
        #[arg(long, default_value = "all")]
        relations: String,
        #[arg(long)]
        replay: Option<PathBuf>,
    },
    /// Run the full verification matrix over a catalog
    Suite {
        #[arg(long, default_value = "default")]
        catalog: String,
    },
}

#[derive(Serialize)]
struct Inputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cocycle: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    scalar_order: Option<u64>,
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    inputs: Inputs,
    clauses: Vec<qdouble::report::Clause>,
    wall_time: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let (command, inputs, report, replay) = match run(&cli.command) {
        Ok(t) => t,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let run_report = RunReport {
        command,
        inputs,
        clauses: report.clauses.clone(),
        wall_time: started.elapsed().as_secs_f64(),
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&run_report).expect("serializable report"));
    } else {
        for c in &report.clauses {
            match c.status {
                Status::Pass => println!("PASS {}", c.name),
                Status::Skipped => {
                    let why = c.witness.as_ref().map(|w| w.detail.as_str()).unwrap_or("");
                    println!("SKIP {} ({why})", c.name);
                }
                Status::Fail => {
                    let w = c.witness.as_ref();
                    println!(
                        "FAIL {} at {:?}: {}",
                        c.name,
                        w.map(|w| w.indices.clone()).unwrap_or_default(),
                        w.map(|w| w.detail.as_str()).unwrap_or("")
                    );
                }
            }
        }
        let failed = report.failed_clauses().count();
        println!(
            "{} clauses, {failed} failed, {:.2}s",
            report.clauses.len(),
            run_report.wall_time
        );
    }

    if let Some(path) = replay {
        return match check_replay(&path, &report) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
        };
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

type RunOutcome = (String, Inputs, Report, Option<PathBuf>);

fn run(command: &Command) -> Result<RunOutcome, String> {
    match command {
        Command::Group { spec, input } => {
            let g = load_group_arg(spec.as_deref(), input.as_deref())?;
            let report = verify_group(&g);
            Ok((
                "group".to_string(),
                Inputs {
                    group: Some(g.label.clone()),
                    cocycle: None,
                    scalar_order: None,
                },
                report,
                None,
            ))
        }
        Command::Cocycle { group, cocycle } => {
            let g = parse_group(group).map_err(|e| e.to_string())?;
            let phi = parse_cocycle(&g, cocycle).map_err(|e| e.to_string())?;
            let mut report = verify_3cocycle(&phi);
            match chi_from_phi(&phi) {
                Ok(chi) => report.merge("chi", verify_chi_2cocycle(&chi)),
                Err(e) => report.fail("chi", vec![], e.to_string()),
            }
            Ok((
                "cocycle".to_string(),
                Inputs {
                    group: Some(group.clone()),
                    cocycle: Some(cocycle.clone()),
                    scalar_order: Some(phi.scalar_order()),
                },
                report,
                None,
            ))
        }
        Command::Build {
            group,
            cocycle,
            output,
        } => {
            let dd = build_instance(group, cocycle)?;
            let mut report = Report::new();
            report.pass("built");
            match &dd.antipode_note {
                None => report.pass("antipode_attached"),
                Some(note) => report.skip("antipode_attached", note.clone()),
            }
            if let Some(path) = output {
                std::fs::write(
                    path,
                    serde_json::to_string_pretty(&dd.qhopf.to_json())
                        .expect("serializable instance"),
                )
                .map_err(|e| e.to_string())?;
                report.pass("written");
            }
            Ok((
                "build".to_string(),
                instance_inputs(group, cocycle, &dd),
                report,
                None,
            ))
        }
        Command::Verify {
            group,
            cocycle,
            input,
            replay,
        } => {
            let (inputs, report) = match (group, cocycle, input) {
                (Some(g), Some(c), None) => {
                    let dd = build_instance(g, c)?;
                    (instance_inputs(g, c, &dd), verify_dpr(&dd))
                }
                (None, None, Some(path)) => {
                    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
                    let value: serde_json::Value =
                        serde_json::from_str(&text).map_err(|e| e.to_string())?;
                    let h = QuasiHopfData::from_json(value).map_err(|e| e.to_string())?;
                    let mut report = Report::new();
                    report.merge("bialgebra", verify_quasibialgebra(&h));
                    report.merge("quasitriangular", verify_quasitriangular(&h));
                    report.merge("antipode", verify_antipode(&h));
                    (
                        Inputs {
                            group: None,
                            cocycle: Some(path.display().to_string()),
                            scalar_order: Some(h.order()),
                        },
                        report,
                    )
                }
                _ => {
                    return Err(
                        "pass either --group and --cocycle, or --input alone".to_string()
                    )
                }
            };
            Ok(("verify".to_string(), inputs, report, replay.clone()))
        }
        Command::Crossed {
            group,
            cocycle,
            object,
            replay,
        } => {
            let dd = build_instance(group, cocycle)?;
            let obj = match object {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
                    let value: serde_json::Value =
                        serde_json::from_str(&text).map_err(|e| e.to_string())?;
                    CrossedGModule::from_json(value).map_err(|e| e.to_string())?
                }
                None => regular_object_of(&dd).map_err(|e| e.to_string())?,
            };
            let mut report = Report::new();
            report.merge("object", verify_object(&obj));
            report.merge("hexagon", verify_hexagon(&obj, &obj, &obj));
            Ok((
                "crossed".to_string(),
                instance_inputs(group, cocycle, &dd),
                report,
                replay.clone(),
            ))
        }
        Command::Reconstruct {
            group,
            cocycle,
            relations,
            replay,
        } => {
            let dd = build_instance(group, cocycle)?;
            let mut report = Report::new();
            for rel in relations.split(',') {
                match rel.trim() {
                    "all" => {
                        report.clauses.extend(verify_doufh(&dd).clauses);
                        report.clauses.extend(verify_doufg(&dd).clauses);
                        report.clauses.extend(verify_doudelta(&dd).clauses);
                        report.clauses.extend(verify_douR_douphi_douact(&dd).clauses);
                    }
                    "doufh" => report.clauses.extend(verify_doufh(&dd).clauses),
                    "doufg" => report.clauses.extend(verify_doufg(&dd).clauses),
                    "doudelta" => report.clauses.extend(verify_doudelta(&dd).clauses),
                    "structural" => {
                        report.clauses.extend(verify_douR_douphi_douact(&dd).clauses)
                    }
                    other => return Err(format!("unknown relation `{other}`")),
                }
            }
            Ok((
                "reconstruct".to_string(),
                instance_inputs(group, cocycle, &dd),
                report,
                replay.clone(),
            ))
        }
        Command::Suite { catalog } => {
            let entries = match catalog.as_str() {
                "default" => default_catalog().map_err(|e| e.to_string())?,
                other => return Err(format!("unknown catalog `{other}`")),
            };
            let report = run_suite(entries)?;
            Ok((
                "suite".to_string(),
                Inputs {
                    group: None,
                    cocycle: Some(catalog.clone()),
                    scalar_order: None,
                },
                report,
                None,
            ))
        }
    }
}

fn load_group_arg(
    spec: Option<&str>,
    input: Option<&std::path::Path>,
) -> Result<FiniteGroup, String> {
    match (spec, input) {
        (Some(s), None) => parse_group(s).map_err(|e| e.to_string()),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| e.to_string())?;
            load_group_json(&value).map_err(|e| e.to_string())
        }
        _ => Err("pass exactly one of --spec or --input".to_string()),
    }
}

fn build_instance(group: &str, cocycle: &str) -> Result<DPRInstance, String> {
    let entry = make_entry(group, cocycle).map_err(|e| e.to_string())?;
    let dd = build_dpr(&entry.group, &entry.cocycle).map_err(|e| e.to_string())?;
    attach_antipode(dd).map_err(|e| e.to_string())
}

fn instance_inputs(group: &str, cocycle: &str, dd: &DPRInstance) -> Inputs {
    Inputs {
        group: Some(group.to_string()),
        cocycle: Some(cocycle.to_string()),
        scalar_order: Some(dd.qhopf.order()),
    }
}

/// One verification pass per entry: double axioms, crossed-module category
/// on the regular object, and the reconstruction relations. Entries fan
/// out over up to QDOUBLE_WORKERS threads; aggregation stays in catalog
/// order.
fn run_suite(entries: Vec<CatalogEntry>) -> Result<Report, String> {
    let workers: usize = std::env::var("QDOUBLE_WORKERS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|w| *w >= 1)
        .unwrap_or(1);
    let results: Vec<Result<(String, Report), String>> = if workers <= 1 {
        entries.iter().map(suite_entry).collect()
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = entries
                .chunks(entries.len().div_ceil(workers))
                .map(|chunk| scope.spawn(move || chunk.iter().map(suite_entry).collect::<Vec<_>>()))
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("suite worker panicked"))
                .collect()
        })
    };
    let mut report = Report::new();
    for r in results {
        let (label, entry_report) = r?;
        report.merge(&label, entry_report);
    }
    Ok(report)
}

fn suite_entry(entry: &CatalogEntry) -> Result<(String, Report), String> {
    let dd = build_dpr(&entry.group, &entry.cocycle).map_err(|e| e.to_string())?;
    let dd = attach_antipode(dd).map_err(|e| e.to_string())?;
    let mut report = verify_dpr(&dd);
    let regular = regular_object_of(&dd).map_err(|e| e.to_string())?;
    report.merge("crossed.object", verify_object(&regular));
    report.merge(
        "crossed.hexagon",
        verify_hexagon(&regular, &regular, &regular),
    );
    report.clauses.extend(verify_doufh(&dd).clauses);
    report.clauses.extend(verify_doufg(&dd).clauses);
    report.clauses.extend(verify_doudelta(&dd).clauses);
    report.clauses.extend(verify_douR_douphi_douact(&dd).clauses);
    Ok((entry.label.clone(), report))
}

/// Re-running must reproduce exactly the failed clauses recorded in the
/// old report (name, indices and detail).
fn check_replay(path: &std::path::Path, fresh: &Report) -> Result<bool, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let old: Vec<qdouble::report::Clause> =
        serde_json::from_value(value["clauses"].clone()).map_err(|e| e.to_string())?;
    let mut reproduced = true;
    for clause in old.iter().filter(|c| c.status == Status::Fail) {
        match fresh.clause(&clause.name) {
            Some(new) if new.status == Status::Fail && new.witness == clause.witness => {}
            _ => {
                eprintln!("replay: clause `{}` did not reproduce", clause.name);
                reproduced = false;
            }
        }
    }
    if reproduced {
        eprintln!("replay: all recorded failures reproduced");
    }
    Ok(reproduced)
}
