mod commands;
mod input;
mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use amalgsep::engine::{Bounds, CaseId, DEFAULT_CATALOG_BOUND, DEFAULT_MAX_ORDER};

use commands::{Done, Failure};
use report::{Job, Report, Status};

const AFTER_HELP: &str = "\
Exit codes: 0 success, 1 negative verdict (not compatible, member, obstructed,
failed assertion), 2 input error, 3 bound exhausted. For `amalgam member` and
`witness`, membership counts as the negative outcome.

Default bounds: catalog order <= 48 for compatible-pair scans, witness target
order <= 256.

AMALGSEP_THREADS caps the number of worker threads.";

#[derive(Parser)]
#[command(name = "amalgsep", version, about = "Compatibility, normal forms and separability witnesses for amalgamated free products", after_help = AFTER_HELP)]
struct Cli {
    /// Where to write the JSON report.
    #[arg(long, short, global = true, default_value = "amalgsep-report.json")]
    out: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Finite groups given by multiplication tables.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Normal forms and cyclic membership.
    #[command(subcommand)]
    Amalgam(AmalgamCmd),
    /// Whether <g> is p'-isolated, with a root certificate when it is not.
    Isolate {
        pres: PathBuf,
        g: String,
        #[arg(long)]
        p: u64,
    },
    /// Compatible pairs of normal subgroups.
    #[command(subcommand)]
    Compat(CompatCmd),
    /// Separate h from <g> by a homomorphism onto a finite (p-)group.
    Witness {
        pres: PathBuf,
        h: String,
        g: String,
        /// Work with finite p-groups.
        #[arg(long)]
        p: Option<u64>,
        /// Largest witness target order.
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
        /// Largest catalog order scanned for compatible pairs of free factors.
        #[arg(long, default_value_t = DEFAULT_CATALOG_BOUND)]
        bound: usize,
    },
    /// Run a case study.
    Case {
        case: CaseName,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 3)]
        q: u64,
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, default_value_t = DEFAULT_CATALOG_BOUND)]
        bound: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Validate a group file.
    Check { file: PathBuf },
}

#[derive(Subcommand)]
enum AmalgamCmd {
    /// Load and validate a presentation.
    Build { pres: PathBuf },
    /// Normal form, cyclic reduction and order of an element.
    Reduce { pres: PathBuf, word: String },
    /// Whether h is a power of g.
    Member { pres: PathBuf, h: String, g: String },
}

#[derive(Subcommand)]
enum CompatCmd {
    /// Check one pair (R, S), given by comma-separated generators (trivial
    /// when omitted).
    Check {
        pres: PathBuf,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        r: Option<String>,
        #[arg(long)]
        s: Option<String>,
    },
    /// All compatible pairs; for free factors, those realized in catalog
    /// groups up to the bound.
    Enum {
        pres: PathBuf,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_CATALOG_BOUND)]
        bound: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseName {
    Thm21,
    Sec3,
    CyclicRemark,
}

/// Seed of the cyclic-amalgamation trials.
const CASE_SEED: u64 = 1;

fn job(command: &str, inputs: &[&dyn ToString], parameters: &[(&str, Value)]) -> Job {
    Job {
        command: command.into(),
        inputs: inputs.iter().map(|s| s.to_string()).collect(),
        parameters: parameters.iter().map(|(k, v)| (k.to_string(), v.clone())).collect::<BTreeMap<_, _>>(),
    }
}

fn path_str(p: &std::path::Path) -> String {
    p.display().to_string()
}

fn dispatch(command: &Command) -> (Job, Result<Done, Failure>) {
    use commands as c;
    let load = |p: &PathBuf| input::load_presentation(p).map_err(Failure::from);
    let elem = |s: &str| input::load_element(s).map_err(Failure::from);
    match command {
        Command::Group(GroupCmd::Check { file }) => (job("group check", &[&path_str(file)], &[]), c::group_check(file)),
        Command::Amalgam(AmalgamCmd::Build { pres }) => {
            (job("amalgam build", &[&path_str(pres)], &[]), load(pres).and_then(|d| c::amalgam_build(&d)))
        }
        Command::Amalgam(AmalgamCmd::Reduce { pres, word }) => (
            job("amalgam reduce", &[&path_str(pres), word], &[]),
            load(pres).and_then(|d| c::amalgam_reduce(&d, &elem(word)?)),
        ),
        Command::Amalgam(AmalgamCmd::Member { pres, h, g }) => (
            job("amalgam member", &[&path_str(pres), h, g], &[]),
            load(pres).and_then(|d| c::amalgam_member(&d, &elem(h)?, &elem(g)?)),
        ),
        Command::Isolate { pres, g, p } => (
            job("isolate", &[&path_str(pres), g], &[("p", json!(p))]),
            load(pres).and_then(|d| c::isolate(&d, &elem(g)?, *p)),
        ),
        Command::Compat(CompatCmd::Check { pres, p, r, s }) => (
            job("compat check", &[&path_str(pres)], &[("p", json!(p)), ("r", json!(r)), ("s", json!(s))]),
            load(pres).and_then(|d| c::compat_check(&d, *p, r.as_deref(), s.as_deref())),
        ),
        Command::Compat(CompatCmd::Enum { pres, p, bound }) => (
            job("compat enum", &[&path_str(pres)], &[("p", json!(p)), ("bound", json!(bound))]),
            load(pres).and_then(|d| c::compat_enum(&d, *p, *bound)),
        ),
        Command::Witness { pres, h, g, p, max_order, bound } => (
            job(
                "witness",
                &[&path_str(pres), h, g],
                &[("p", json!(p)), ("max_order", json!(max_order)), ("bound", json!(bound))],
            ),
            load(pres).and_then(|d| {
                c::witness(&d, &elem(h)?, &elem(g)?, *p, Bounds { catalog: *bound, max_order: *max_order })
            }),
        ),
        Command::Case { case, p, q, n, bound, trials } => {
            let (name, id, params) = match case {
                CaseName::Thm21 => ("thm21", CaseId::FreeFactors { bound: *bound }, vec![("bound", json!(bound))]),
                CaseName::Sec3 => (
                    "sec3",
                    CaseId::Counterexample { p: *p, q: *q, n: *n },
                    vec![("p", json!(p)), ("q", json!(q)), ("n", json!(n))],
                ),
                CaseName::CyclicRemark => (
                    "cyclic-remark",
                    CaseId::CyclicAmalgamation { trials: *trials, seed: CASE_SEED },
                    vec![("trials", json!(trials)), ("seed", json!(CASE_SEED))],
                ),
            };
            (job(&format!("case {name}"), &[], &params), c::case(id))
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("AMALGSEP_THREADS") else { return Ok(()) };
    let n: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("AMALGSEP_THREADS must be a positive integer, got {value:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(Status::InputError.exit_code() as u8);
    }
    let (job, outcome) = dispatch(&cli.command);
    let report = match outcome {
        Ok(Done { status, summary, result }) => Report::new(job, status, summary, Some(result), None),
        Err(Failure::Input(e)) => Report::new(job, Status::InputError, format!("input error: {e}"), None, Some(e)),
        Err(Failure::BoundExhausted(e)) => Report::new(job, Status::BoundExhausted, e.clone(), None, Some(e)),
    };
    println!("{}", report.summary);
    if let Err(e) = report.write(&cli.out) {
        eprintln!("error: cannot write {}: {e}", cli.out.display());
        return ExitCode::from(Status::InputError.exit_code() as u8);
    }
    ExitCode::from(report.exit_code as u8)
}
