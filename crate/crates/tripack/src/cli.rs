//! The `tripack` command line.
//!
//! Exit codes: 0 success, 1 verification failed, 2 invalid parameters,
//! 3 search budget exhausted. Every failure writes one line starting with
//! `E:<code>:` to stderr.

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use tripack_core::bounds::{compute_f, compute_g};
use tripack_core::designs::{construct_pbd35, construct_sts, construct_ts};
use tripack_core::extremal::{construct_extremal, construct_extremal_unchecked, verify_extremal_with_budget};
use tripack_core::measure::{graph_matching_number, leave, DEFAULT_MATCHING_BUDGET};
use tripack_core::mpts::construct_mpts;
use tripack_core::oracle::{OracleConfig, Problem, DEFAULT_BUDGET};

use crate::driver::run_oracle;
use crate::formats::{
    edge_list, hypergraph_to_json, parse_document, pbd_to_json, system_to_json, Document, ExtremalCertificate,
    MptsCertificate, ReportFile, SystemCertificate,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_PARAMS: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "tripack", version, about = "Extremal 3-graphs with bounded codegree and matching number")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Output {
    /// Write the result here instead of stdout.
    #[arg(short = 'o', long = "output", value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Certified {
    #[command(flatten)]
    out: Output,
    /// Certificate path; defaults to `<output>.cert.json`, or stderr.
    #[arg(long, value_name = "FILE")]
    cert: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Search {
    /// Node budget per root branch.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Lift the soft size limits.
    #[arg(long)]
    force: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print f(n, ν, Δ₂).
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        nu: usize,
        #[arg(long)]
        delta2: usize,
    },
    /// Print g(ν, λ, s).
    G {
        #[arg(long)]
        nu: usize,
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        s: usize,
    },
    /// Steiner triple system.
    Sts {
        #[arg(long)]
        nu: usize,
        #[command(flatten)]
        out: Output,
    },
    /// λ-fold triple system.
    Ts {
        #[arg(long)]
        nu: usize,
        #[arg(long)]
        lambda: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// PBD(ν, {3, 5*}, 1).
    Pbd {
        #[arg(long)]
        nu: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Maximum partial triple system with leave matching at least s.
    Mpts {
        #[arg(long)]
        nu: usize,
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Certified,
    },
    /// Extremal 3-graph on n vertices.
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        nu: usize,
        #[arg(long)]
        delta2: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Build below the construction threshold.
        #[arg(long)]
        force: bool,
        #[command(flatten)]
        out: Certified,
    },
    /// Check a stored h3-v1 or pts-v1 file.
    Verify {
        #[arg(long, value_name = "FILE")]
        file: PathBuf,
        /// Matching-number cap (h3-v1), or expected point count (pts-v1).
        #[arg(long)]
        nu: Option<usize>,
        /// Codegree cap (h3-v1 only).
        #[arg(long)]
        delta2: Option<usize>,
        /// Expected λ (pts-v1 only).
        #[arg(long)]
        lambda: Option<usize>,
        /// Require g(ν, λ, s) triples and a leave matching of size s (pts-v1 only).
        #[arg(long)]
        s: Option<usize>,
        /// Require every pair covered exactly λ times (pts-v1 only).
        #[arg(long)]
        complete: bool,
        /// Node budget for the exact matching number.
        #[arg(long, default_value_t = DEFAULT_MATCHING_BUDGET)]
        budget: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Exhaustive search at tiny sizes.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Most triples in a PTS(ν, λ) whose leave has s independent edges.
    Mpts {
        #[arg(long)]
        nu: usize,
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        s: usize,
        #[command(flatten)]
        search: Search,
    },
    /// Most edges with codegree ≤ Δ₂ and matching number ≤ ν.
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        nu: usize,
        #[arg(long)]
        delta2: usize,
        #[command(flatten)]
        search: Search,
    },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn params(message: impl fmt::Display) -> Self {
        Failure { code: EXIT_PARAMS, message: message.to_string() }
    }
}

impl From<tripack_core::Error> for Failure {
    fn from(e: tripack_core::Error) -> Self {
        let code = if e.is_resource_error() {
            EXIT_BUDGET
        } else if e.is_parameter_error() {
            EXIT_PARAMS
        } else {
            EXIT_FAILED
        };
        Failure { code, message: e.to_string() }
    }
}

/// Parses `argv` (program name first) and runs it against the real stdout
/// and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut io::stdout().lock(), &mut io::stderr().lock())
}

/// [`run`] with explicit streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
        Err(e) => {
            let text = e.render().to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "E:{EXIT_PARAMS}: {}", first.trim_start_matches("error: "));
            return EXIT_PARAMS;
        }
    };
    let mut sink = Sink { out, err };
    match dispatch(cli.command, &mut sink) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(sink.err, "E:{}: {}", f.code, f.message);
            f.code
        }
    }
}

struct Sink<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Sink<'_> {
    fn emit(&mut self, path: Option<&Path>, text: &str) -> Result<(), Failure> {
        match path {
            Some(p) => fs::write(p, format!("{text}\n"))
                .map_err(|e| Failure::params(format!("cannot write {}: {e}", p.display()))),
            None => writeln!(self.out, "{text}").map_err(|e| Failure::params(format!("cannot write output: {e}"))),
        }
    }

    /// Main document to `-o` or stdout; certificate to `--cert`, next to
    /// the output, or stderr.
    fn emit_certified(&mut self, target: &Certified, text: &str, cert: &str) -> Result<(), Failure> {
        self.emit(target.out.output.as_deref(), text)?;
        let cert_path = target.cert.clone().or_else(|| {
            target.out.output.as_ref().map(|p| {
                let mut s = p.clone().into_os_string();
                s.push(".cert.json");
                PathBuf::from(s)
            })
        });
        match cert_path {
            Some(p) => fs::write(&p, format!("{cert}\n"))
                .map_err(|e| Failure::params(format!("cannot write {}: {e}", p.display()))),
            None => writeln!(self.err, "{cert}").map_err(|e| Failure::params(format!("cannot write certificate: {e}"))),
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serialises")
}

fn dispatch(command: Command, sink: &mut Sink<'_>) -> Result<i32, Failure> {
    match command {
        Command::Bound { n, nu, delta2 } => {
            sink.emit(None, &compute_f(n, nu, delta2)?.to_string())?;
        }
        Command::G { nu, lambda, s } => {
            sink.emit(None, &compute_g(nu, lambda, s)?.to_string())?;
        }
        Command::Sts { nu, out } => {
            sink.emit(out.output.as_deref(), &system_to_json(&construct_sts(nu)?))?;
        }
        Command::Ts { nu, lambda, seed, out } => {
            sink.emit(out.output.as_deref(), &system_to_json(&construct_ts(nu, lambda, seed)?))?;
        }
        Command::Pbd { nu, seed, out } => {
            sink.emit(out.output.as_deref(), &pbd_to_json(&construct_pbd35(nu, seed)?))?;
        }
        Command::Mpts { nu, lambda, s, seed, out } => {
            let r = construct_mpts(nu, lambda, s, seed)?;
            let cert = MptsCertificate {
                case_tag: r.case_tag.to_string(),
                nu,
                lambda,
                s,
                e: r.system.edge_count(),
                g: compute_g(nu, lambda, s)?,
                leave_matching: graph_matching_number(&r.leave_graph),
                leave: edge_list(&r.leave_graph),
            };
            sink.emit_certified(&out, &system_to_json(&r.system), &to_json(&cert))?;
        }
        Command::Extremal { n, nu, delta2, seed, force, out } => {
            let ex = if force {
                construct_extremal_unchecked(n, nu, delta2, seed)?
            } else {
                construct_extremal(n, nu, delta2, seed)?
            };
            let cert = ExtremalCertificate::from(&ex.certificate);
            sink.emit_certified(&out, &hypergraph_to_json(&ex.hypergraph), &to_json(&cert))?;
            if !cert.passed {
                return Err(Failure { code: EXIT_FAILED, message: format!("certificate failed: {}", cert.notes) });
            }
        }
        Command::Verify { file, nu, delta2, lambda, s, complete, budget, out } => {
            let text = fs::read_to_string(&file)
                .map_err(|e| Failure::params(format!("cannot read {}: {e}", file.display())))?;
            let doc = parse_document(&text).map_err(|e| Failure::params(format!("{}: {e}", file.display())))?;
            let (report, passed) = match doc {
                Document::Hypergraph(h) => {
                    if lambda.is_some() || s.is_some() || complete {
                        return Err(Failure::params("--lambda, --s and --complete apply to pts-v1 files"));
                    }
                    let (Some(nu), Some(delta2)) = (nu, delta2) else {
                        return Err(Failure::params("verifying an h3-v1 file needs --nu and --delta2"));
                    };
                    let cert = ExtremalCertificate::from(&verify_extremal_with_budget(&h, nu, delta2, budget)?);
                    (to_json(&cert), cert.passed)
                }
                doc => {
                    if delta2.is_some() {
                        return Err(Failure::params("--delta2 applies to h3-v1 files"));
                    }
                    let cert = verify_system(&doc, nu, lambda, s, complete)?;
                    (to_json(&cert), cert.passed)
                }
            };
            sink.emit(out.output.as_deref(), &report)?;
            if !passed {
                return Ok(EXIT_FAILED);
            }
        }
        Command::Oracle(cmd) => {
            let (problem, search) = match cmd {
                OracleCommand::Mpts { nu, lambda, s, search } => (Problem::Mpts { nu, lambda, s }, search),
                OracleCommand::Extremal { n, nu, delta2, search } => (Problem::Extremal { n, nu, delta2 }, search),
            };
            let cfg = OracleConfig { budget: search.budget, force: search.force, order: None };
            let report = run_oracle(problem, &cfg, search.threads)?;
            sink.emit(search.out.output.as_deref(), &to_json(&ReportFile::from(&report)))?;
            if !report.exhausted {
                return Err(Failure {
                    code: EXIT_BUDGET,
                    message: format!("budget of {} nodes per branch exhausted; optimum not certified", search.budget),
                });
            }
        }
    }
    Ok(EXIT_OK)
}

fn verify_system(
    doc: &Document,
    nu: Option<usize>,
    lambda: Option<usize>,
    s: Option<usize>,
    complete: bool,
) -> Result<SystemCertificate, Failure> {
    let (ts, pbd) = match doc {
        Document::System(ts) => (ts.clone(), None),
        Document::Pbd(p) => {
            let ts = tripack_core::TripleSystem::from_triples(p.nu, 1, p.triples.iter().copied())?;
            (ts, Some(p.verify().is_ok()))
        }
        Document::Hypergraph(_) => unreachable!("handled by the caller"),
    };
    let mut notes = Vec::new();
    if let Some(nu) = nu.filter(|v| *v != ts.nu()) {
        notes.push(format!("file has {} points, expected {nu}", ts.nu()));
    }
    if let Some(lambda) = lambda.filter(|l| *l != ts.lambda()) {
        notes.push(format!("file has lambda {}, expected {lambda}", ts.lambda()));
    }
    let lv = leave(&ts);
    let leave_matching = graph_matching_number(&lv);
    let g = match s {
        Some(s) => {
            let g = compute_g(ts.nu(), ts.lambda(), s)?;
            if ts.edge_count() != g {
                notes.push(format!("{} triples, g = {g}", ts.edge_count()));
            }
            if leave_matching < s {
                notes.push(format!("leave matching {leave_matching} is below s = {s}"));
            }
            Some(g)
        }
        None => None,
    };
    let complete = complete.then(|| ts.is_complete());
    if complete == Some(false) {
        notes.push("some pair is covered fewer than lambda times".into());
    }
    if pbd == Some(false) {
        notes.push("blocks do not cover every pair exactly once".into());
    }
    Ok(SystemCertificate {
        nu: ts.nu(),
        lambda: ts.lambda(),
        e: ts.edge_count(),
        leave_edges: lv.edge_count(),
        leave_matching,
        g,
        complete,
        pbd,
        passed: notes.is_empty(),
        notes: notes.join("; "),
    })
}
