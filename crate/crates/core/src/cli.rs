//! Command-line front end. `run` is the whole program minus process exit, so
//! tests can drive it with in-memory output.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::conditions::{decompose_triples, theorem_verdict, ConditionReport, Verdict};
use crate::genop::GeneratedOp;
use crate::numeric::{parse_rational, Q01};
use crate::oracle::{self, Status, VerifyReport};
use crate::spec::InstanceSpec;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "conorm", version, about = "Decide and verify generated t-conorms T(x,y) = f⁽⁻¹⁾(T*(f(x), f(y)))")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Instance specification (JSON)
    pub spec: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hypotheses, conditions D0-D8 and the resulting verdict
    Check(Common),
    /// Evaluate T(x, y) exactly
    Eval {
        #[command(flatten)]
        common: Common,
        x: String,
        y: String,
    },
    /// Write T on a grid as CSV
    Table {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        step: String,
    },
    /// Brute-force axiom checks cross-checked against the verdict
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 12)]
        denominator: u64,
        #[arg(long, default_value_t = 50_000)]
        witness_budget: usize,
    },
    /// Split the range of f into triples (a_i, b_i, c_i)
    Decompose(Common),
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Check(c) | Command::Decompose(c) => c,
            Command::Eval { common, .. } | Command::Table { common, .. } | Command::Verify { common, .. } => common,
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure { code: EXIT_INPUT, message: message.to_string() }
    }
}

/// Output of one command before it is written.
struct Outcome {
    body: String,
    code: i32,
}

pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let result = catch_unwind(AssertUnwindSafe(|| execute(&cli.command)));
    let outcome = match result {
        Ok(Ok(outcome)) => outcome,
        Ok(Err(f)) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            return f.code;
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            let _ = writeln!(stderr, "internal error: {msg}");
            return EXIT_INTERNAL;
        }
    };
    let written = match &cli.command.common().out {
        Some(path) => std::fs::write(path, &outcome.body).map_err(|e| format!("{}: {e}", path.display())),
        None => stdout.write_all(outcome.body.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_INPUT;
    }
    outcome.code
}

fn load(common: &Common) -> Result<(InstanceSpec, GeneratedOp), Failure> {
    let spec = InstanceSpec::from_path(&common.spec).map_err(Failure::input)?;
    let op = spec.build().map_err(Failure::input)?;
    Ok((spec, op))
}

fn q01_arg(name: &str, text: &str) -> Result<Q01, Failure> {
    parse_rational(text).map_err(|e| Failure::input(format!("{name}: {e}")))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn execute(cmd: &Command) -> Result<Outcome, Failure> {
    let common = cmd.common();
    let (spec, op) = load(common)?;
    let name = spec.name().unwrap_or("unnamed").to_string();
    let ok = |body| Ok(Outcome { body, code: EXIT_OK });
    match cmd {
        Command::Check(_) => {
            let verdict = theorem_verdict(&op);
            let issues = verdict.consistency_issues();
            let body = match common.format {
                Format::Json => to_json(&check_json(&name, &verdict, &issues)),
                Format::Text => check_text(&name, &verdict, &issues),
            };
            let code = if issues.is_empty() { EXIT_OK } else { EXIT_INCONSISTENT };
            Ok(Outcome { body, code })
        }
        Command::Eval { x, y, .. } => {
            let (x, y) = (q01_arg("x", x)?, q01_arg("y", y)?);
            let v = op.eval(&x, &y);
            ok(match common.format {
                Format::Json => to_json(&json!({"x": x, "y": y, "value": v, "decimal": v.to_f64()})),
                Format::Text => format!("{v} ({:.6})\n", v.to_f64()),
            })
        }
        Command::Table { step, .. } => {
            let step = q01_arg("step", step)?;
            if step.is_zero() {
                return Err(Failure::input("step must be positive"));
            }
            ok(table_csv(&op, &step))
        }
        Command::Verify { denominator, witness_budget, .. } => {
            if *denominator < 2 {
                return Err(Failure::input("denominator must be at least 2"));
            }
            let (verdict, report) = oracle::verify(&op, *denominator, *witness_budget);
            let body = match common.format {
                Format::Json => to_json(&verify_json(&name, &verdict, &report)),
                Format::Text => verify_text(&name, &verdict, &report),
            };
            let code = if report.issues.is_empty() { EXIT_OK } else { EXIT_INCONSISTENT };
            Ok(Outcome { body, code })
        }
        Command::Decompose(_) => {
            let result = decompose_triples(&op);
            ok(match (common.format, result) {
                (Format::Json, Ok(t)) => to_json(&json!({"instance": name, "triples": t.triples})),
                (Format::Json, Err(e)) => to_json(&json!({"instance": name, "failure": e})),
                (Format::Text, Ok(t)) => format!("{t}\n"),
                (Format::Text, Err(e)) => format!("not of triple form: {}\n", e.message),
            })
        }
    }
}

/// Grid points `0, step, 2·step, …`, closed off with `1`.
pub fn grid(step: &Q01) -> Vec<Q01> {
    let mut out = vec![Q01::zero()];
    loop {
        let next = out.last().expect("nonempty").add_clamped(step);
        if next == *out.last().expect("nonempty") {
            break;
        }
        out.push(next.clone());
        if next.is_one() {
            break;
        }
    }
    out
}

pub fn table_csv(op: &GeneratedOp, step: &Q01) -> String {
    let pts = grid(step);
    let mut w = csv::Writer::from_writer(Vec::new());
    let header: Vec<String> = std::iter::once("x\\y".to_string()).chain(pts.iter().map(|p| p.to_string())).collect();
    w.write_record(&header).expect("in-memory write");
    for x in &pts {
        let row: Vec<String> = std::iter::once(x.to_string())
            .chain(pts.iter().map(|y| op.eval(x, y).to_string()))
            .collect();
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

pub fn check_json(name: &str, v: &Verdict, issues: &[String]) -> serde_json::Value {
    json!({
        "instance": name,
        "hypotheses": v.hypotheses,
        "conditions": v.conditions,
        "corollary": v.corollary,
        "branch": v.branch,
        "triples": v.triples.as_ref().map(|t| &t.triples),
        "conclusion": v.conclusion,
        "issues": issues,
    })
}

pub fn verify_json(name: &str, v: &Verdict, r: &VerifyReport) -> serde_json::Value {
    let mut out = check_json(name, v, &r.issues);
    out["oracle"] = json!({
        "probes": r.oracle.probes,
        "axioms": r.oracle.axioms,
        "border_continuity": r.oracle.border_continuity,
        "counterexample": r.oracle.counterexample,
        "search": r.search,
        "needs_review": r.needs_review,
    });
    out
}

fn report_lines(out: &mut String, title: &str, reports: &[ConditionReport]) {
    if reports.is_empty() {
        return;
    }
    let _ = writeln!(out, "{title}:");
    for r in reports {
        let mark = if r.holds { "holds" } else { "FAILS" };
        let _ = writeln!(out, "  {:<15} {mark:<6} {}", r.condition.as_str(), r.notes);
        if !r.holds {
            let _ = writeln!(out, "  {:<15} witness: {}", "", r.witness);
        }
    }
}

pub fn check_text(name: &str, v: &Verdict, issues: &[String]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "instance: {name}");
    let _ = writeln!(out, "branch: {}", v.branch);
    report_lines(&mut out, "hypotheses", &v.hypotheses);
    report_lines(&mut out, "conditions", &v.conditions);
    report_lines(&mut out, "corollary", &v.corollary);
    if let Some(t) = &v.triples {
        let _ = writeln!(out, "triples: {t}");
    }
    let _ = writeln!(out, "conclusion: {}", v.conclusion);
    for i in issues {
        let _ = writeln!(out, "INCONSISTENT: {i}");
    }
    out
}

pub fn verify_text(name: &str, v: &Verdict, r: &VerifyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "instance: {name}");
    let _ = writeln!(out, "conclusion: {}", v.conclusion);
    let p = &r.oracle.probes;
    let _ = writeln!(out, "probes: {} points (grid 1/{}, {} critical)", p.size, p.denominator, p.critical.len());
    for a in &r.oracle.axioms {
        let status = match a.status {
            Status::NotFalsified => "not falsified".to_string(),
            Status::Failed => {
                let w = a.witness.as_ref().expect("failed axioms carry a witness");
                let z = w.z.as_ref().map(|z| format!(", z={z}")).unwrap_or_default();
                format!("FAILED at x={}, y={}{z}: {} vs {}", w.x, w.y, w.lhs, w.rhs)
            }
        };
        let _ = writeln!(out, "  {:?}: {status}", a.axiom);
    }
    let b = &r.oracle.border_continuity;
    match &b.witness {
        None => {
            let _ = writeln!(out, "  border continuity: not falsified");
        }
        Some(d) => {
            let _ = writeln!(
                out,
                "  border continuity: FAILED at ({}, {}): limits {} and {}, value {}",
                d.x, d.y, d.lower, d.upper, d.value
            );
        }
    }
    let _ = writeln!(
        out,
        "  origin limit {} (T(0,0)=0 and continuous: {}), f(0+) idempotent: {}, S4: {}",
        b.origin_limit, b.origin_ok, b.f0plus_idempotent, b.s4_ok
    );
    if let Some(s) = &r.search {
        match s {
            oracle::SearchOutcome::Found { evaluated, hit } => {
                let (c, d) = (&hit.range, &hit.domain);
                let z = |c: &oracle::Counterexample| c.z.clone().expect("triple");
                let _ = writeln!(
                    out,
                    "  witness search: (x⊗y)⊗z = {} ≠ {} = x⊗(y⊗z) at ({}, {}, {}) after {evaluated} triples",
                    c.lhs, c.rhs, c.x, c.y, z(c)
                );
                let _ = writeln!(
                    out,
                    "  in [0,1]: T(T(x,y),z) = {} ≠ {} = T(x,T(y,z)) at ({}, {}, {})",
                    d.lhs, d.rhs, d.x, d.y, z(d)
                );
            }
            oracle::SearchOutcome::NotFound { evaluated } => {
                let _ = writeln!(out, "  witness search: nothing found in {evaluated} triples");
            }
        }
    }
    if r.needs_review {
        let _ = writeln!(out, "REVIEW: negative verdict without a concrete violation");
    }
    for i in &r.issues {
        let _ = writeln!(out, "INCONSISTENT: {i}");
    }
    out
}
