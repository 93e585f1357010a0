//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

mod common;

use std::time::{Duration, Instant};

use common::suites::*;
use common::*;
use conorm_core::cli;
use conorm_core::spec::InstanceSpec;
use num_traits::One;
use serde_json::{json, Value};

fn run(args: &[&str]) -> (i32, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(std::iter::once("conorm").chain(args.iter().copied()), &mut out, &mut err);
    let mut text = String::from_utf8(out).unwrap();
    text.push_str(&String::from_utf8(err).unwrap());
    (code, text)
}

fn run_json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let (code, out) = run(&all);
    assert_eq!(code, 0, "{args:?}: {out}");
    serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}"))
}

fn path(name: &str) -> String {
    fixture_path(name).to_str().unwrap().to_string()
}

/// `T(x,y)` through `conorm eval`, parsed back to an exact rational.
fn eval(spec: &str, x: &R, y: &R) -> R {
    let v = run_json(&["eval", spec, &text(x), &text(y)]);
    parse(v["value"].as_str().unwrap())
}

fn condition<'a>(report: &'a Value, key: &str, id: &str) -> &'a Value {
    report[key].as_array().unwrap().iter().find(|c| c["condition"] == id).unwrap_or_else(|| panic!("{id} missing"))
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<String, String> {
    let t = start.elapsed();
    check(t < limit, format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(format!("{t:.2?}"))
}

/// Closed form of T for the two-summand `example_3_1` fixture.
fn closed_form_two_summands(x: &R, y: &R) -> R {
    let half = r(1, 2);
    if *x <= half && *y <= half {
        let s = x + y - r(8, 5) * x * y;
        if s <= half {
            s
        } else {
            half
        }
    } else if *x > half && *y > half {
        (r(4, 1) * x + r(4, 1) * y - r(4, 1) * x * y - R::one()) / r(3, 1)
    } else {
        x.clone().max(y.clone())
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let spec = path("example_3_1");
    let mut bad = Vec::new();
    for i in 0..=20 {
        for j in 0..=20 {
            let (x, y) = (r(i, 20), r(j, 20));
            if eval(&spec, &x, &y) != closed_form_two_summands(&x, &y) {
                bad.push(format!("({x},{y})"));
            }
        }
    }
    check(bad.is_empty(), format!("closed form mismatch at {}", bad.join(" ")))?;

    let report = run_json(&["check", &spec]);
    let gap = json!([{"lo": "2/3", "lo_kind": "open", "hi": "1", "hi_kind": "open"}]);
    for id in ["D1", "D2", "D5"] {
        let c = condition(&report, "conditions", id);
        check(c["holds"] == false && c["witness"] == gap, format!("{id}: {c}"))?;
    }
    check(condition(&report, "hypotheses", "HYP_SUMMAND")["holds"] == false, "HYP_SUMMAND holds")?;
    let t = within(start, Duration::from_secs(1))?;
    Ok(format!("441 grid points exact, D1/D2/D5 witness (2/3,1), HYP_SUMMAND failed, {t}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let spec = path("example_4_2_1");
    let report = run_json(&["check", &spec]);
    check(report["conclusion"] == "border_continuous_tconorm", format!("conclusion {}", report["conclusion"]))?;
    let d = run_json(&["decompose", &spec]);
    check(d["triples"] == json!([{"a": "1/2", "b": "2/3", "c": "1"}]), format!("triples {}", d["triples"]))?;
    check(eval(&spec, &r(1, 2), &r(1, 2)) == r(11, 12), "T(1/2,1/2) ≠ 11/12")?;
    let v = run_json(&["verify", &spec, "--denominator", "12"]);
    let oracle = &v["oracle"];
    for a in oracle["axioms"].as_array().unwrap() {
        check(a["status"] == "not_falsified", format!("axiom {a}"))?;
    }
    check(oracle["border_continuity"]["status"] == "not_falsified", "border continuity")?;
    let n = oracle["probes"]["size"].as_u64().unwrap();
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!("{{(1/2,2/3,1)}}, T(1/2,1/2)=11/12, {n} probes / {} T2 triples not falsified, {t}", n * n * n))
}

fn criterion_3() -> Outcome {
    let spec = path("example_4_2_2");
    check(eval(&spec, &r(3, 4), &r(1, 2)) == R::one(), "eval 3/4 1/2")?;
    for i in 0..=12 {
        for j in 0..=12 {
            let (x, y) = (r(i, 12), r(j, 12));
            let got = eval(&spec, &x, &y);
            check(got == (&x + &y).min(R::one()), format!("T({x},{y}) = {got}"))?;
        }
    }
    let report = run_json(&["check", &spec]);
    check(report["conclusion"] == "border_continuous_tconorm", format!("conclusion {}", report["conclusion"]))?;
    let d = run_json(&["decompose", &spec]);
    check(d["triples"] == json!([{"a": "0", "b": "1/2", "c": "1/2"}]), format!("triples {}", d["triples"]))?;
    Ok("min(x+y,1) on 169 points, {(0,1/2,1/2)}".into())
}

fn criterion_4() -> Outcome {
    let d = run_json(&["decompose", &path("def_4_1_ex1")]);
    let want = json!([
        {"a": "1/4", "b": "1/2", "c": "1/2"},
        {"a": "2/3", "b": "5/6", "c": "5/6"},
        {"a": "7/8", "b": "8/9", "c": "8/9"}
    ]);
    check(d["triples"] == want, format!("triples {}", d["triples"]))?;
    let d = run_json(&["decompose", &path("def_4_1_ex3")]);
    let msg = d["failure"]["message"].as_str().unwrap_or_default();
    check(msg.contains("b_n<1 violated at n=2"), format!("failure {}", d["failure"]))?;
    Ok(format!("three triples; second example rejected: {msg}"))
}

fn criterion_5() -> Outcome {
    let spec_path = path("derived_no_instance");
    let spec = InstanceSpec::parse(&std::fs::read_to_string(&spec_path).unwrap()).unwrap();

    // first the chain by the reference evaluator, then the tool
    let reference = Reference::new(&spec);
    let (x, y, z) = (r(1, 2), r(9, 20), r(1, 10));
    let ref_lhs = reference.t(&reference.t(&x, &y), &z);
    let ref_rhs = reference.t(&x, &reference.t(&y, &z));
    check(ref_lhs == r(1, 2) && ref_rhs == R::one(), format!("reference chain gives {ref_lhs} and {ref_rhs}"))?;
    let lhs = eval(&spec_path, &eval(&spec_path, &x, &y), &z);
    let rhs = eval(&spec_path, &x, &eval(&spec_path, &y, &z));
    check(lhs == ref_lhs && rhs == ref_rhs, format!("tool chain gives {lhs} and {rhs}"))?;

    let report = run_json(&["check", &spec_path]);
    check(report["conclusion"] == "not_tconorm", format!("conclusion {}", report["conclusion"]))?;
    let d7 = condition(&report, "conditions", "D7");
    check(d7["witness"] == json!({"i": 1, "j": 1, "k": 2}), format!("D7 {d7}"))?;

    let v = run_json(&["verify", &spec_path, "--denominator", "20"]);
    let o = &v["oracle"];
    let t2 = o["counterexample"].clone();
    let found = o["search"]["result"] == "found";
    check(!t2.is_null() || found, "no counterexample from the sweep or the search")?;
    let sweep = if t2.is_null() {
        "none".to_string()
    } else {
        check(t2["lhs"] != t2["rhs"], "sweep counterexample is not a violation")?;
        format!("T({},{},{}) grouped {} vs {}", t2["x"], t2["y"], t2["z"], t2["lhs"], t2["rhs"]).replace('"', "")
    };
    Ok(format!(
        "not_tconorm, D7 at (1,1,2), T(T(1/2,9/20),1/10)=1/2 vs T(1/2,T(9/20,1/10))=1; sweep: {sweep}; search found: {found}"
    ))
}

fn suite_line(name: &str, r: &SuiteResult) -> Result<String, String> {
    check(r.instances >= 100, format!("{name}: only {} instances", r.instances))?;
    check(r.ok(), format!("{name}: {}", r.violations.join("; ")))?;
    Ok(format!("{name} {}/{}", r.instances, r.checks))
}

fn criterion_6() -> Outcome {
    let mut parts = Vec::new();
    parts.push(suite_line("F_M", &collapse_suite(100))?);
    parts.push(suite_line("pseudo-inverse", &pseudo_inverse_suite(100))?);
    let (r, d1f, d2f) = d_implication_suite(100);
    parts.push(suite_line("D2⟺D5, D5⇒D2⇒D1", &r)? + &format!(" (D1 fails {d1f}, D2 fails {d2f})"));
    let (r, d7f) = d7_mode_suite(100);
    parts.push(suite_line("D7 modes", &r)? + &format!(" (D7 fails {d7f})"));
    parts.push(suite_line("corollary", &corollary_suite(100))?);
    Ok(format!("zero violations; instances/checks: {}", parts.join(", ")))
}

fn criterion_7() -> Outcome {
    let (r, non_idem) = equivalence_suite(60);
    check(r.instances >= 50, "fewer than 50 instances")?;
    check(r.ok(), r.violations.join("; "))?;
    Ok(format!("{} instances ({non_idem} with non-idempotent f(0+)), predicates agree pairwise", r.instances))
}

fn criterion_8() -> Outcome {
    let r = verify_exit_suite(50, 12);
    check(r.ok(), r.violations.join("; "))?;
    Ok(format!("{} verify runs (7 fixtures + 50 random), none exited 3", r.instances))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("two-summand generator reproduction", criterion_1),
        ("probabilistic-sum instance", criterion_2),
        ("Lukasiewicz instance", criterion_3),
        ("triple decomposition fixtures", criterion_4),
        ("derived NO-instance", criterion_5),
        ("property suites", criterion_6),
        ("origin / idempotency / border equivalence", criterion_7),
        ("theory/oracle consistency", criterion_8),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", n + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
