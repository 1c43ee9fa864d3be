use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_defkernel"));
    c.env_remove("DEFKERNEL_BUDGET_STATES");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

struct TempDir(PathBuf);

impl TempDir {
    fn new(tag: &str) -> TempDir {
        let p = std::env::temp_dir().join(format!("defkernel-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&p).unwrap();
        TempDir(p)
    }

    fn write(&self, name: &str, text: &str) -> String {
        let p = self.0.join(name);
        std::fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    }

    fn export(&self, entry: &str, params: &[&str]) -> String {
        let e = defkernel::corpus::generate(entry, &params.iter().map(|s| s.to_string()).collect::<Vec<_>>()).unwrap();
        self.write(&format!("{entry}.def"), &e.source)
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn json(o: &Output) -> Value {
    serde_json::from_str(stdout(o).trim()).unwrap_or_else(|e| panic!("bad json ({e}): {}", stdout(o)))
}

fn keys(v: &Value) -> Vec<String> {
    v.as_object().unwrap().keys().cloned().collect()
}

#[test]
fn analyze_json_report_schema() {
    let d = TempDir::new("schema");
    let f = d.export("tc", &[]);
    let o = run(&["analyze", &f, "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    let r = &v["report"];
    let mut k = keys(r);
    k.sort();
    assert_eq!(k, ["false", "fixpoint", "minimal", "saturated", "true", "undecided", "unique"]);
    assert_eq!(r["true"], serde_json::json!(["R(a,a)", "R(b,b)", "R(b,c)", "R(c,b)", "R(c,c)"]));
    assert_eq!(r["undecided"], serde_json::json!([]));
    assert_eq!(v["classification"]["iterated"], Value::Bool(true));
    assert_eq!(v["borderline"], Value::Bool(false));
}

#[test]
fn undecided_definitions_exit_3() {
    let d = TempDir::new("undecided");
    for e in ["liar", "foo", "mutual"] {
        let o = run(&["analyze", &d.export(e, &[])]);
        assert_eq!(o.status.code(), Some(3), "{e}: {}", stdout(&o));
        assert!(stdout(&o).contains("undecided: {"), "{e}");
        assert!(stdout(&o).contains("borderline: yes"), "{e}");
    }
    let o = run(&["analyze", &d.export("teller", &[])]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("strictly underivable: {T}"));
}

#[test]
fn parse_errors_carry_locations() {
    let d = TempDir::new("parse");
    let f = d.write("bad.def", "domain a ;\npred G/2 = { (a,a) } ;\npred R/2 ;\ndefine {\n  R(x,y) <- G(x,y) &.\n}\n");
    let o = run(&["analyze", &f]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("bad.def:5:21: expected a formula"), "{}", stderr(&o));
    let f = d.write("unbound.def", "domain a ;\npred P/1 ;\ndefine { P(x) <- P(y). }\n");
    let o = run(&["analyze", &f]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("3:20: unbound variable or undeclared object `y`"), "{}", stderr(&o));
    let f = d.write("ext.def", "domain a ;\npred P/1 = { a } ;\ndefine { P(x) <- P(x). }\n");
    assert!(stderr(&run(&["analyze", &f])).contains("2:6: defined predicate `P` cannot have an extension"));
}

#[test]
fn check_order_reports_witnesses() {
    let d = TempDir::new("order");
    let o = run(&["check-order", &d.export("even", &[]), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["strictly_orders"], Value::Bool(true));
    let o = run(&["check-order", &d.export("even-swapped", &[]), "--json"]);
    assert_eq!(o.status.code(), Some(3));
    let v = json(&o);
    assert_eq!(v["dependency_witness"], serde_json::json!({ "atom": "Even(1)", "a": [], "b": ["Even(0)"] }));
    let o = run(&["check-order", &d.export("grue", &[])]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("dependency witness at Grue(0): {} vs {Grue(1)}"), "{}", stdout(&o));
    let o = run(&["check-order", &d.export("tc", &[])]);
    assert!(stderr(&o).is_empty());
    let o = run(&["check-order", &d.export("liar", &[])]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("declares no order"));
}

#[test]
fn random_inductions_replay_from_seed() {
    let d = TempDir::new("seed");
    let f = d.export("mutual", &[]);
    let a = run(&["induce", &f, "--strategy", "random", "--seed", "11", "--json"]);
    let b = run(&["induce", &f, "--strategy", "random", "--seed", "11", "--json"]);
    assert_eq!(stdout(&a), stdout(&b));
    let v = json(&a);
    let mut k = keys(&v);
    k.sort();
    assert_eq!(k, ["seed", "stages", "terminal"]);
    assert_eq!(v["seed"], 11);
    assert_eq!(v["terminal"], Value::Bool(true));
    // Mutual has no safe limit, so any terminal induction is flagged.
    assert!(stderr(&a).contains("warning"));
    let text = stdout(&run(&["induce", &f, "--strategy", "random", "--seed", "11"]));
    assert!(text.starts_with("seed: 11\n") && text.contains("warning: this limit differs"), "{text}");
}

#[test]
fn safe_strategy_trace() {
    let d = TempDir::new("safe");
    let o = run(&["induce", &d.export("even", &["4"])]);
    assert_eq!(
        stdout(&o),
        "stage 1: + {Even(0)}\nstage 2: + {Even(2)}\nstage 3: + {Even(4)}\nlimit: {Even(0), Even(2), Even(4)}\nterminal: yes\n"
    );
    let o = run(&["induce", &d.export("even", &["4"]), "--strategy", "respect-order", "--json"]);
    assert_eq!(json(&o)["stages"], serde_json::json!([[], ["Even(0)"], ["Even(2)"], ["Even(4)"]]));
}

#[test]
fn interactive_and_script_agree() {
    let d = TempDir::new("interactive");
    let f = d.export("mutual", &[]);
    let script = d.write("choices.txt", "# pick Q first\nQ\n");
    let from_script = run(&["induce", &f, "--script", &script, "--json"]);
    assert_eq!(from_script.status.code(), Some(0), "{}", stderr(&from_script));
    let mut child = bin()
        .args(["induce", &f, "--interactive"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"2\n").unwrap();
    let o = child.wait_with_output().unwrap();
    let text = stdout(&o);
    assert!(text.contains("[1] P (unsafe)") && text.contains("[2] Q (unsafe)"), "{text}");
    assert!(text.contains("stage 1: + {Q}"), "{text}");
    assert_eq!(json(&from_script)["stages"], serde_json::json!([[], ["Q"]]));
    assert!(stderr(&from_script).contains("note: Q was not safe at stage 0"));
    let bad = d.write("bad.txt", "Even(3)\n");
    let o = run(&["induce", &d.export("even-next", &[]), "--script", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not derivable"), "{}", stderr(&o));
}

#[test]
fn budget_from_environment_and_flag() {
    let d = TempDir::new("budget");
    let f = d.export("mutual", &[]);
    let o = bin().args(["analyze", &f]).env("DEFKERNEL_BUDGET_STATES", "1").output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("state budget"), "{}", stderr(&o));
    let o = bin().args(["analyze", &f, "--max-states", "1000"]).env("DEFKERNEL_BUDGET_STATES", "1").output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = bin().args(["analyze", &f]).env("DEFKERNEL_BUDGET_STATES", "lots").output().unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn dnf_command() {
    let o = run(&["dnf", "p | ~p"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "p | ~p: valid\ntruth table agrees\n");
    let o = run(&["dnf", "(p & q) | ~p", "--json"]);
    assert_eq!(json(&o), serde_json::json!({ "formula": "(p & q) | ~p", "valid": false, "oracle": false }));
    let o = run(&["dnf", "p", "--show-problem"]);
    let text = stdout(&o);
    let body = text.split_once("truth table agrees\n").unwrap().1;
    let p = defkernel::parse_problem(body).unwrap();
    assert_eq!(p.names(&p.empty_set().complement()), ["T(p)", "T(d1)", "Val"]);
    assert_eq!(run(&["dnf", "p |"]).status.code(), Some(1));
}

#[test]
fn safe_command_statuses() {
    let d = TempDir::new("status");
    let even = d.export("even", &[]);
    let o = run(&["safe", &even, "Even(2)"]);
    assert_eq!(stdout(&o), "Even(2) from {}: derivable-unsafe\nEven(2) from the safe limit: present\n");
    let o = run(&["safe", &d.export("even-next", &[]), "Even(3)"]);
    assert!(stdout(&o).contains("Even(3) from {}: underivable-now"), "{}", stdout(&o));
    let o = run(&["safe", &even, "Even(1)", "--json"]);
    assert_eq!(json(&o)["from_limit"], "strictly-underivable");
    let o = run(&["safe", &d.export("mutual", &[]), "P"]);
    assert!(stdout(&o).contains("P from {}: derivable-unsafe"));
    let o = run(&["safe", &d.export("teller", &[]), "T"]);
    assert!(stdout(&o).contains("T from {}: strictly-underivable"));
    assert_eq!(run(&["safe", &even, "Odd(1)"]).status.code(), Some(1));
}

#[test]
fn corpus_and_oracle_commands() {
    let list = stdout(&run(&["corpus", "list"]));
    for name in defkernel::corpus::names() {
        assert!(list.lines().any(|l| l.starts_with(name)), "{name}");
    }
    let o = run(&["oracle", "tc"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("fixpoints (4):"), "{text}");
    assert!(text.contains("{R(a,a), R(a,b), R(a,c), R(b,a), R(b,b), R(b,c), R(c,a), R(c,b), R(c,c)}"));
    let o = run(&["oracle", "nonminimal", "--json"]);
    assert_eq!(json(&o)["fixpoints"]["least"], serde_json::json!(["P"]));
    let o = run(&["oracle", "foo", "1"]);
    assert!(stdout(&o).contains("fixpoints (0):"));
    let d = TempDir::new("oracle");
    let o = run(&["oracle", &d.export("nonminimal", &[])]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("  {P} (minimal)\n  {P, Q}\nleast fixpoint: {P}"), "{}", stdout(&o));
    assert_eq!(run(&["oracle", "nosuch"]).status.code(), Some(1));
    let o = run(&["corpus", "export", "even", "3"]);
    let p = defkernel::parse_problem(&stdout(&o)).unwrap();
    assert_eq!(p.len(), 4);
    assert_eq!(run(&["corpus", "export", "nope"]).status.code(), Some(1));
    assert_eq!(run(&["corpus", "export", "sat", "PQ", "2"]).status.code(), Some(1));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "/nonexistent/file.def"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn eager_and_safe_examples() {
    let d = TempDir::new("examples");
    let o = run(&["induce", &d.export("tc", &[]), "--strategy", "eager"]);
    assert_eq!(
        stdout(&o),
        "stage 1: + {R(a,a), R(b,c), R(c,b)}\nstage 2: + {R(b,b), R(c,c)}\nlimit: {R(a,a), R(b,b), R(b,c), R(c,b), R(c,c)}\nterminal: yes\n"
    );
    let even = d.export("even", &["4"]);
    assert!(stdout(&run(&["safe", &even, "Even(0)"])).starts_with("Even(0) from {}: safe\n"));
    assert!(stdout(&run(&["safe", &even, "Even(1)"])).starts_with("Even(1) from {}: derivable-unsafe\n"));
}

#[test]
fn file_from_standard_input() {
    let source = defkernel::corpus::generate("liar", &[]).unwrap().source;
    let mut child = bin().args(["analyze", "-", "--json"]).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(source.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["report"]["undecided"], serde_json::json!(["T"]));
    assert_eq!(run(&["induce", "-", "--interactive"]).status.code(), Some(1));
}
