//! The `defkernel` command line.

use std::collections::BTreeSet;
use std::io::{BufRead, Write};
use std::path::PathBuf;

use anyhow::{anyhow, bail, ensure, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use defkernel_core::induction::{self, InductionTrace, Policy};
use defkernel_core::order::{check_order, classify, Classification, OrderReport};
use defkernel_core::safety::{self, Budget, SafetyReport};
use defkernel_core::{dnf, AtomSet, Problem};

use crate::{brute, corpus, json, parser};

/// Exit code for a definition that leaves atoms undecided, or an order that does not certify it.
pub const EXIT_UNDECIDED: i32 = 3;
pub const EXIT_ERROR: i32 = 1;

pub const BUDGET_ENV: &str = "DEFKERNEL_BUDGET_STATES";

#[derive(Debug, Parser)]
#[command(name = "defkernel", version, about = "Safe inductive definitions over finite structures")]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized strategies.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest support an exhaustive order check may enumerate.
    #[arg(long, global = true)]
    pub max_atoms: Option<usize>,
    /// Largest number of states one reachability search may visit.
    #[arg(long, global = true)]
    pub max_states: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    Eager,
    Safe,
    Random,
    RespectOrder,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify the definition and compute its safely defined structure.
    Analyze { file: PathBuf },
    /// Run a natural induction.
    Induce {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Strategy::Safe)]
        strategy: Strategy,
        /// Choose each step from standard input.
        #[arg(long)]
        interactive: bool,
        /// Read the interactive choices from a file.
        #[arg(long, conflicts_with = "interactive")]
        script: Option<PathBuf>,
    },
    /// Safety status of one atom, from the empty structure and from the safe limit.
    Safe { file: PathBuf, atom: String },
    /// Check the file's declared order.
    CheckOrder { file: PathBuf },
    /// Decide validity of a DNF formula through the safety reduction.
    Dnf {
        formula: String,
        /// Also print the generated problem file.
        #[arg(long)]
        show_problem: bool,
    },
    /// Exhaustive fixpoints of a file or corpus entry, checked against the engine.
    Oracle { target: String, params: Vec<String> },
    /// Built-in problems.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CorpusAction {
    List,
    /// Print an entry as a problem file.
    Export {
        name: String,
        params: Vec<String>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

/// Defaults, then the environment, then flags.
pub fn budget(cli: &Cli) -> Result<Budget> {
    let mut b = Budget::default();
    if let Ok(v) = std::env::var(BUDGET_ENV) {
        b.max_states = v.trim().parse().with_context(|| format!("{BUDGET_ENV}={v} is not a number"))?;
    }
    if let Some(s) = cli.max_states {
        b.max_states = s;
    }
    if let Some(a) = cli.max_atoms {
        b.max_support = a;
    }
    Ok(b)
}

/// Reads a definition file; `-` means standard input.
fn load(path: &PathBuf, input: &mut dyn BufRead) -> Result<Problem> {
    let text = if path.as_os_str() == "-" {
        let mut t = String::new();
        input.read_to_string(&mut t).context("cannot read standard input")?;
        t
    } else {
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?
    };
    parser::parse_problem(&text).map_err(|e| anyhow!("{}:{e}", path.display()))
}

fn set_text(problem: &Problem, set: &AtomSet) -> String {
    format!("{{{}}}", problem.names(set).join(", "))
}

/// Parses arguments and runs; returns the exit code. Errors go to `err`.
pub fn main_with<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match run(&cli, input, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            let _ = writeln!(err, "error: {e:#}");
            EXIT_ERROR
        }
    }
}

/// Runs a parsed command. Diagnostics go to `err` in JSON mode so `out` stays parseable.
pub fn run(cli: &Cli, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let b = budget(cli)?;
    match &cli.command {
        Command::Analyze { file } => analyze(cli, &load(file, input)?, &b, out),
        Command::Induce { file, strategy, interactive, script } => {
            ensure!(!(*interactive && file.as_os_str() == "-"), "--interactive reads choices from standard input, so the file cannot be `-`");
            let problem = load(file, input)?;
            if *interactive {
                return interactive_induction(cli, &problem, &b, input, out, err, true);
            }
            if let Some(path) = script {
                let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
                return interactive_induction(cli, &problem, &b, &mut text.as_bytes(), out, err, false);
            }
            induce(cli, &problem, *strategy, &b, out, err)
        }
        Command::Safe { file, atom } => safe_status(cli, &load(file, input)?, atom, &b, out),
        Command::CheckOrder { file } => {
            let problem = load(file, input)?;
            let rel = problem.declared_relation().ok_or_else(|| anyhow!("{} declares no order", file.display()))?;
            let r = check_order(&problem, rel, b.max_support)?;
            if cli.json {
                writeln!(out, "{}", json::order_report(&problem, &r))?;
            } else {
                write_order_report(&problem, &r, out)?;
            }
            Ok(if r.monotonically_orders { 0 } else { EXIT_UNDECIDED })
        }
        Command::Dnf { formula, show_problem } => {
            let d = parser::parse_dnf(formula).map_err(|e| anyhow!("{e}"))?;
            let valid = dnf::dnf_validity_via_safety(&d, &b)?;
            let oracle = dnf::dnf_validity_oracle(&d).ok();
            if cli.json {
                writeln!(out, "{}", serde_json::json!({ "formula": d.to_string(), "valid": valid, "oracle": oracle }))?;
            } else {
                writeln!(out, "{d}: {}", if valid { "valid" } else { "not valid" })?;
                match oracle {
                    Some(o) if o == valid => writeln!(out, "truth table agrees")?,
                    Some(_) => writeln!(out, "truth table DISAGREES")?,
                    None => writeln!(out, "truth table skipped: too many variables")?,
                }
                if *show_problem {
                    write!(out, "{}", parser::render_problem(&dnf::dnf_to_problem(&d)?))?;
                }
            }
            Ok(if oracle.is_some_and(|o| o != valid) { EXIT_ERROR } else { 0 })
        }
        Command::Oracle { target, params } => oracle(cli, target, params, &b, input, out),
        Command::Corpus { action: CorpusAction::List } => {
            for i in corpus::ENTRIES {
                writeln!(out, "{:<16} {:<26} {}", i.name, i.params, i.summary)?;
            }
            Ok(0)
        }
        Command::Corpus { action: CorpusAction::Export { name, params, output } } => {
            let e = corpus::generate(name, params)?;
            match output {
                Some(p) => std::fs::write(p, &e.source).with_context(|| format!("cannot write {}", p.display()))?,
                None => write!(out, "{}", e.source)?,
            }
            Ok(0)
        }
    }
}

/// Differences between the file's `expect` lines and a report.
pub fn expectation_mismatches(problem: &Problem, r: &SafetyReport) -> Vec<String> {
    let ex = problem.expectations();
    let mut out = Vec::new();
    let mut cmp = |what: &str, want: &Option<AtomSet>, got: &AtomSet| {
        if let Some(w) = want {
            if w != got {
                out.push(format!("{what}: expected {}, got {}", set_text(problem, w), set_text(problem, got)));
            }
        }
    };
    cmp("defined", &ex.defined, &r.defined_true);
    cmp("underivable", &ex.underivable, &r.defined_false);
    cmp("undecided", &ex.undecided, &r.undecided);
    for (k, &want) in &ex.flags {
        let got = match k.as_str() {
            "saturated" => r.saturated,
            "fixpoint" => r.is_fixpoint,
            "minimal" => r.minimal_fixpoint,
            _ => r.unique_fixpoint,
        };
        if got != want {
            out.push(format!("{k}: expected {want}, got {got}"));
        }
    }
    out
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn write_witness(problem: &Problem, label: &str, w: &Option<defkernel_core::order::Witness>, out: &mut dyn Write) -> Result<()> {
    if let Some(w) = w {
        writeln!(
            out,
            "  {label} witness at {}: {} vs {}",
            problem.name(w.atom),
            set_text(problem, &w.a),
            set_text(problem, &w.b)
        )?;
    }
    Ok(())
}

fn write_order_report(problem: &Problem, r: &OrderReport, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "transitive: {}", yes(r.transitive))?;
    writeln!(out, "irreflexive: {}", yes(r.irreflexive))?;
    writeln!(out, "asymmetric: {}", yes(r.asymmetric))?;
    writeln!(out, "strict part well-founded: {}", yes(r.strict_part_well_founded))?;
    if let Some(c) = &r.cycle {
        let names: Vec<String> = c.iter().map(|&a| problem.name(a)).collect();
        writeln!(out, "  cycle: {}", names.join(" < "))?;
    }
    writeln!(out, "dependency: {}", yes(r.is_dependency))?;
    write_witness(problem, "dependency", &r.dependency_witness, out)?;
    writeln!(out, "monotone dependency: {}", yes(r.is_monotone_dependency))?;
    write_witness(problem, "monotone", &r.monotone_witness, out)?;
    writeln!(out, "strictly orders: {}", yes(r.strictly_orders))?;
    writeln!(out, "monotonically orders: {}", yes(r.monotonically_orders))?;
    Ok(())
}

fn write_classification(problem: &Problem, c: &Classification, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "positive: {}", yes(c.positive))?;
    writeln!(out, "monotone: {}", yes(c.monotone))?;
    write_witness(problem, "monotonicity", &c.monotone_witness, out)?;
    match &c.declared {
        None => writeln!(out, "declared order: none")?,
        Some(r) => {
            writeln!(out, "declared order:")?;
            let mut buf = Vec::new();
            write_order_report(problem, r, &mut buf)?;
            for line in String::from_utf8_lossy(&buf).lines() {
                writeln!(out, "  {line}")?;
            }
        }
    }
    writeln!(out, "ordered: {}", yes(c.ordered))?;
    writeln!(out, "iterated: {}", yes(c.iterated))?;
    writeln!(out, "uncertified: {}", yes(c.uncertified))?;
    Ok(())
}

fn analyze(cli: &Cli, problem: &Problem, b: &Budget, out: &mut dyn Write) -> Result<i32> {
    // Order checks are exhaustive over supports; a cap overflow is reported, not fatal.
    let class = classify(problem, b.max_support);
    let r = safety::report(problem, b)?;
    let mismatches = expectation_mismatches(problem, &r);
    if cli.json {
        let c = match &class {
            Ok(c) => json::classification(problem, c),
            Err(e) => serde_json::json!({ "error": e.to_string() }),
        };
        let v = serde_json::json!({
            "classification": c,
            "borderline": !r.saturated,
            "report": json::report(problem, &r),
            "expectation_mismatches": mismatches,
        });
        writeln!(out, "{v}")?;
    } else {
        writeln!(out, "atoms: {}", problem.len())?;
        match &class {
            Ok(c) => write_classification(problem, c, out)?,
            Err(e) => writeln!(out, "classification skipped: {e}")?,
        }
        writeln!(out, "safely defined: {}", set_text(problem, &r.defined_true))?;
        writeln!(out, "strictly underivable: {}", set_text(problem, &r.defined_false))?;
        writeln!(out, "undecided: {}", set_text(problem, &r.undecided))?;
        writeln!(out, "stages: {}", r.trace.steps())?;
        writeln!(out, "saturated: {}", yes(r.saturated))?;
        writeln!(out, "fixpoint: {}", yes(r.is_fixpoint))?;
        writeln!(out, "minimal fixpoint: {}", yes(r.minimal_fixpoint))?;
        writeln!(out, "unique fixpoint: {}", yes(r.unique_fixpoint))?;
        // Borderline: the safe limit leaves atoms undecided.
        writeln!(out, "borderline: {}", yes(!r.saturated))?;
        if !r.dubious.is_empty() {
            let names: Vec<String> = r.dubious.iter().map(|&a| problem.name(a)).collect();
            writeln!(out, "note: derived by rules that fail at the limit: {}", names.join(", "))?;
        }
        for m in &mismatches {
            writeln!(out, "expectation mismatch: {m}")?;
        }
    }
    if !mismatches.is_empty() {
        bail!("{} expectation(s) not met", mismatches.len());
    }
    Ok(if r.well_defined() { 0 } else { EXIT_UNDECIDED })
}

/// `seed` is recorded for randomized runs so they can be replayed.
fn write_trace(cli: &Cli, problem: &Problem, t: &InductionTrace, seed: Option<u64>, out: &mut dyn Write) -> Result<()> {
    if cli.json {
        let mut v = json::trace(problem, t);
        if let Some(seed) = seed {
            v["seed"] = seed.into();
        }
        writeln!(out, "{v}")?;
        return Ok(());
    }
    if let Some(seed) = seed {
        writeln!(out, "seed: {seed}")?;
    }
    if !t.start().is_empty() {
        writeln!(out, "start: {}", set_text(problem, t.start()))?;
    }
    for i in 0..t.steps() {
        writeln!(out, "stage {}: + {}", i + 1, set_text(problem, &t.derived_at(i)))?;
    }
    writeln!(out, "limit: {}", set_text(problem, t.last()))?;
    writeln!(out, "terminal: {}", yes(t.is_terminal(problem)))?;
    Ok(())
}

fn induce(cli: &Cli, problem: &Problem, strategy: Strategy, b: &Budget, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let t = match strategy {
        Strategy::Eager => induction::eager_induction(problem, problem.len() + 1)?,
        Strategy::Safe => safety::safely_defined_structure(problem, b)?.1,
        Strategy::Random => induction::random_induction(problem, cli.seed, Policy::AnySubset)?,
        Strategy::RespectOrder => {
            let rel = problem.declared_relation().ok_or_else(|| anyhow!("respect-order needs a declared order"))?;
            induction::random_induction(problem, cli.seed, Policy::Respect(rel))?
        }
    };
    let seed = matches!(strategy, Strategy::Random | Strategy::RespectOrder).then_some(cli.seed);
    write_trace(cli, problem, &t, seed, out)?;
    if matches!(strategy, Strategy::Random | Strategy::Eager) {
        let (limit, _) = safety::safely_defined_structure(problem, b)?;
        if t.last() != &limit {
            let diag: &mut dyn Write = if cli.json { &mut *err } else { &mut *out };
            writeln!(diag, "warning: this limit differs from the safely defined structure; the definition is not confluent")?;
        }
    }
    Ok(0)
}

/// Safety annotation for the interactive listing; a small budget keeps it responsive.
fn annotate(problem: &Problem, set: &AtomSet, atom: usize, b: &Budget) -> &'static str {
    let quick = Budget { max_states: b.max_states.min(1 << 12), ..*b };
    match safety::safely_derivable(problem, set, atom, &quick) {
        Ok(true) => "safe",
        Ok(false) => "unsafe",
        Err(_) => "unknown",
    }
}

fn interactive_induction(
    cli: &Cli,
    problem: &Problem,
    b: &Budget,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
    prompt: bool,
) -> Result<i32> {
    let mut t = InductionTrace::empty(problem);
    let mut lines = input.lines();
    loop {
        let app = induction::applicable(problem, t.last()).to_vec();
        if app.is_empty() {
            break;
        }
        if prompt {
            writeln!(out, "stage {}: {}", t.steps(), set_text(problem, t.last()))?;
            for (i, &a) in app.iter().enumerate() {
                writeln!(out, "  [{}] {} ({})", i + 1, problem.name(a), annotate(problem, t.last(), a, b))?;
            }
            write!(out, "choose (numbers or atoms, `all`, `quit`): ")?;
            out.flush()?;
        }
        let Some(line) = lines.next() else { break };
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line == "quit" {
            break;
        }
        let mut chosen = problem.empty_set();
        if line == "all" {
            app.iter().for_each(|&a| {
                chosen.insert(a);
            });
        } else {
            for tok in line.split_whitespace() {
                let a = match tok.parse::<usize>() {
                    Ok(k) if (1..=app.len()).contains(&k) => app[k - 1],
                    Ok(k) => bail!("choice {k} is out of range 1..{}", app.len()),
                    Err(_) => parser::parse_atom(problem, tok).map_err(|e| anyhow!("{tok}: {e}"))?,
                };
                chosen.insert(a);
            }
        }
        if let Err(e) = t.push_step(problem, &chosen) {
            if prompt {
                writeln!(out, "rejected: {e}")?;
                continue;
            }
            bail!("{e}");
        }
    }
    write_trace(cli, problem, &t, None, out)?;
    if let Some((stage, atom)) = safety::first_unsafe_step(problem, &t, b)? {
        let diag: &mut dyn Write = if cli.json { &mut *err } else { &mut *out };
        writeln!(diag, "note: {} was not safe at stage {}", problem.name(atom), stage)?;
    }
    Ok(0)
}

fn status(problem: &Problem, set: &AtomSet, atom: usize, b: &Budget) -> Result<&'static str> {
    if set.contains(atom) {
        return Ok("present");
    }
    let derivable = induction::derives(problem, set, atom);
    Ok(if safety::safely_derivable(problem, set, atom, b)? {
        "safe"
    } else if safety::strictly_underivable(problem, set, atom, b)? {
        "strictly-underivable"
    } else if derivable {
        "derivable-unsafe"
    } else {
        "underivable-now"
    })
}

fn safe_status(cli: &Cli, problem: &Problem, text: &str, b: &Budget, out: &mut dyn Write) -> Result<i32> {
    let atom = parser::parse_atom(problem, text).map_err(|e| anyhow!("{e}"))?;
    let from_empty = status(problem, &problem.empty_set(), atom, b)?;
    let (limit, _) = safety::safely_defined_structure(problem, b)?;
    let from_limit = status(problem, &limit, atom, b)?;
    if cli.json {
        writeln!(out, "{}", serde_json::json!({ "atom": problem.name(atom), "from_empty": from_empty, "from_limit": from_limit }))?;
    } else {
        writeln!(out, "{} from {{}}: {from_empty}", problem.name(atom))?;
        writeln!(out, "{} from the safe limit: {from_limit}", problem.name(atom))?;
    }
    Ok(0)
}

/// Exhaustive fixpoints and saturated sets; these never look at the grounding.
struct Exhaustive {
    fixpoints: Vec<AtomSet>,
    saturated: Vec<AtomSet>,
}

fn exhaustive(p: &Problem) -> Result<Exhaustive> {
    let mut fixpoints = Vec::new();
    let mut saturated = Vec::new();
    for s in brute::all_structures(p)? {
        let g = brute::gamma(p, &s)?;
        if g.is_subset(&s) {
            if g == s {
                fixpoints.push(s.clone());
            }
            saturated.push(s);
        }
    }
    fixpoints.sort_by(|a, b| a.canonical_cmp(b));
    Ok(Exhaustive { fixpoints, saturated })
}

/// Engine flags that contradict the exhaustive search.
fn fixpoint_disagreements(r: &SafetyReport, x: &Exhaustive) -> Vec<String> {
    let limit = &r.safely_defined;
    let is_fix = x.fixpoints.contains(limit);
    let minimal = is_fix && brute::minimal(&x.fixpoints).contains(&limit);
    let unique = is_fix && x.fixpoints.len() == 1;
    let mut out = Vec::new();
    for (flag, engine, brute) in [("fixpoint", r.is_fixpoint, is_fix), ("minimal", r.minimal_fixpoint, minimal), ("unique", r.unique_fixpoint, unique)] {
        if engine != brute {
            out.push(format!("{flag}: engine {engine}, exhaustive {brute}"));
        }
    }
    out
}

/// `target` is a definition file or a corpus entry name.
fn oracle(cli: &Cli, target: &str, params: &[String], b: &Budget, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<i32> {
    let path = std::path::Path::new(target);
    let (p, expected) = if target == "-" || path.is_file() {
        ensure!(params.is_empty(), "parameters only apply to corpus entries");
        (load(&path.to_path_buf(), input)?, None)
    } else {
        let e = corpus::generate(target, params).with_context(|| format!("`{target}` is neither a file nor a corpus entry"))?;
        (e.problem, Some(e.expected))
    };
    let p = &p;
    let r = safety::report(p, b)?;
    let got: BTreeSet<String> = p.names(&r.defined_true).into_iter().collect();
    let undecided: BTreeSet<String> = p.names(&r.undecided).into_iter().collect();
    let mut disagreements = Vec::new();
    if let Some(e) = &expected {
        if got != e.defined || undecided != e.undecided || r.saturated != e.saturated {
            disagreements.push("corpus oracle and engine differ".to_string());
        }
    }
    // Exhaustive search only for small universes.
    let x = if p.len() <= brute::MAX_ATOMS { Some(exhaustive(p)?) } else { None };
    if let Some(x) = &x {
        disagreements.extend(fixpoint_disagreements(&r, x));
    }
    let names = |s: &AtomSet| p.names(s);
    if cli.json {
        let fx = x.as_ref().map(|x| {
            serde_json::json!({
                "all": x.fixpoints.iter().map(names).collect::<Vec<_>>(),
                "least": brute::least(&x.fixpoints).map(names),
                "minimal": brute::minimal(&x.fixpoints).into_iter().map(names).collect::<Vec<_>>(),
                "saturated_sets": x.saturated.len(),
                "least_saturated": brute::least(&x.saturated).map(names),
            })
        });
        let oracle = expected.as_ref().map(|e| serde_json::json!({ "true": e.defined, "undecided": e.undecided, "saturated": e.saturated }));
        let v = serde_json::json!({
            "target": target,
            "oracle": oracle,
            "engine": json::report(p, &r),
            "fixpoints": fx,
            "disagreements": disagreements,
            "agree": disagreements.is_empty(),
        });
        writeln!(out, "{v}")?;
    } else {
        let show = |s: &BTreeSet<String>| format!("{{{}}}", s.iter().cloned().collect::<Vec<_>>().join(", "));
        if let Some(e) = &expected {
            writeln!(out, "oracle true: {}", show(&e.defined))?;
        }
        writeln!(out, "engine true: {}", show(&got))?;
        if let Some(e) = &expected {
            writeln!(out, "oracle undecided: {}", show(&e.undecided))?;
        }
        writeln!(out, "engine undecided: {}", show(&undecided))?;
        match &x {
            None => writeln!(out, "fixpoints: not enumerated ({} atoms > {})", p.len(), brute::MAX_ATOMS)?,
            Some(x) => {
                writeln!(out, "fixpoints ({}):", x.fixpoints.len())?;
                for f in &x.fixpoints {
                    let tag = if brute::minimal(&x.fixpoints).contains(&f) { " (minimal)" } else { "" };
                    writeln!(out, "  {}{tag}", set_text(p, f))?;
                }
                match brute::least(&x.fixpoints) {
                    Some(l) => writeln!(out, "least fixpoint: {}", set_text(p, l))?,
                    None => writeln!(out, "least fixpoint: none")?,
                }
                writeln!(out, "saturated sets: {}", x.saturated.len())?;
                match brute::least(&x.saturated) {
                    Some(l) => writeln!(out, "least saturated set: {}", set_text(p, l))?,
                    None => writeln!(out, "least saturated set: none")?,
                }
            }
        }
        for d in &disagreements {
            writeln!(out, "DISAGREE {d}")?;
        }
        if disagreements.is_empty() {
            writeln!(out, "agree")?;
        }
    }
    Ok(if disagreements.is_empty() { 0 } else { EXIT_ERROR })
}
