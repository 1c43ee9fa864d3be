//! Terms, formulas, rules and definitions.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::model::{Symbol, SymbolKind};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    /// Function application; object symbols are zero-ary applications.
    Apply(String, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.into())
    }

    pub fn obj(name: &str) -> Term {
        Term::Apply(name.into(), Vec::new())
    }

    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::Apply(name.into(), args)
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Apply(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    True,
    False,
    Atom(String, Vec<Term>),
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Formula {
    pub fn atom(pred: &str, args: Vec<Term>) -> Formula {
        Formula::Atom(pred.into(), args)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn exists(v: &str, f: Formula) -> Formula {
        Formula::Exists(v.into(), Box::new(f))
    }

    pub fn forall(v: &str, f: Formula) -> Formula {
        Formula::Forall(v.into(), Box::new(f))
    }

    /// Left-nested conjunction; `True` when empty.
    pub fn conj(items: impl IntoIterator<Item = Formula>) -> Formula {
        items.into_iter().reduce(Formula::and).unwrap_or(Formula::True)
    }

    /// Left-nested disjunction; `False` when empty.
    pub fn disj(items: impl IntoIterator<Item = Formula>) -> Formula {
        items.into_iter().reduce(Formula::or).unwrap_or(Formula::False)
    }

    /// Rewrites every `φ => ψ` as `~φ | ψ`.
    pub fn desugar(&self) -> Formula {
        match self {
            Formula::Implies(a, b) => Formula::or(Formula::not(a.desugar()), b.desugar()),
            Formula::Not(a) => Formula::not(a.desugar()),
            Formula::And(a, b) => Formula::and(a.desugar(), b.desugar()),
            Formula::Or(a, b) => Formula::or(a.desugar(), b.desugar()),
            Formula::Exists(v, a) => Formula::exists(v, a.desugar()),
            Formula::Forall(v, a) => Formula::forall(v, a.desugar()),
            other => other.clone(),
        }
    }

    fn collect_var_names(&self, out: &mut BTreeSet<String>) {
        let mut tv = Vec::new();
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(_, args) => args.iter().for_each(|t| t.collect_vars(&mut tv)),
            Formula::Eq(a, b) => {
                a.collect_vars(&mut tv);
                b.collect_vars(&mut tv);
            }
            Formula::Not(a) => a.collect_var_names(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_var_names(out);
                b.collect_var_names(out);
            }
            Formula::Exists(v, a) | Formula::Forall(v, a) => {
                out.insert(v.clone());
                a.collect_var_names(out);
            }
        }
        out.extend(tv);
    }
}

fn term_symbols(t: &Term, bound: &[String], out: &mut BTreeSet<Symbol>) {
    match t {
        Term::Var(v) => {
            if !bound.contains(v) {
                out.insert(Symbol::object(v));
            }
        }
        Term::Apply(f, args) => {
            if args.is_empty() {
                out.insert(Symbol::object(f));
            } else {
                out.insert(Symbol::function(f, args.len()));
            }
            args.iter().for_each(|a| term_symbols(a, bound, out));
        }
    }
}

fn formula_symbols(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<Symbol>) {
    match f {
        Formula::True | Formula::False => {}
        Formula::Atom(p, args) => {
            out.insert(Symbol::predicate(p, args.len()));
            args.iter().for_each(|a| term_symbols(a, bound, out));
        }
        Formula::Eq(a, b) => {
            term_symbols(a, bound, out);
            term_symbols(b, bound, out);
        }
        Formula::Not(a) => formula_symbols(a, bound, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            formula_symbols(a, bound, out);
            formula_symbols(b, bound, out);
        }
        Formula::Exists(v, a) | Formula::Forall(v, a) => {
            bound.push(v.clone());
            formula_symbols(a, bound, out);
            bound.pop();
        }
    }
}

/// Symbols with at least one free occurrence. Free variables count as object symbols.
pub fn free_symbols(f: &Formula) -> BTreeSet<Symbol> {
    let mut out = BTreeSet::new();
    formula_symbols(f, &mut Vec::new(), &mut out);
    out
}

pub fn free_symbols_of_term(t: &Term) -> BTreeSet<Symbol> {
    let mut out = BTreeSet::new();
    term_symbols(t, &[], &mut out);
    out
}

/// A rule as written, with arbitrary head terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralRule {
    pub head: String,
    pub args: Vec<Term>,
    pub body: Formula,
}

/// A rule in normal form: `∀x̄ (P(x̄) ← φ)` with distinct head variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub head: String,
    pub head_vars: Vec<String>,
    pub body: Formula,
}

impl Rule {
    pub fn new(head: &str, head_vars: &[&str], body: Formula) -> Rule {
        Rule { head: head.into(), head_vars: head_vars.iter().map(|v| v.to_string()).collect(), body }
    }

    /// Free symbols of the body other than the head variables.
    pub fn free_symbols(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        formula_symbols(&self.body, &mut self.head_vars.clone(), &mut out);
        out
    }
}

/// Brings `P(t̄) ← φ` to the form `P(ȳ) ← ∃x̄ (ȳ = t̄ ∧ φ)`.
///
/// Heads whose arguments are already distinct variables are kept as they are.
pub fn normalize_rule(rule: &GeneralRule) -> Result<Rule> {
    if rule.head == "=" {
        return Err(Error::EqualityHead);
    }
    let mut head_vars = Vec::new();
    let simple = rule.args.iter().all(|t| match t {
        Term::Var(v) if !head_vars.contains(v) => {
            head_vars.push(v.clone());
            true
        }
        _ => false,
    });
    if simple {
        return Ok(Rule { head: rule.head.clone(), head_vars, body: rule.body.clone() });
    }
    let mut used = BTreeSet::new();
    rule.body.collect_var_names(&mut used);
    let mut xs = Vec::new();
    for t in &rule.args {
        t.collect_vars(&mut xs);
    }
    used.extend(xs.iter().cloned());
    let mut fresh = Vec::with_capacity(rule.args.len());
    let mut k = 0usize;
    while fresh.len() < rule.args.len() {
        let candidate = format!("$v{k}");
        k += 1;
        if !used.contains(&candidate) {
            fresh.push(candidate);
        }
    }
    let eqs = fresh.iter().zip(&rule.args).map(|(y, t)| Formula::Eq(Term::Var(y.clone()), t.clone()));
    let mut body = eqs.rev().fold(rule.body.clone(), |acc, eq| Formula::and(eq, acc));
    for x in xs.iter().rev() {
        body = Formula::exists(x, body);
    }
    Ok(Rule { head: rule.head.clone(), head_vars: fresh, body })
}

/// A finite set of rules.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Definition {
    pub rules: Vec<Rule>,
}

impl Definition {
    pub fn new(rules: Vec<Rule>) -> Definition {
        Definition { rules }
    }

    /// defp(Δ): head predicates.
    pub fn defined(&self) -> BTreeSet<Symbol> {
        self.rules.iter().map(|r| Symbol::predicate(&r.head, r.head_vars.len())).collect()
    }

    pub fn defined_names(&self) -> BTreeSet<String> {
        self.rules.iter().map(|r| r.head.clone()).collect()
    }

    /// pars(Δ): every other free non-logical symbol.
    pub fn parameters(&self) -> BTreeSet<Symbol> {
        let defined = self.defined_names();
        self.rules
            .iter()
            .flat_map(|r| r.free_symbols())
            .filter(|s| !(s.kind == SymbolKind::Predicate && defined.contains(&s.name)))
            .collect()
    }

    /// Variables that occur free in a body without being head variables.
    pub fn unbound_variables(&self) -> Vec<(usize, String)> {
        let mut out = Vec::new();
        for (i, r) in self.rules.iter().enumerate() {
            let mut found = BTreeSet::new();
            unbound_vars(&r.body, &mut r.head_vars.clone(), &mut found);
            out.extend(found.into_iter().map(|v| (i, v)));
        }
        out
    }
}

fn unbound_vars_term(t: &Term, bound: &[String], out: &mut BTreeSet<String>) {
    match t {
        Term::Var(v) if !bound.contains(v) => {
            out.insert(v.clone());
        }
        Term::Var(_) => {}
        Term::Apply(_, args) => args.iter().for_each(|a| unbound_vars_term(a, bound, out)),
    }
}

fn unbound_vars(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    match f {
        Formula::True | Formula::False => {}
        Formula::Atom(_, args) => args.iter().for_each(|a| unbound_vars_term(a, bound, out)),
        Formula::Eq(a, b) => {
            unbound_vars_term(a, bound, out);
            unbound_vars_term(b, bound, out);
        }
        Formula::Not(a) => unbound_vars(a, bound, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            unbound_vars(a, bound, out);
            unbound_vars(b, bound, out);
        }
        Formula::Exists(v, a) | Formula::Forall(v, a) => {
            bound.push(v.clone());
            unbound_vars(a, bound, out);
            bound.pop();
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    EmptyDefinition,
    EqualityHead { rule: usize },
    DuplicateHeadVariable { rule: usize, var: String },
    /// One name used with several kinds or arities.
    ArityMismatch { symbol: String, uses: Vec<Symbol> },
    /// A free variable that is neither a head variable nor quantified; treated as a parameter object symbol.
    UnboundVariable { rule: usize, name: String },
}

impl Diagnostic {
    pub fn is_error(&self) -> bool {
        !matches!(self, Diagnostic::UnboundVariable { .. })
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::EmptyDefinition => write!(f, "definition has no rules"),
            Diagnostic::EqualityHead { rule } => write!(f, "rule {rule}: equality head"),
            Diagnostic::DuplicateHeadVariable { rule, var } => {
                write!(f, "rule {rule}: head variable `{var}` repeated")
            }
            Diagnostic::ArityMismatch { symbol, uses } => {
                write!(f, "`{symbol}` used inconsistently:")?;
                for u in uses {
                    write!(f, " {:?}/{}", u.kind, u.arity)?;
                }
                Ok(())
            }
            Diagnostic::UnboundVariable { rule, name } => {
                write!(f, "rule {rule}: `{name}` is unbound and read as a parameter object symbol")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WellFormedness {
    pub diagnostics: Vec<Diagnostic>,
    pub defined: BTreeSet<Symbol>,
    pub parameters: BTreeSet<Symbol>,
}

impl WellFormedness {
    pub fn ok(&self) -> bool {
        !self.diagnostics.iter().any(Diagnostic::is_error)
    }

    pub fn errors(&self) -> impl Iterator<Item = &Diagnostic> {
        self.diagnostics.iter().filter(|d| d.is_error())
    }
}

/// Structural checks on a definition, returned as diagnostics.
pub fn well_formed(def: &Definition) -> WellFormedness {
    let mut diagnostics = Vec::new();
    if def.rules.is_empty() {
        diagnostics.push(Diagnostic::EmptyDefinition);
    }
    let mut uses: BTreeMap<String, BTreeSet<Symbol>> = BTreeMap::new();
    for (i, r) in def.rules.iter().enumerate() {
        if r.head == "=" {
            diagnostics.push(Diagnostic::EqualityHead { rule: i });
        }
        let mut seen = BTreeSet::new();
        for v in &r.head_vars {
            if !seen.insert(v) {
                diagnostics.push(Diagnostic::DuplicateHeadVariable { rule: i, var: v.clone() });
            }
        }
        uses.entry(r.head.clone()).or_default().insert(Symbol::predicate(&r.head, r.head_vars.len()));
        let mut all = BTreeSet::new();
        formula_symbols(&r.body, &mut Vec::new(), &mut all);
        for s in all {
            // Bound variables are not symbols; only free ones reach here, plus names bound elsewhere.
            uses.entry(s.name.clone()).or_default().insert(s);
        }
    }
    for (name, set) in &uses {
        if set.len() > 1 {
            diagnostics.push(Diagnostic::ArityMismatch { symbol: name.clone(), uses: set.iter().cloned().collect() });
        }
    }
    for (rule, name) in def.unbound_variables() {
        diagnostics.push(Diagnostic::UnboundVariable { rule, name });
    }
    WellFormedness { diagnostics, defined: def.defined(), parameters: def.parameters() }
}

/// Replaces rule `index` with body `φ ∨ ψ` by two rules with bodies `φ` and `ψ`.
pub fn split_disjunctive_rule(def: &Definition, index: usize) -> Result<Definition> {
    let rule = def.rules.get(index).ok_or(Error::RuleIndex(index))?;
    let (a, b) = match &rule.body {
        Formula::Or(a, b) => ((**a).clone(), (**b).clone()),
        Formula::Implies(a, b) => (Formula::not((**a).clone()), (**b).clone()),
        _ => return Err(Error::NotDisjunction(index)),
    };
    let mut rules = def.rules.clone();
    rules[index].body = a;
    rules.insert(index + 1, Rule { head: rule.head.clone(), head_vars: rule.head_vars.clone(), body: b });
    Ok(Definition { rules })
}

/// Syntactic body replacement. Equivalence is the caller's business.
pub fn replace_body(def: &Definition, index: usize, body: Formula) -> Result<Definition> {
    if index >= def.rules.len() {
        return Err(Error::RuleIndex(index));
    }
    let mut rules = def.rules.clone();
    rules[index].body = body;
    let out = Definition { rules };
    let wf = well_formed(&out);
    if let Some(d) = wf.errors().next() {
        return Err(Error::IllFormed(d.to_string()));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Occurrence {
    pub predicate: String,
    pub positive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polarity {
    pub positive: bool,
    pub occurrences: Vec<Occurrence>,
}

fn polarity_walk(f: &Formula, preds: &BTreeSet<String>, positive: bool, out: &mut Vec<Occurrence>) {
    match f {
        Formula::True | Formula::False | Formula::Eq(..) => {}
        Formula::Atom(p, _) => {
            if preds.contains(p) {
                out.push(Occurrence { predicate: p.clone(), positive });
            }
        }
        Formula::Not(a) => polarity_walk(a, preds, !positive, out),
        Formula::And(a, b) | Formula::Or(a, b) => {
            polarity_walk(a, preds, positive, out);
            polarity_walk(b, preds, positive, out);
        }
        Formula::Implies(a, b) => {
            polarity_walk(a, preds, !positive, out);
            polarity_walk(b, preds, positive, out);
        }
        Formula::Exists(_, a) | Formula::Forall(_, a) => polarity_walk(a, preds, positive, out),
    }
}

/// Whether every occurrence of `preds` in `f` sits under an even number of negations.
pub fn polarity(f: &Formula, preds: &BTreeSet<String>) -> Polarity {
    let mut occurrences = Vec::new();
    polarity_walk(f, preds, true, &mut occurrences);
    Polarity { positive: occurrences.iter().all(|o| o.positive), occurrences }
}

/// True when every rule body is positive in defp(Δ).
pub fn is_positive(def: &Definition) -> bool {
    let defined = def.defined_names();
    def.rules.iter().all(|r| polarity(&r.body, &defined).positive)
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Apply(name, args) => {
                f.write_str(name)?;
                if !args.is_empty() {
                    write_args(f, args)?;
                }
                Ok(())
            }
        }
    }
}

fn write_args(f: &mut fmt::Formatter<'_>, args: &[Term]) -> fmt::Result {
    f.write_str("(")?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

// Binding strength used when printing: larger binds tighter.
fn level(f: &Formula) -> u8 {
    match f {
        Formula::Implies(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        Formula::Not(..) => 4,
        _ => 5,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, g: &Formula, min: u8) -> fmt::Result {
    if level(g) < min {
        write!(f, "({g})")
    } else {
        write!(f, "{g}")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Atom(p, args) => {
                f.write_str(p)?;
                if !args.is_empty() {
                    write_args(f, args)?;
                }
                Ok(())
            }
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::Not(a) => {
                f.write_str("~")?;
                write_at(f, a, 4)
            }
            Formula::And(a, b) => {
                write_at(f, a, 3)?;
                f.write_str(" & ")?;
                write_at(f, b, 4)
            }
            Formula::Or(a, b) => {
                write_at(f, a, 2)?;
                f.write_str(" | ")?;
                write_at(f, b, 3)
            }
            Formula::Implies(a, b) => {
                write_at(f, a, 2)?;
                f.write_str(" => ")?;
                write_at(f, b, 1)
            }
            Formula::Exists(v, a) => write!(f, "exists {v}: ({a})"),
            Formula::Forall(v, a) => write!(f, "forall {v}: ({a})"),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.head)?;
        if !self.head_vars.is_empty() {
            write!(f, "({})", self.head_vars.join(","))?;
        }
        write!(f, " <- {}.", self.body)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn tc() -> Definition {
        Definition::new(vec![
            Rule::new("R", &["x", "y"], Formula::atom("G", vec![Term::var("x"), Term::var("y")])),
            Rule::new(
                "R",
                &["x", "y"],
                Formula::exists(
                    "z",
                    Formula::and(
                        Formula::atom("R", vec![Term::var("x"), Term::var("z")]),
                        Formula::atom("R", vec![Term::var("z"), Term::var("y")]),
                    ),
                ),
            ),
        ])
    }

    #[test]
    fn tc_partition() {
        let wf = well_formed(&tc());
        assert!(wf.ok());
        assert_eq!(wf.defined.into_iter().collect::<Vec<_>>(), vec![Symbol::predicate("R", 2)]);
        assert_eq!(wf.parameters.into_iter().collect::<Vec<_>>(), vec![Symbol::predicate("G", 2)]);
        assert!(is_positive(&tc()));
    }

    #[test]
    fn equality_head_and_unbound() {
        let d = Definition::new(vec![Rule::new("=", &["x", "y"], Formula::True)]);
        assert!(well_formed(&d).diagnostics.contains(&Diagnostic::EqualityHead { rule: 0 }));
        let d = Definition::new(vec![Rule::new("P", &["x"], Formula::atom("Q", vec![Term::var("z")]))]);
        let wf = well_formed(&d);
        assert!(wf.ok());
        assert!(wf.diagnostics.contains(&Diagnostic::UnboundVariable { rule: 0, name: "z".into() }));
        assert!(wf.parameters.contains(&Symbol::object("z")));
        assert!(!well_formed(&Definition::default()).ok());
        let bad = Definition::new(vec![
            Rule::new("P", &["x"], Formula::atom("Q", vec![Term::var("x")])),
            Rule::new("P", &["x"], Formula::atom("Q", vec![Term::var("x"), Term::var("x")])),
        ]);
        assert!(!well_formed(&bad).ok());
    }

    #[test]
    fn normalization() {
        let r = GeneralRule {
            head: "Even".into(),
            args: vec![Term::app("s", vec![Term::var("x")])],
            body: Formula::not(Formula::atom("Even", vec![Term::var("x")])),
        };
        let n = normalize_rule(&r).unwrap();
        assert_eq!(n.head_vars, vec!["$v0"]);
        assert_eq!(n.to_string(), "Even($v0) <- exists x: ($v0 = s(x) & ~Even(x)).");
        let plain = GeneralRule {
            head: "R".into(),
            args: vec![Term::var("x"), Term::var("y")],
            body: Formula::atom("G", vec![Term::var("x"), Term::var("y")]),
        };
        assert_eq!(normalize_rule(&plain).unwrap(), Rule::new("R", &["x", "y"], plain.body.clone()));
        let eq = GeneralRule { head: "=".into(), args: vec![], body: Formula::True };
        assert_eq!(normalize_rule(&eq), Err(Error::EqualityHead));
    }

    #[test]
    fn polarity_examples() {
        let preds: BTreeSet<String> = ["Term".to_string()].into_iter().collect();
        let f = Formula::not(Formula::and(
            Formula::atom("G", vec![Term::var("x"), Term::var("y")]),
            Formula::not(Formula::atom("Term", vec![Term::var("y")])),
        ));
        assert!(polarity(&f, &preds).positive);
        let imp = Formula::forall(
            "y",
            Formula::implies(
                Formula::atom("G", vec![Term::var("x"), Term::var("y")]),
                Formula::atom("Term", vec![Term::var("y")]),
            ),
        );
        assert_eq!(polarity(&imp, &preds), polarity(&imp.desugar(), &preds));
        let even: BTreeSet<String> = ["Even".to_string()].into_iter().collect();
        let p = polarity(&Formula::not(Formula::atom("Even", vec![Term::var("x")])), &even);
        assert!(!p.positive);
        assert_eq!(p.occurrences.len(), 1);
    }

    #[test]
    fn splitting() {
        let d = Definition::new(vec![Rule::new(
            "P",
            &[],
            Formula::or(Formula::not(Formula::atom("P", vec![])), Formula::atom("P", vec![])),
        )]);
        let s = split_disjunctive_rule(&d, 0).unwrap();
        assert_eq!(s.rules.len(), 2);
        assert_eq!(s.rules[0].to_string(), "P <- ~P.");
        assert_eq!(s.rules[1].to_string(), "P <- P.");
        assert_eq!(split_disjunctive_rule(&s, 0), Err(Error::NotDisjunction(0)));
        assert_eq!(split_disjunctive_rule(&s, 5), Err(Error::RuleIndex(5)));
    }

    #[test]
    fn free_symbols_examples() {
        let f = Formula::exists("z", Formula::atom("R", vec![Term::var("x"), Term::var("z")]));
        let s: Vec<_> = free_symbols(&f).into_iter().collect();
        assert_eq!(s, vec![Symbol::predicate("R", 2), Symbol::object("x")]);
        let f = Formula::forall("x", Formula::atom("P", vec![Term::var("x")]));
        assert_eq!(free_symbols(&f).into_iter().collect::<Vec<_>>(), vec![Symbol::predicate("P", 1)]);
        let f = Formula::Eq(Term::var("y"), Term::app("s", vec![Term::var("x")]));
        let names: Vec<_> = free_symbols(&f).into_iter().map(|s| s.name).collect();
        assert_eq!(names.len(), 3);
        assert!(names.contains(&"s".to_string()));
    }

    #[test]
    fn display_precedence() {
        let a = || Formula::atom("A", vec![]);
        let b = || Formula::atom("B", vec![]);
        assert_eq!(Formula::and(a(), Formula::and(a(), b())).to_string(), "A & (A & B)");
        assert_eq!(Formula::and(Formula::and(a(), b()), a()).to_string(), "A & B & A");
        assert_eq!(Formula::not(Formula::or(a(), b())).to_string(), "~(A | B)");
        assert_eq!(Formula::implies(Formula::implies(a(), b()), a()).to_string(), "(A => B) => A");
        assert_eq!(Formula::implies(a(), Formula::implies(b(), a())).to_string(), "A => B => A");
    }
}
