//! Built-in problem generators with independent oracles.
//!
//! Each generator writes problem-file text and parses it, so every entry is
//! also an example of the file format. Oracles compute the expected atoms by
//! name, without touching the engine.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use anyhow::{anyhow, bail, ensure, Context, Result};
use defkernel_core::{AtomRelation, Problem};

use crate::parser::parse_problem;

/// What the safely defined structure should look like.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Expected {
    pub defined: BTreeSet<String>,
    pub undecided: BTreeSet<String>,
    pub saturated: bool,
    /// Optional `fixpoint`, `minimal`, `unique` flags.
    pub flags: BTreeMap<String, bool>,
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub name: String,
    pub args: Vec<String>,
    pub source: String,
    pub problem: Problem,
    pub expected: Expected,
    /// Named candidate relations; the declared one, if any, comes first.
    pub relations: Vec<(String, AtomRelation)>,
    pub experimental: bool,
}

impl Entry {
    pub fn relation(&self, name: &str) -> Option<&AtomRelation> {
        self.relations.iter().find(|(n, _)| n == name).map(|(_, r)| r)
    }
}

pub struct Info {
    pub name: &'static str,
    pub params: &'static str,
    pub summary: &'static str,
}

pub const ENTRIES: &[Info] = &[
    Info { name: "tc", params: "[edges=a-a,b-c,c-b]", summary: "transitive closure; total relation" },
    Info { name: "even", params: "[n=4]", summary: "even numbers by alternation; declared order Even(i) < Even(i+1)" },
    Info { name: "even-swapped", params: "[n=4]", summary: "even with Even(1) < Even(0) < Even(2) < ..." },
    Info { name: "even-next", params: "[n=4]", summary: "even through a defined Next relation" },
    Info { name: "sat", params: "[vocab=P] [depth=2]", summary: "propositional satisfaction, flattened" },
    Info { name: "foo", params: "[n=3]", summary: "Foo(x) <- ~Foo(x) on n elements" },
    Info { name: "mutual", params: "", summary: "P <- ~Q, Q <- ~P" },
    Info { name: "pq", params: "", summary: "Q <- true, P <- Q with order P < Q" },
    Info { name: "insensible", params: "", summary: "P <- ~P, P <- P" },
    Info { name: "insensible-or", params: "", summary: "P <- ~P | P" },
    Info { name: "insensible-true", params: "", summary: "P <- true" },
    Info { name: "nonminimal", params: "", summary: "safe limit that is a non-minimal fixpoint" },
    Info { name: "liar", params: "", summary: "T <- ~T" },
    Info { name: "teller", params: "", summary: "T <- T" },
    Info { name: "term", params: "[edges=a-b,b-c,d-d,e-d]", summary: "terminating states of a transition graph" },
    Info { name: "kripke", params: "", summary: "modal satisfaction with distributed and common knowledge" },
    Info { name: "grue", params: "[n=4]", summary: "n grue if n+1 grue; standard order is not a dependency" },
    Info { name: "rank", params: "[edges=a-b,b-c,a-c,d-d]", summary: "experimental: longest-path rank of terminating states" },
];

pub fn names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|i| i.name)
}

/// Builds an entry; `args` are the positional parameters listed in [`ENTRIES`].
pub fn generate(name: &str, args: &[String]) -> Result<Entry> {
    let arg = |i: usize| args.get(i).map(String::as_str);
    let num = |i: usize, default: usize| -> Result<usize> {
        arg(i).map_or(Ok(default), |s| s.parse().with_context(|| format!("`{s}` is not a number")))
    };
    let g = match name {
        "tc" => tc(&edges(arg(0).unwrap_or("a-a,b-c,c-b"))?),
        "even" => even(num(0, 4)?, false),
        "even-swapped" => even(num(0, 4)?, true),
        "even-next" => even_next(num(0, 4)?),
        "sat" => sat(arg(0).unwrap_or("P"), num(1, 2)?),
        "foo" => foo(num(0, 3)?),
        "mutual" => Ok(small("P <- ~Q.\n  Q <- ~P.", &["P", "Q"], &[], &["P", "Q"], false, &[("fixpoint", false)])),
        "pq" => pq(),
        "insensible" => Ok(small("P <- ~P.\n  P <- P.", &["P"], &["P"], &[], true, &unique())),
        "insensible-or" => Ok(small("P <- ~P | P.", &["P"], &["P"], &[], true, &unique())),
        "insensible-true" => Ok(small("P <- true.", &["P"], &["P"], &[], true, &unique())),
        "nonminimal" => Ok(small(
            "Q <- ~P.\n  Q <- P & Q.\n  P <- Q.\n  P <- P.",
            &["P", "Q"],
            &["P", "Q"],
            &[],
            true,
            &[("fixpoint", true), ("minimal", false), ("unique", false)],
        )),
        "liar" => Ok(small("T <- ~T.", &["T"], &[], &["T"], false, &[("fixpoint", false)])),
        "teller" => Ok(small("T <- T.", &["T"], &[], &[], true, &[("fixpoint", true), ("minimal", true), ("unique", false)])),
        "term" => term(&edges(arg(0).unwrap_or("a-b,b-c,d-d,e-d"))?),
        "kripke" => kripke(),
        "grue" => grue(num(0, 4)?),
        "rank" => rank(&edges(arg(0).unwrap_or("a-b,b-c,a-c,d-d"))?),
        other => bail!("unknown corpus entry `{other}`; see `defkernel corpus list`"),
    }?;
    let problem = parse_problem(&g.source).map_err(|e| anyhow!("generated source for `{name}` does not parse: {e}"))?;
    let mut relations = Vec::new();
    for (rname, pairs) in &g.relations {
        let mut rel = AtomRelation::empty(problem.len());
        for (a, b) in pairs {
            let ia = problem.atom(a).ok_or_else(|| anyhow!("no atom `{a}`"))?;
            let ib = problem.atom(b).ok_or_else(|| anyhow!("no atom `{b}`"))?;
            rel.insert(ia, ib);
        }
        relations.push((rname.clone(), rel.transitive_closure()));
    }
    if let Some(d) = problem.declared_relation() {
        relations.insert(0, ("declared".into(), d.clone()));
    }
    Ok(Entry {
        name: name.into(),
        args: args.to_vec(),
        source: g.source,
        problem,
        expected: g.expected,
        relations,
        experimental: name == "rank",
    })
}

/// Every entry at its default parameters.
pub fn default_entries() -> Result<Vec<Entry>> {
    names().map(|n| generate(n, &[])).collect()
}

type Pairs = Vec<(String, String)>;

struct Generated {
    source: String,
    expected: Expected,
    /// Extra relations, given as generating pairs; closed transitively.
    relations: Vec<(String, Pairs)>,
}

fn edges(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for e in text.split(',').map(str::trim).filter(|e| !e.is_empty()) {
        let (a, b) = e.split_once('-').with_context(|| format!("edge `{e}` is not of the form a-b"))?;
        ensure!(is_name(a) && is_name(b), "edge `{e}` has an invalid node name");
        out.push((a.to_string(), b.to_string()));
    }
    ensure!(!out.is_empty(), "no edges");
    Ok(out)
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_')
}

fn nodes(edges: &[(String, String)]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for (a, b) in edges {
        for n in [a, b] {
            if !out.contains(n) {
                out.push(n.clone());
            }
        }
    }
    out
}

fn atom(pred: &str, args: &[&str]) -> String {
    if args.is_empty() {
        pred.to_string()
    } else {
        format!("{pred}({})", args.join(","))
    }
}

fn pred_line(out: &mut String, name: &str, arity: usize, tuples: &[Vec<String>]) {
    let ts: Vec<String> = tuples.iter().map(|t| format!("({})", t.join(","))).collect();
    let _ = writeln!(out, "pred {name}/{arity} = {{ {} }} ;", ts.join(", "));
}

fn expect_lines(out: &mut String, ex: &Expected) {
    let braced = |s: &BTreeSet<String>| {
        if s.is_empty() {
            "{}".to_string()
        } else {
            format!("{{ {} }}", s.iter().cloned().collect::<Vec<_>>().join(" "))
        }
    };
    let _ = writeln!(out, "expect defined {} ;", braced(&ex.defined));
    let _ = writeln!(out, "expect undecided {} ;", braced(&ex.undecided));
    let _ = writeln!(out, "expect saturated {} ;", ex.saturated);
    for (k, v) in &ex.flags {
        let _ = writeln!(out, "expect {k} {v} ;");
    }
}

fn order_block(out: &mut String, pairs: &Pairs) {
    out.push_str("order {\n");
    for (a, b) in pairs {
        let _ = writeln!(out, "  {a} < {b}.");
    }
    out.push_str("}\n");
}

fn set(items: impl IntoIterator<Item = String>) -> BTreeSet<String> {
    items.into_iter().collect()
}

fn least() -> BTreeMap<String, bool> {
    [("fixpoint".to_string(), true), ("minimal".to_string(), true)].into()
}

fn unique() -> [(&'static str, bool); 3] {
    [("fixpoint", true), ("minimal", true), ("unique", true)]
}

/// Propositional definitions over a one-element domain.
fn small(rules: &str, preds: &[&str], defined: &[&str], undecided: &[&str], saturated: bool, flags: &[(&str, bool)]) -> Generated {
    let mut s = String::from("domain o ;\n");
    for p in preds {
        let _ = writeln!(s, "pred {p}/0 ;");
    }
    let _ = writeln!(s, "define {{\n  {rules}\n}}");
    let expected = Expected {
        defined: set(defined.iter().map(|x| x.to_string())),
        undecided: set(undecided.iter().map(|x| x.to_string())),
        saturated,
        flags: flags.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
    };
    expect_lines(&mut s, &expected);
    Generated { source: s, expected, relations: Vec::new() }
}

fn pq() -> Result<Generated> {
    let mut g = small("Q <- true.\n  P <- Q.", &["P", "Q"], &["P", "Q"], &[], true, &unique());
    order_block(&mut g.source, &vec![("P".into(), "Q".into())]);
    Ok(g)
}

fn tc_oracle(nodes: &[String], edges: &[(String, String)]) -> Vec<Vec<bool>> {
    let n = nodes.len();
    let idx = |x: &String| nodes.iter().position(|y| y == x).unwrap();
    let mut r = vec![vec![false; n]; n];
    for (a, b) in edges {
        r[idx(a)][idx(b)] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r
}

fn tc(edges: &[(String, String)]) -> Result<Generated> {
    let ns = nodes(edges);
    ensure!(ns.len() <= 6, "tc supports at most 6 nodes");
    let mut s = format!("domain {} ;\n", ns.join(" "));
    let tuples: Vec<Vec<String>> = edges.iter().map(|(a, b)| vec![a.clone(), b.clone()]).collect();
    pred_line(&mut s, "G", 2, &tuples);
    s.push_str("pred R/2 ;\ndefine {\n  R(x,y) <- G(x,y).\n  R(x,y) <- exists z: (R(x,z) & R(z,y)).\n}\n");
    let r = tc_oracle(&ns, edges);
    let mut defined = BTreeSet::new();
    let mut all = Vec::new();
    for (i, a) in ns.iter().enumerate() {
        for (j, b) in ns.iter().enumerate() {
            all.push(atom("R", &[a, b]));
            if r[i][j] {
                defined.insert(atom("R", &[a, b]));
            }
        }
    }
    let total: Pairs = all.iter().flat_map(|a| all.iter().map(move |b| (a.clone(), b.clone()))).collect();
    order_block(&mut s, &total);
    let expected = Expected { defined, saturated: true, flags: least(), ..Default::default() };
    expect_lines(&mut s, &expected);
    Ok(Generated { source: s, expected, relations: Vec::new() })
}

fn numerals(n: usize) -> Vec<String> {
    (0..=n).map(|i| i.to_string()).collect()
}

fn even_order(n: usize, swapped: bool) -> Pairs {
    let mut seq: Vec<usize> = (0..=n).collect();
    if swapped && n >= 1 {
        seq.swap(0, 1);
    }
    seq.windows(2).map(|w| (atom("Even", &[&w[0].to_string()]), atom("Even", &[&w[1].to_string()]))).collect()
}

fn even_expected(n: usize) -> Expected {
    Expected {
        defined: set((0..=n).step_by(2).map(|i| atom("Even", &[&i.to_string()]))),
        saturated: true,
        flags: unique().iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        ..Default::default()
    }
}

fn even(n: usize, swapped: bool) -> Result<Generated> {
    ensure!(n <= 60, "even supports n <= 60");
    let ds = numerals(n);
    let mut s = format!("domain {} ;\n", ds.join(" "));
    let next: Vec<Vec<String>> = (0..n).map(|i| vec![ds[i].clone(), ds[i + 1].clone()]).collect();
    pred_line(&mut s, "Next", 2, &next);
    s.push_str("obj zero = 0 ;\npred Even/1 ;\n");
    s.push_str("define {\n  Even(zero) <- true.\n  Even(x) <- exists y: (Next(y,x) & ~Even(y)).\n}\n");
    order_block(&mut s, &even_order(n, swapped));
    let expected = even_expected(n);
    expect_lines(&mut s, &expected);
    let other = if swapped { ("ev", even_order(n, false)) } else { ("swapped", even_order(n, true)) };
    Ok(Generated { source: s, expected, relations: vec![(other.0.into(), other.1)] })
}

fn even_next(n: usize) -> Result<Generated> {
    ensure!((1..=12).contains(&n), "even-next supports 1 <= n <= 12");
    let ds = numerals(n);
    let mut s = format!("domain {} ;\n", ds.join(" "));
    let succ: Vec<Vec<String>> = (0..n).map(|i| vec![ds[i].clone(), ds[i + 1].clone()]).collect();
    pred_line(&mut s, "Succ", 2, &succ);
    s.push_str("obj zero = 0 ;\npred Next/2 ;\npred Even/1 ;\n");
    s.push_str("define {\n  Next(x,y) <- Succ(y,x).\n  Even(x) <- x = zero | exists y: (Next(x,y) & ~Even(y)).\n}\n");
    let mut expected = even_expected(n);
    for i in 1..=n {
        expected.defined.insert(atom("Next", &[&ds[i], &ds[i - 1]]));
    }
    expect_lines(&mut s, &expected);
    let evens: Vec<String> = ds.iter().map(|d| atom("Even", &[d])).collect();
    let mut cand: Pairs = Vec::new();
    for a in &ds {
        for b in &ds {
            for e in &evens {
                cand.push((atom("Next", &[a, b]), e.clone()));
            }
        }
    }
    for e in &evens {
        for f in &evens {
            cand.push((e.clone(), f.clone()));
        }
    }
    Ok(Generated { source: s, expected, relations: vec![("candidate".into(), cand)] })
}

fn foo(n: usize) -> Result<Generated> {
    ensure!((1..=20).contains(&n), "foo supports 1 <= n <= 20");
    let ds: Vec<String> = (1..=n).map(|i| format!("d{i}")).collect();
    let mut s = format!("domain {} ;\npred Foo/1 ;\ndefine {{\n  Foo(x) <- ~Foo(x).\n}}\n", ds.join(" "));
    let expected = Expected {
        undecided: set(ds.iter().map(|d| atom("Foo", &[d]))),
        flags: [("fixpoint".to_string(), false)].into(),
        ..Default::default()
    };
    expect_lines(&mut s, &expected);
    Ok(Generated { source: s, expected, relations: Vec::new() })
}

fn term_oracle(ns: &[String], edges: &[(String, String)]) -> Vec<bool> {
    // x terminates iff no cycle is reachable from x (including x itself).
    let r = tc_oracle(ns, edges);
    let n = ns.len();
    (0..n).map(|x| !(0..n).any(|y| (x == y || r[x][y]) && r[y][y])).collect()
}

fn term(edges: &[(String, String)]) -> Result<Generated> {
    let ns = nodes(edges);
    ensure!(ns.len() <= 40, "term supports at most 40 nodes");
    let mut s = format!("domain {} ;\n", ns.join(" "));
    let tuples: Vec<Vec<String>> = edges.iter().map(|(a, b)| vec![a.clone(), b.clone()]).collect();
    pred_line(&mut s, "G", 2, &tuples);
    s.push_str("pred Term/1 ;\ndefine {\n  Term(x) <- forall y: (G(x,y) => Term(y)).\n}\n");
    let t = term_oracle(&ns, edges);
    let expected = Expected {
        defined: set(ns.iter().zip(&t).filter(|(_, &b)| b).map(|(x, _)| atom("Term", &[x]))),
        saturated: true,
        flags: least(),
        ..Default::default()
    };
    expect_lines(&mut s, &expected);
    Ok(Generated { source: s, expected, relations: Vec::new() })
}

fn grue(n: usize) -> Result<Generated> {
    ensure!((1..=40).contains(&n), "grue supports 1 <= n <= 40");
    let ds = numerals(n);
    let mut s = format!("domain {} ;\n", ds.join(" "));
    let next: Vec<Vec<String>> = (0..n).map(|i| vec![ds[i].clone(), ds[i + 1].clone()]).collect();
    pred_line(&mut s, "Next", 2, &next);
    s.push_str("pred Grue/1 ;\ndefine {\n  Grue(x) <- exists y: (Next(x,y) & Grue(y)).\n}\n");
    let standard: Pairs = ds.windows(2).map(|w| (atom("Grue", &[&w[0]]), atom("Grue", &[&w[1]]))).collect();
    order_block(&mut s, &standard);
    let expected = Expected { saturated: true, flags: unique().iter().map(|(k, v)| (k.to_string(), *v)).collect(), ..Default::default() };
    expect_lines(&mut s, &expected);
    let reversed: Pairs = standard.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
    Ok(Generated { source: s, expected, relations: vec![("reversed".into(), reversed)] })
}

/// Longest path from each terminating state.
fn rank_oracle(ns: &[String], edges: &[(String, String)]) -> Vec<Option<usize>> {
    let t = term_oracle(ns, edges);
    let idx = |x: &String| ns.iter().position(|y| y == x).unwrap();
    fn go(x: usize, succ: &[Vec<usize>], memo: &mut Vec<Option<usize>>) -> usize {
        if let Some(r) = memo[x] {
            return r;
        }
        let r = succ[x].iter().map(|&y| go(y, succ, memo) + 1).max().unwrap_or(0);
        memo[x] = Some(r);
        r
    }
    let mut succ = vec![Vec::new(); ns.len()];
    for (a, b) in edges {
        succ[idx(a)].push(idx(b));
    }
    let mut memo = vec![None; ns.len()];
    (0..ns.len()).map(|x| t[x].then(|| go(x, &succ, &mut memo))).collect()
}

fn rank(edges: &[(String, String)]) -> Result<Generated> {
    let ns = nodes(edges);
    ensure!(ns.len() <= 6, "rank supports at most 6 states");
    let nums: Vec<String> = (0..ns.len()).map(|i| format!("n{i}")).collect();
    ensure!(ns.iter().all(|x| !nums.contains(x)), "state names must differ from n0, n1, ...");
    let mut s = format!("domain {} {} ;\n", ns.join(" "), nums.join(" "));
    let tuples: Vec<Vec<String>> = edges.iter().map(|(a, b)| vec![a.clone(), b.clone()]).collect();
    pred_line(&mut s, "G", 2, &tuples);
    pred_line(&mut s, "IsState", 1, &ns.iter().map(|x| vec![x.clone()]).collect::<Vec<_>>());
    pred_line(&mut s, "IsNum", 1, &nums.iter().map(|x| vec![x.clone()]).collect::<Vec<_>>());
    let mut lt = Vec::new();
    let mut le = Vec::new();
    for (i, a) in nums.iter().enumerate() {
        for (j, b) in nums.iter().enumerate() {
            if i < j {
                lt.push(vec![a.clone(), b.clone()]);
            }
            if i <= j {
                le.push(vec![a.clone(), b.clone()]);
            }
        }
    }
    pred_line(&mut s, "Lt", 2, &lt);
    pred_line(&mut s, "Le", 2, &le);
    s.push_str("pred Term/1 ;\npred Rank/2 ;\ndefine {\n");
    s.push_str("  Term(x) <- IsState(x) & forall y: (G(x,y) => Term(y)).\n");
    s.push_str("  Rank(x,r) <- IsNum(r) & Term(x)\n");
    s.push_str("    & forall y: (forall r1: (G(x,y) & Rank(y,r1) => Lt(r1,r)))\n");
    s.push_str("    & forall r2: (IsNum(r2) & forall y: (forall r1: (G(x,y) & Rank(y,r1) => Lt(r1,r2))) => Le(r,r2)).\n");
    s.push_str("}\n");
    let ranks = rank_oracle(&ns, edges);
    let mut defined = BTreeSet::new();
    for (x, r) in ns.iter().zip(&ranks) {
        if let Some(r) = r {
            defined.insert(atom("Term", &[x]));
            defined.insert(atom("Rank", &[x, &nums[*r]]));
        }
    }
    let expected = Expected { defined, saturated: true, ..Default::default() };
    expect_lines(&mut s, &expected);
    Ok(Generated { source: s, expected, relations: Vec::new() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Prop {
    Var(char),
    Not(Box<Prop>),
    And(Box<Prop>, Box<Prop>),
    Or(Box<Prop>, Box<Prop>),
}

impl Prop {
    /// Polish notation: `n`, `a`, `o` prefixes over one-letter variables.
    fn name(&self) -> String {
        match self {
            Prop::Var(c) => c.to_string(),
            Prop::Not(f) => format!("n{}", f.name()),
            Prop::And(f, g) => format!("a{}{}", f.name(), g.name()),
            Prop::Or(f, g) => format!("o{}{}", f.name(), g.name()),
        }
    }

    fn size(&self) -> usize {
        match self {
            Prop::Var(_) => 1,
            Prop::Not(f) => 1 + f.size(),
            Prop::And(f, g) | Prop::Or(f, g) => 1 + f.size() + g.size(),
        }
    }

    fn depth(&self) -> usize {
        match self {
            Prop::Var(_) => 0,
            Prop::Not(f) => 1 + f.depth(),
            Prop::And(f, g) | Prop::Or(f, g) => 1 + f.depth().max(g.depth()),
        }
    }

    fn proper_subformulas(&self, out: &mut BTreeSet<String>) {
        match self {
            Prop::Var(_) => {}
            Prop::Not(f) => {
                out.insert(f.name());
                f.proper_subformulas(out);
            }
            Prop::And(f, g) | Prop::Or(f, g) => {
                for h in [f, g] {
                    out.insert(h.name());
                    h.proper_subformulas(out);
                }
            }
        }
    }

    fn holds(&self, truth: &BTreeSet<char>) -> bool {
        match self {
            Prop::Var(c) => truth.contains(c),
            Prop::Not(f) => !f.holds(truth),
            Prop::And(f, g) => f.holds(truth) && g.holds(truth),
            Prop::Or(f, g) => f.holds(truth) || g.holds(truth),
        }
    }
}

/// All formulas of depth ≤ `depth`, shallow ones first.
fn formulas(vocab: &[char], depth: usize) -> Vec<Prop> {
    let mut all: Vec<Prop> = vocab.iter().map(|&c| Prop::Var(c)).collect();
    for _ in 0..depth {
        let prev = all.clone();
        for f in &prev {
            let nf = Prop::Not(Box::new(f.clone()));
            if !all.contains(&nf) {
                all.push(nf);
            }
        }
        for f in &prev {
            for g in &prev {
                for h in [Prop::And(Box::new(f.clone()), Box::new(g.clone())), Prop::Or(Box::new(f.clone()), Box::new(g.clone()))] {
                    if !all.contains(&h) {
                        all.push(h);
                    }
                }
            }
        }
    }
    all
}

pub const SAT_MAX_DOMAIN: usize = 64;

fn sat(vocab: &str, depth: usize) -> Result<Generated> {
    let vars: Vec<char> = vocab.chars().collect();
    ensure!(!vars.is_empty(), "empty vocabulary");
    ensure!(vars.iter().all(|c| c.is_ascii_uppercase()), "vocabulary letters must be upper-case, e.g. PQ");
    ensure!(vars.iter().collect::<BTreeSet<_>>().len() == vars.len(), "repeated vocabulary letter");
    let fs = formulas(&vars, depth);
    let structs: Vec<BTreeSet<char>> =
        (0..1u32 << vars.len()).map(|m| vars.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &c)| c).collect()).collect();
    let sname = |s: &BTreeSet<char>| format!("i{}", s.iter().collect::<String>());
    ensure!(
        fs.len() + structs.len() <= SAT_MAX_DOMAIN,
        "domain of {} elements exceeds the limit of {SAT_MAX_DOMAIN}",
        fs.len() + structs.len()
    );
    let snames: Vec<String> = structs.iter().map(sname).collect();
    let fnames: Vec<String> = fs.iter().map(Prop::name).collect();
    let mut s = format!("domain {} {} ;\n", snames.join(" "), fnames.join(" "));
    let one = |xs: &[String]| xs.iter().map(|x| vec![x.clone()]).collect::<Vec<_>>();
    pred_line(&mut s, "IsStruct", 1, &one(&snames));
    let atoms: Vec<String> = vars.iter().map(|c| c.to_string()).collect();
    pred_line(&mut s, "IsAtom", 1, &one(&atoms));
    let mut inn = Vec::new();
    for (st, sn) in structs.iter().zip(&snames) {
        for c in st {
            inn.push(vec![c.to_string(), sn.clone()]);
        }
    }
    pred_line(&mut s, "In", 2, &inn);
    let (mut nots, mut ands, mut ors) = (Vec::new(), Vec::new(), Vec::new());
    for f in &fs {
        match f {
            Prop::Var(_) => {}
            Prop::Not(g) => nots.push(vec![f.name(), g.name()]),
            Prop::And(g, h) => ands.push(vec![f.name(), g.name(), h.name()]),
            Prop::Or(g, h) => ors.push(vec![f.name(), g.name(), h.name()]),
        }
    }
    pred_line(&mut s, "IsNot", 2, &nots);
    pred_line(&mut s, "IsAnd", 3, &ands);
    pred_line(&mut s, "IsOr", 3, &ors);
    s.push_str("pred Sat/2 ;\ndefine {\n");
    s.push_str("  Sat(i,f) <- IsStruct(i) & IsAtom(f) & In(f,i).\n");
    s.push_str("  Sat(i,h) <- IsStruct(i) & exists f: (IsNot(h,f) & ~Sat(i,f)).\n");
    s.push_str("  Sat(i,h) <- IsStruct(i) & exists f: (exists g: (IsAnd(h,f,g) & Sat(i,f) & Sat(i,g))).\n");
    s.push_str("  Sat(i,h) <- IsStruct(i) & exists f: (exists g: (IsOr(h,f,g) & (Sat(i,f) | Sat(i,g)))).\n");
    s.push_str("}\n");
    let mut defined = BTreeSet::new();
    let (mut by_sub, mut by_size, mut by_depth, mut unrefined) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    let mut subs: Vec<BTreeSet<String>> = Vec::new();
    for f in &fs {
        let mut out = BTreeSet::new();
        f.proper_subformulas(&mut out);
        subs.push(out);
    }
    for (st, sn) in structs.iter().zip(&snames) {
        for (k, f) in fs.iter().enumerate() {
            let a = atom("Sat", &[sn, &f.name()]);
            if f.holds(st) {
                defined.insert(a.clone());
            }
            for g in &fs {
                let b = atom("Sat", &[sn, &g.name()]);
                if subs[k].contains(&g.name()) {
                    by_sub.push((b.clone(), a.clone()));
                    for sn2 in &snames {
                        unrefined.push((atom("Sat", &[sn2, &g.name()]), a.clone()));
                    }
                }
                if g.size() < f.size() {
                    by_size.push((b.clone(), a.clone()));
                }
                if g.depth() < f.depth() {
                    by_depth.push((b.clone(), a.clone()));
                }
            }
        }
    }
    order_block(&mut s, &by_sub);
    let expected = Expected { defined, saturated: true, flags: unique().iter().map(|(k, v)| (k.to_string(), *v)).collect(), ..Default::default() };
    expect_lines(&mut s, &expected);
    Ok(Generated {
        source: s,
        expected,
        relations: vec![("size".into(), by_size), ("depth".into(), by_depth), ("subformula".into(), unrefined)],
    })
}

#[derive(Debug, Clone)]
enum Modal {
    Atom(&'static str),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    K(&'static str, usize),
    Dc(&'static str, usize),
    /// Common knowledge, as the complement of the named DC formula of the negation.
    C(usize),
}

struct Kripke {
    worlds: Vec<&'static str>,
    agents: Vec<&'static str>,
    groups: Vec<(&'static str, Vec<&'static str>)>,
    labels: Vec<(&'static str, &'static str)>,
    acc: Vec<(&'static str, &'static str, &'static str)>,
    formulas: Vec<(&'static str, Modal)>,
}

fn kripke_instance() -> Kripke {
    Kripke {
        worlds: vec!["w1", "w2", "w3"],
        agents: vec!["a", "b"],
        groups: vec![("grp", vec!["a", "b"])],
        labels: vec![("w1", "p"), ("w3", "p")],
        acc: vec![("w1", "a", "w2"), ("w2", "b", "w1"), ("w2", "a", "w3"), ("w3", "b", "w3")],
        formulas: vec![
            ("p", Modal::Atom("p")),
            ("np", Modal::Not(0)),
            ("kap", Modal::K("a", 0)),
            ("dcp", Modal::Dc("grp", 0)),
            ("dcnp", Modal::Dc("grp", 1)),
            ("cp", Modal::C(4)),
            ("andp", Modal::And(0, 2)),
            ("orp", Modal::Or(1, 5)),
        ],
    }
}

impl Kripke {
    fn members(&self, g: &str) -> &[&'static str] {
        &self.groups.iter().find(|(n, _)| *n == g).unwrap().1
    }

    /// Worlds reachable from `w` in at least one step along edges of the group's agents.
    fn group_reach(&self, w: &str, g: &str) -> BTreeSet<&'static str> {
        let members = self.members(g);
        let step = |x: &str| -> Vec<&'static str> {
            self.acc.iter().filter(|(u, a, _)| *u == x && members.contains(a)).map(|(_, _, v)| *v).collect()
        };
        let mut seen = BTreeSet::new();
        let mut stack = step(w);
        while let Some(v) = stack.pop() {
            if seen.insert(v) {
                stack.extend(step(v));
            }
        }
        seen
    }

    fn sat(&self, w: &str, f: usize) -> bool {
        match &self.formulas[f].1 {
            Modal::Atom(p) => self.labels.contains(&(w, p)),
            Modal::Not(g) => !self.sat(w, *g),
            Modal::And(g, h) => self.sat(w, *g) && self.sat(w, *h),
            Modal::Or(g, h) => self.sat(w, *g) || self.sat(w, *h),
            Modal::K(a, g) => self.acc.iter().any(|(u, b, v)| *u == w && b == a && self.sat(v, *g)),
            Modal::Dc(grp, g) => self.group_reach(w, grp).iter().any(|v| self.sat(v, *g)),
            Modal::C(dual) => !self.sat(w, *dual),
        }
    }
}

fn kripke() -> Result<Generated> {
    let k = kripke_instance();
    let fname = |i: usize| k.formulas[i].0;
    let mut domain: Vec<&str> = k.worlds.clone();
    domain.extend(&k.agents);
    domain.extend(k.groups.iter().map(|(g, _)| *g));
    domain.extend(k.formulas.iter().map(|(n, _)| *n));
    let mut s = format!("domain {} ;\n", domain.join(" "));
    let tup = |xs: &[&str]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    pred_line(&mut s, "IsWorld", 1, &k.worlds.iter().map(|w| tup(&[w])).collect::<Vec<_>>());
    let atoms: Vec<Vec<String>> =
        k.formulas.iter().filter(|(_, m)| matches!(m, Modal::Atom(_))).map(|(n, _)| tup(&[n])).collect();
    pred_line(&mut s, "IsAtom", 1, &atoms);
    pred_line(&mut s, "Label", 2, &k.labels.iter().map(|(w, p)| tup(&[w, p])).collect::<Vec<_>>());
    pred_line(&mut s, "Acc", 3, &k.acc.iter().map(|(w, a, v)| tup(&[w, a, v])).collect::<Vec<_>>());
    let member: Vec<Vec<String>> = k.groups.iter().flat_map(|(g, ms)| ms.iter().map(move |a| tup(&[a, g]))).collect();
    pred_line(&mut s, "Member", 2, &member);
    let (mut nots, mut ands, mut ors, mut ks, mut dcs, mut duals) = (vec![], vec![], vec![], vec![], vec![], vec![]);
    for (n, m) in &k.formulas {
        match m {
            Modal::Atom(_) => {}
            Modal::Not(g) => nots.push(tup(&[n, fname(*g)])),
            Modal::And(g, h) => ands.push(tup(&[n, fname(*g), fname(*h)])),
            Modal::Or(g, h) => ors.push(tup(&[n, fname(*g), fname(*h)])),
            Modal::K(a, g) => ks.push(tup(&[n, a, fname(*g)])),
            Modal::Dc(grp, g) => dcs.push(tup(&[n, grp, fname(*g)])),
            Modal::C(d) => duals.push(tup(&[n, fname(*d)])),
        }
    }
    pred_line(&mut s, "IsNot", 2, &nots);
    pred_line(&mut s, "IsAnd", 3, &ands);
    pred_line(&mut s, "IsOr", 3, &ors);
    pred_line(&mut s, "IsK", 3, &ks);
    pred_line(&mut s, "IsDC", 3, &dcs);
    pred_line(&mut s, "CDual", 2, &duals);
    s.push_str("pred Sat/2 ;\ndefine {\n");
    s.push_str("  Sat(w,f) <- IsWorld(w) & IsAtom(f) & Label(w,f).\n");
    s.push_str("  Sat(w,h) <- IsWorld(w) & exists f: (IsNot(h,f) & ~Sat(w,f)).\n");
    s.push_str("  Sat(w,h) <- IsWorld(w) & exists f: (exists g: (IsAnd(h,f,g) & Sat(w,f) & Sat(w,g))).\n");
    s.push_str("  Sat(w,h) <- IsWorld(w) & exists f: (exists g: (IsOr(h,f,g) & (Sat(w,f) | Sat(w,g)))).\n");
    s.push_str("  Sat(w,h) <- IsWorld(w) & exists a: (exists f: (IsK(h,a,f) & exists v: (Acc(w,a,v) & Sat(v,f)))).\n");
    s.push_str(
        "  Sat(w,h) <- IsWorld(w) & exists g: (exists f: (IsDC(h,g,f) & exists a: (Member(a,g) & exists v: (Acc(w,a,v) & (Sat(v,f) | Sat(v,h)))))).\n",
    );
    s.push_str("  Sat(w,h) <- IsWorld(w) & exists k: (CDual(h,k) & ~Sat(w,k)).\n");
    s.push_str("}\n");
    let sat = |w: &str, f: &str| atom("Sat", &[w, f]);
    let mut table: Pairs = Vec::new();
    for w in &k.worlds {
        for (n, m) in &k.formulas {
            let me = sat(w, n);
            match m {
                Modal::Atom(_) => {}
                Modal::Not(g) => table.push((sat(w, fname(*g)), me)),
                Modal::And(g, h) | Modal::Or(g, h) => {
                    table.push((sat(w, fname(*g)), me.clone()));
                    table.push((sat(w, fname(*h)), me));
                }
                Modal::K(_, g) => table.extend(k.worlds.iter().map(|v| (sat(v, fname(*g)), me.clone()))),
                Modal::Dc(_, g) => {
                    for v in &k.worlds {
                        table.push((sat(v, fname(*g)), me.clone()));
                        table.push((sat(v, n), me.clone()));
                    }
                }
                Modal::C(d) => table.push((sat(w, fname(*d)), me)),
            }
        }
    }
    order_block(&mut s, &table);
    let mut defined = BTreeSet::new();
    for w in &k.worlds {
        for (i, (n, _)) in k.formulas.iter().enumerate() {
            if k.sat(w, i) {
                defined.insert(sat(w, n));
            }
        }
    }
    let expected = Expected { defined, saturated: true, flags: [("fixpoint".to_string(), true)].into(), ..Default::default() };
    expect_lines(&mut s, &expected);
    Ok(Generated { source: s, expected, relations: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_default_entry_parses() {
        for e in default_entries().unwrap() {
            assert!(!e.problem.is_empty(), "{}", e.name);
        }
    }

    #[test]
    fn sat_formula_count() {
        assert_eq!(formulas(&['P'], 2).len(), 37);
        assert_eq!(formulas(&['P', 'Q'], 1).len(), 12);
        assert!(generate("sat", &["PQ".into(), "2".into()]).is_err());
    }

    #[test]
    fn oracles() {
        let ns: Vec<String> = ["a", "b", "c"].map(String::from).to_vec();
        let es = edges("a-a,b-c,c-b").unwrap();
        let r = tc_oracle(&ns, &es);
        assert!(r[0][0] && r[1][1] && r[1][2] && !r[0][1] && !r[1][0]);
        let es = edges("a-b,b-c,d-d,e-d").unwrap();
        assert_eq!(term_oracle(&nodes(&es), &es), vec![true, true, true, false, false]);
        let es = edges("a-b,b-c,a-c,d-d").unwrap();
        assert_eq!(rank_oracle(&nodes(&es), &es), vec![Some(2), Some(1), Some(0), None]);
        let k = kripke_instance();
        // w2 reaches w1, w2, w3; w1 satisfies p.
        assert!(k.sat("w2", 3));
        // ~p holds only at w2, which w1 and w2 reach.
        assert!(!k.sat("w3", 4) && k.sat("w1", 4));
        assert!(k.sat("w3", 5) && !k.sat("w1", 5));
    }
}
