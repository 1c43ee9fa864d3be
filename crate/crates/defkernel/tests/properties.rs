//! Grounding against direct evaluation, and text round trips.

use std::collections::{BTreeMap, BTreeSet};

use defkernel::{brute, corpus, parse_formula, parse_problem, render_problem};
use defkernel_core::induction::{self, Policy};
use defkernel_core::{Definition, Elem, FiniteStructure, Formula, Problem, Rule, Symbol, Term, Vocabulary};
use proptest::prelude::*;

const DOMAIN: [&str; 3] = ["a", "b", "c"];
const VARS: [&str; 3] = ["x", "y", "z"];

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        3 => prop::sample::select(&VARS[..]).prop_map(Term::var),
        1 => Just(Term::obj("k")),
    ];
    leaf.prop_recursive(2, 4, 1, |inner| inner.prop_map(|t| Term::app("g", vec![t])))
}

fn fo_formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        2 => term().prop_map(|t| Formula::atom("Q", vec![t])),
        2 => (term(), term()).prop_map(|(s, t)| Formula::atom("E", vec![s, t])),
        3 => term().prop_map(|t| Formula::atom("P", vec![t])),
        3 => (term(), term()).prop_map(|(s, t)| Formula::atom("R", vec![s, t])),
        1 => (term(), term()).prop_map(|(s, t)| Formula::Eq(s, t)),
        1 => Just(Formula::True),
    ];
    leaf.prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (prop::sample::select(&VARS[..]), inner.clone()).prop_map(|(v, a)| Formula::exists(v, a)),
            (prop::sample::select(&VARS[..]), inner).prop_map(|(v, a)| Formula::forall(v, a)),
        ]
    })
}

fn term_vars(t: &Term, out: &mut BTreeSet<String>) {
    match t {
        Term::Var(v) => {
            out.insert(v.clone());
        }
        Term::Apply(_, args) => args.iter().for_each(|a| term_vars(a, out)),
    }
}

fn free_vars(f: &Formula) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    match f {
        Formula::True | Formula::False => {}
        Formula::Atom(_, args) => args.iter().for_each(|a| term_vars(a, &mut out)),
        Formula::Eq(a, b) => {
            term_vars(a, &mut out);
            term_vars(b, &mut out);
        }
        Formula::Not(a) => out = free_vars(a),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            out = free_vars(a);
            out.extend(free_vars(b));
        }
        Formula::Exists(v, a) | Formula::Forall(v, a) => {
            out = free_vars(a);
            out.remove(v);
        }
    }
    out
}

/// Binds every free variable that is not a head variable existentially.
fn close(body: Formula, head: &[&str]) -> Formula {
    free_vars(&body).into_iter().filter(|v| !head.contains(&v.as_str())).fold(body, |f, v| Formula::exists(&v, f))
}

#[derive(Debug, Clone)]
struct Context {
    q: BTreeSet<Elem>,
    e: BTreeSet<(Elem, Elem)>,
    k: Elem,
    g: [Elem; 3],
}

fn context() -> impl Strategy<Value = Context> {
    (
        prop::collection::btree_set(0..3u32, 0..=3),
        prop::collection::btree_set((0..3u32, 0..3u32), 0..=9),
        0..3u32,
        [0..3u32, 0..3u32, 0..3u32],
    )
        .prop_map(|(q, e, k, g)| Context { q, e, k, g })
}

fn structure(c: &Context) -> FiniteStructure {
    let mut s = FiniteStructure::new(&DOMAIN).unwrap();
    s.set_predicate("Q", 1, c.q.iter().map(|&a| vec![a]).collect()).unwrap();
    s.set_predicate("E", 2, c.e.iter().map(|&(a, b)| vec![a, b]).collect()).unwrap();
    s.set_object("k", c.k).unwrap();
    let table: BTreeMap<Vec<Elem>, Elem> = (0..3).map(|a| (vec![a], c.g[a as usize])).collect();
    s.set_function("g", 1, &table).unwrap();
    s
}

/// Nine R atoms and three P atoms: twelve in all, inside the exhaustive limit.
fn fo_problem() -> impl Strategy<Value = Problem> {
    (prop::collection::vec(fo_formula(), 1..3), prop::collection::vec(fo_formula(), 1..3), context()).prop_map(
        |(ps, rs, c)| {
            let mut rules: Vec<Rule> = ps.into_iter().map(|b| Rule::new("P", &["x"], close(b, &["x"]))).collect();
            rules.extend(rs.into_iter().map(|b| Rule::new("R", &["x", "y"], close(b, &["x", "y"]))));
            Problem::new(Definition::new(rules), structure(&c)).unwrap()
        },
    )
}

fn vocabulary() -> Vocabulary {
    let mut v = Vocabulary::new();
    for s in [
        Symbol::predicate("Q", 1),
        Symbol::predicate("E", 2),
        Symbol::predicate("P", 1),
        Symbol::predicate("R", 2),
        Symbol::object("k"),
        Symbol::function("g", 1),
    ] {
        v.insert(s).unwrap();
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn grounding_matches_direct_evaluation(p in fo_problem(), bits in prop::collection::vec(any::<u16>(), 8)) {
        prop_assert!(p.len() <= brute::MAX_ATOMS);
        let n = p.len();
        for b in bits {
            let set = defkernel_core::AtomSet::from_indices(n, (0..n).filter(|i| b >> i & 1 == 1));
            prop_assert_eq!(induction::gamma(&p, &set), brute::gamma(&p, &set).unwrap(), "at {:?}", p.names(&set));
        }
    }

    #[test]
    fn printed_formulas_parse_back(f in fo_formula()) {
        let text = f.to_string();
        prop_assert_eq!(parse_formula(&text, &vocabulary()).unwrap(), f, "{}", text);
    }

    #[test]
    fn respecting_inductions_follow(seed in any::<u64>(), which in 0usize..4) {
        let (name, args): (&str, &[&str]) = [("even", &["6"][..]), ("sat", &["P", "1"][..]), ("sat", &["PQ", "1"][..]), ("kripke", &[][..])][which];
        let e = corpus::generate(name, &args.iter().map(|s| s.to_string()).collect::<Vec<_>>()).unwrap();
        let rel = e.problem.declared_relation().unwrap();
        let t = induction::random_induction(&e.problem, seed, Policy::Respect(rel)).unwrap();
        prop_assert_eq!(induction::respects(&e.problem, &t, rel), None);
        prop_assert_eq!(induction::follows(&t, rel), None);
    }
}

#[test]
fn corpus_entries_survive_render_and_parse() {
    for e in corpus::default_entries().unwrap() {
        let text = render_problem(&e.problem);
        let q = parse_problem(&text).unwrap_or_else(|err| panic!("{}: {err}\n{text}", e.name));
        assert_eq!(q.definition(), e.problem.definition(), "{}", e.name);
        assert_eq!(q.context(), e.problem.context(), "{}", e.name);
        assert_eq!(q.universe().names(&q.empty_set().complement()), e.problem.universe().names(&e.problem.empty_set().complement()));
        assert_eq!(
            q.declared_relation().map(|r| r.pairs().collect::<Vec<_>>()),
            e.problem.declared_relation().map(|r| r.pairs().collect::<Vec<_>>()),
            "{}",
            e.name
        );
        assert_eq!(q.expectations(), e.problem.expectations(), "{}", e.name);
        assert_eq!(render_problem(&q), text, "{}", e.name);
    }
}
