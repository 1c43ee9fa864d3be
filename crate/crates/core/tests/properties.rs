//! Randomized checks of the engine against exhaustive reference computations
//! on small propositional definitions.

use std::collections::BTreeSet;

use defkernel_core::induction::{self, gamma, gamma_equivalent, InductionTrace, Policy};
use defkernel_core::order::{is_dependency, DEFAULT_SUPPORT_CAP};
use defkernel_core::safety::{self, Budget};
use defkernel_core::syntax::split_disjunctive_rule;
use defkernel_core::{AtomRelation, AtomSet, Definition, FiniteStructure, Formula, Problem, Rule};
use proptest::prelude::*;

const N: usize = 5;

fn atom_name(i: usize) -> String {
    format!("P{i}")
}

fn formula(positive: bool) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        6 => (0..N).prop_map(|i| Formula::atom(&atom_name(i), vec![])),
        1 => Just(Formula::True),
        1 => Just(Formula::False),
    ];
    leaf.prop_recursive(3, 12, 2, move |inner| {
        if positive {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Formula::or(a, b)),
            ]
            .boxed()
        } else {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Formula::implies(a, b)),
            ]
            .boxed()
        }
    })
}

fn definition(positive: bool) -> impl Strategy<Value = Definition> {
    prop::collection::vec((0..N, formula(positive)), 1..8).prop_map(|rules| {
        Definition::new(rules.into_iter().map(|(h, body)| Rule::new(&atom_name(h), &[], body)).collect())
    })
}

/// Every Pi is defined, so bodies never mention parameters.
fn problem_of(mut def: Definition) -> Problem {
    for i in 0..N {
        if !def.rules.iter().any(|r| r.head == atom_name(i)) {
            def.rules.push(Rule::new(&atom_name(i), &[], Formula::False));
        }
    }
    let context = FiniteStructure::new(&["o"]).unwrap();
    Problem::new(def, context).unwrap()
}

fn problem(positive: bool) -> impl Strategy<Value = Problem> {
    definition(positive).prop_map(problem_of)
}

fn subsets(n: usize) -> Vec<AtomSet> {
    (0u32..1 << n).map(|m| AtomSet::from_indices(n, (0..n).filter(|i| m >> i & 1 == 1))).collect()
}

/// Every state reachable from `start`, by breadth-first search over all non-empty steps.
fn reachable_states(p: &Problem, start: &AtomSet) -> BTreeSet<AtomSet> {
    let mut seen = BTreeSet::from([start.clone()]);
    let mut frontier = vec![start.clone()];
    while let Some(s) = frontier.pop() {
        let app = induction::applicable(p, &s).to_vec();
        for m in 1u32..1 << app.len() {
            let mut t = s.clone();
            for (i, &a) in app.iter().enumerate() {
                if m >> i & 1 == 1 {
                    t.insert(a);
                }
            }
            if seen.insert(t.clone()) {
                frontier.push(t);
            }
        }
    }
    seen
}

fn relation(n: usize) -> impl Strategy<Value = AtomRelation> {
    prop::collection::vec((0..n, 0..n), 0..10).prop_map(move |pairs| AtomRelation::from_pairs(n, pairs))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn safety_matches_full_reachability(p in problem(false), start_bits in 0u32..32) {
        let b = Budget::default();
        let n = p.len();
        // Use a reachable start so the query is meaningful.
        let states: Vec<AtomSet> = reachable_states(&p, &p.empty_set()).into_iter().collect();
        let start = &states[start_bits as usize % states.len()];
        let from_start = reachable_states(&p, start);
        let idx = safety::reachable(&p, start, &b).unwrap();
        for s in &from_start {
            prop_assert!(s == start || idx.contains(s));
        }
        for a in 0..n {
            let safe = from_start.iter().all(|s| induction::derives(&p, s, a));
            let never = from_start.iter().all(|s| !induction::derives(&p, s, a));
            prop_assert_eq!(safety::safely_derivable(&p, start, a, &b).unwrap(), safe, "atom {}", p.name(a));
            prop_assert_eq!(safety::strictly_underivable(&p, start, a, &b).unwrap(), never, "atom {}", p.name(a));
        }
    }

    #[test]
    fn fixpoints_match_brute_force(p in problem(false)) {
        let b = Budget::default();
        let mut brute: Vec<AtomSet> = subsets(p.len()).into_iter().filter(|s| gamma(&p, s) == *s).collect();
        brute.sort_by(|x, y| x.canonical_cmp(y));
        prop_assert_eq!(&safety::all_fixpoints(&p, &b).unwrap(), &brute);
        for f in &brute {
            let minimal = !brute.iter().any(|g| g != f && g.is_subset(f));
            prop_assert_eq!(safety::is_minimal_fixpoint(&p, f, &b).unwrap(), minimal);
            prop_assert_eq!(safety::is_unique_fixpoint(&p, f, &b).unwrap(), brute.len() == 1);
        }
    }

    #[test]
    fn positive_definitions_are_monotone(p in problem(true)) {
        let all = subsets(p.len());
        for s in &all {
            for t in all.iter().filter(|t| s.is_subset(t)) {
                prop_assert!(gamma(&p, s).is_subset(&gamma(&p, t)));
            }
        }
        // The safe limit is then the least fixpoint.
        let b = Budget::default();
        let (limit, _) = safety::safely_defined_structure(&p, &b).unwrap();
        let fx = safety::all_fixpoints(&p, &b).unwrap();
        prop_assert_eq!(safety::least_fixpoint(&fx), Some(&limit));
    }

    #[test]
    fn safe_inductions_converge(p in problem(false), seeds in prop::collection::vec(any::<u64>(), 5)) {
        let b = Budget::default();
        let (limit, greedy) = safety::safely_defined_structure(&p, &b).unwrap();
        greedy.validate(&p).unwrap();
        for seed in seeds {
            let t = safety::random_safe_induction(&p, seed, &b).unwrap();
            t.validate(&p).unwrap();
            prop_assert_eq!(t.last(), &limit);
            prop_assert_eq!(safety::first_unsafe_step(&p, &t, &b).unwrap(), None);
        }
    }

    #[test]
    fn safety_grows_along_any_trace(p in problem(false), seed in any::<u64>()) {
        let b = Budget::default();
        let t = induction::random_induction(&p, seed, Policy::AnySubset).unwrap();
        t.validate(&p).unwrap();
        prop_assert!(t.is_terminal(&p));
        let safe: Vec<AtomSet> = t.stages().iter().map(|s| safety::safe_set(&p, s, &b).unwrap()).collect();
        for w in safe.windows(2) {
            prop_assert!(w[0].is_subset(&w[1]));
        }
        let under: Vec<AtomSet> = t.stages().iter().map(|s| safety::underivable_set(&p, s, &b).unwrap()).collect();
        for w in under.windows(2) {
            prop_assert!(w[0].is_subset(&w[1]));
        }
    }

    #[test]
    fn splitting_disjunctions_preserves_gamma(def in definition(false)) {
        let p = problem_of(def.clone());
        for i in 0..def.rules.len() {
            if let Ok(split) = split_disjunctive_rule(&def, i) {
                let q = problem_of(split);
                prop_assert_eq!(gamma_equivalent(&p, &q, DEFAULT_SUPPORT_CAP).unwrap(), None);
            }
        }
    }

    #[test]
    fn supersets_of_dependencies_are_dependencies(p in problem(false), r in relation(N), extra in relation(N)) {
        let total = AtomRelation::total(N);
        prop_assert_eq!(is_dependency(&p, &total, DEFAULT_SUPPORT_CAP).unwrap(), None);
        if is_dependency(&p, &r, DEFAULT_SUPPORT_CAP).unwrap().is_none() {
            prop_assert_eq!(is_dependency(&p, &r.union(&extra), DEFAULT_SUPPORT_CAP).unwrap(), None);
        }
    }

    #[test]
    fn witnesses_disagree(p in problem(false), r in relation(N)) {
        if let Some(w) = is_dependency(&p, &r, DEFAULT_SUPPORT_CAP).unwrap() {
            prop_assert!(w.a.is_subset(&w.b));
            prop_assert_ne!(induction::derives(&p, &w.a, w.atom), induction::derives(&p, &w.b, w.atom));
            let related = r.related_to(w.atom);
            prop_assert_eq!(w.a.intersection(related), w.b.intersection(related));
        }
    }

    #[test]
    fn closure_is_least_transitive_superset(r in relation(6)) {
        let c = r.transitive_closure();
        prop_assert!(c.is_transitive());
        for (a, b) in r.pairs() {
            prop_assert!(c.contains(a, b));
        }
        // Every closure pair is witnessed by a path in r.
        for (a, b) in c.pairs() {
            let mut seen = AtomSet::empty(6);
            let mut stack = vec![a];
            let mut found = false;
            while let Some(x) = stack.pop() {
                for y in 0..6 {
                    if r.contains(x, y) && seen.insert(y) {
                        found |= y == b;
                        stack.push(y);
                    }
                }
            }
            prop_assert!(found);
        }
    }

    #[test]
    fn atom_sets_agree_with_btreeset(xs in prop::collection::btree_set(0usize..70, 0..30), ys in prop::collection::btree_set(0usize..70, 0..30)) {
        let a = AtomSet::from_indices(70, xs.iter().copied());
        let b = AtomSet::from_indices(70, ys.iter().copied());
        prop_assert_eq!(a.union(&b).to_vec(), xs.union(&ys).copied().collect::<Vec<_>>());
        prop_assert_eq!(a.intersection(&b).to_vec(), xs.intersection(&ys).copied().collect::<Vec<_>>());
        prop_assert_eq!(a.difference(&b).to_vec(), xs.difference(&ys).copied().collect::<Vec<_>>());
        prop_assert_eq!(a.is_subset(&b), xs.is_subset(&ys));
        prop_assert_eq!(a.is_disjoint(&b), xs.is_disjoint(&ys));
        prop_assert_eq!(a.complement().count(), 70 - xs.len());
    }
}

#[test]
fn start_members_have_rank_zero() {
    let p = problem_of(Definition::new(vec![Rule::new("P0", &[], Formula::True)]));
    let t = InductionTrace::new(AtomSet::full(p.len()));
    assert_eq!(t.rank(0), Some(0));
    assert!(t.is_terminal(&p));
}
