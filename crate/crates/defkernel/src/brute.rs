//! Reference computations by direct evaluation of rule bodies.
//!
//! These never look at the grounding, so they serve as oracles for it.

use anyhow::{ensure, Result};
use defkernel_core::eval::{eval_formula, Assignment};
use defkernel_core::model::compose;
use defkernel_core::{AtomSet, Problem};

/// Largest universe the exhaustive searches accept.
pub const MAX_ATOMS: usize = 16;

/// Γ(𝔄) by evaluating every rule in O∘𝔄.
pub fn gamma(problem: &Problem, set: &AtomSet) -> Result<AtomSet> {
    let u = problem.universe();
    let s = compose(problem.context(), u, set)?;
    let mut out = problem.empty_set();
    for a in 0..problem.len() {
        let pred = &u.predicates()[u.predicate_of(a)].name;
        let args = u.args_of(a);
        for rule in problem.definition().rules.iter().filter(|r| &r.head == pred) {
            let asg: Assignment = rule.head_vars.iter().cloned().zip(args.iter().copied()).collect();
            if eval_formula(&s, &asg, &rule.body)? {
                out.insert(a);
                break;
            }
        }
    }
    Ok(out)
}

/// All subsets of the universe, in binary order.
pub fn all_structures(problem: &Problem) -> Result<impl Iterator<Item = AtomSet>> {
    let n = problem.len();
    ensure!(n <= MAX_ATOMS, "{n} atoms exceed the exhaustive limit of {MAX_ATOMS}");
    Ok((0u32..1 << n).map(move |bits| AtomSet::from_indices(n, (0..n).filter(|i| bits >> i & 1 == 1))))
}

pub fn fixpoints(problem: &Problem) -> Result<Vec<AtomSet>> {
    let mut out = Vec::new();
    for s in all_structures(problem)? {
        if gamma(problem, &s)? == s {
            out.push(s);
        }
    }
    Ok(out)
}

/// The fixpoint contained in all others, if there is one.
pub fn least(fixpoints: &[AtomSet]) -> Option<&AtomSet> {
    fixpoints.iter().find(|f| fixpoints.iter().all(|g| f.is_subset(g)))
}

pub fn minimal(fixpoints: &[AtomSet]) -> Vec<&AtomSet> {
    fixpoints.iter().filter(|f| !fixpoints.iter().any(|g| g != *f && g.is_subset(f))).collect()
}
