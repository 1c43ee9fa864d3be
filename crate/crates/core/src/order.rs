//! Dependency relations, induction orders and definition classification.
//!
//! Derivability of an atom is a function of its support (the atoms in its
//! ground body), so every check below enumerates valuations of the support
//! only. Valuations are visited in binary order with the lowest bit on the
//! first support atom in canonical order; the first failure found is the
//! reported witness.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::induction::{applicable, derives, respects, InductionTrace};
use crate::model::{AtomRelation, AtomSet};
use crate::problem::Problem;
use crate::syntax::is_positive;

/// Default cap on the support size of a single atom.
pub const DEFAULT_SUPPORT_CAP: usize = 16;

/// Structures `a ⊆ b` that disagree on `atom` although the relation says they should not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub atom: usize,
    pub a: AtomSet,
    pub b: AtomSet,
}

/// Hard ceiling on `cap`: valuations are enumerated as `u64` bit patterns.
pub const MAX_SUPPORT_CAP: usize = 30;

fn support(problem: &Problem, atom: usize, cap: usize) -> Result<Vec<usize>> {
    let cap = cap.min(MAX_SUPPORT_CAP);
    let s: Vec<usize> = problem.grounding().support(atom).iter().map(|&x| x as usize).collect();
    if s.len() > cap {
        return Err(Error::SupportCap { atom: problem.name(atom), size: s.len(), cap });
    }
    Ok(s)
}

fn valuation(len: usize, atoms: &[usize], bits: u64) -> AtomSet {
    AtomSet::from_indices(len, atoms.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &a)| a))
}

/// Finds 𝔄, 𝔅 agreeing on `inside` but differing on the derivation of `atom`.
fn independence_witness(problem: &Problem, atom: usize, inside: &[usize], outside: &[usize]) -> Option<Witness> {
    if outside.is_empty() {
        return None;
    }
    let n = problem.len();
    for v in 0u64..(1 << inside.len()) {
        let base = valuation(n, inside, v);
        let d0 = derives(problem, &base, atom);
        for w in 1u64..(1 << outside.len()) {
            let mut s = valuation(n, outside, w);
            s.union_with(&base);
            if derives(problem, &s, atom) != d0 {
                return Some(Witness { atom, a: base, b: s });
            }
        }
    }
    None
}

/// Is derivability of each A fixed by 𝔄|∝A? `None` means yes.
pub fn is_dependency(problem: &Problem, rel: &AtomRelation, cap: usize) -> Result<Option<Witness>> {
    check_size(problem, rel)?;
    for a in 0..problem.len() {
        let supp = support(problem, a, cap)?;
        let related = rel.related_to(a);
        let (inside, outside): (Vec<usize>, Vec<usize>) = supp.iter().partition(|&&b| related.contains(b));
        if let Some(w) = independence_witness(problem, a, &inside, &outside) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Monotone dependency check on the transitive closure of `rel`. `None` means it holds.
pub fn is_monotone_dependency(problem: &Problem, rel: &AtomRelation, cap: usize) -> Result<Option<Witness>> {
    check_size(problem, rel)?;
    let rel = if rel.is_transitive() { rel.clone() } else { rel.transitive_closure() };
    let n = problem.len();
    for a in 0..n {
        let supp = support(problem, a, cap)?;
        let related = rel.related_to(a);
        let below = rel.strict_below(a);
        let (inside, outside): (Vec<usize>, Vec<usize>) = supp.iter().partition(|&&b| related.contains(b));
        if let Some(w) = independence_witness(problem, a, &inside, &outside) {
            return Ok(Some(w));
        }
        let layer: Vec<usize> = inside.iter().copied().filter(|&b| !below.contains(b)).collect();
        if let Some(w) = covering_witness(problem, a, &inside, &layer) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// 𝔄 ⊢ A but 𝔄 ∪ {l} ⊬ A for some l in `grow`.
fn covering_witness(problem: &Problem, atom: usize, vars: &[usize], grow: &[usize]) -> Option<Witness> {
    if grow.is_empty() {
        return None;
    }
    let n = problem.len();
    for v in 0u64..(1 << vars.len()) {
        let a = valuation(n, vars, v);
        if !derives(problem, &a, atom) {
            continue;
        }
        for &l in grow {
            if a.contains(l) {
                continue;
            }
            let mut b = a.clone();
            b.insert(l);
            if !derives(problem, &b, atom) {
                return Some(Witness { atom, a, b });
            }
        }
    }
    None
}

/// 𝔄 ⊆ 𝔅 and 𝔄 ⊢ A imply 𝔅 ⊢ A, checked on covering pairs. `None` means monotone.
pub fn is_monotone_definition(problem: &Problem, cap: usize) -> Result<Option<Witness>> {
    for a in 0..problem.len() {
        let supp = support(problem, a, cap)?;
        if let Some(w) = covering_witness(problem, a, &supp, &supp) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn check_size(problem: &Problem, rel: &AtomRelation) -> Result<()> {
    if rel.universe_len() != problem.len() {
        return Err(Error::RelationSize { expected: problem.len(), found: rel.universe_len() });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderReport {
    pub transitive: bool,
    pub irreflexive: bool,
    pub asymmetric: bool,
    pub strict_part_well_founded: bool,
    /// A cycle of the strict part when it is not well-founded.
    pub cycle: Option<Vec<usize>>,
    pub is_dependency: bool,
    pub dependency_witness: Option<Witness>,
    pub is_monotone_dependency: bool,
    pub monotone_witness: Option<Witness>,
    pub strictly_orders: bool,
    pub monotonically_orders: bool,
}

pub fn check_order(problem: &Problem, rel: &AtomRelation, cap: usize) -> Result<OrderReport> {
    check_size(problem, rel)?;
    let transitive = rel.is_transitive();
    let irreflexive = rel.is_irreflexive();
    let asymmetric = rel.is_asymmetric();
    let cycle = rel.strict_cycle();
    let wf = cycle.is_none();
    let dependency_witness = is_dependency(problem, rel, cap)?;
    let monotone_witness = is_monotone_dependency(problem, rel, cap)?;
    let is_dep = dependency_witness.is_none();
    let is_mono = monotone_witness.is_none();
    Ok(OrderReport {
        transitive,
        irreflexive,
        asymmetric,
        strict_part_well_founded: wf,
        cycle,
        is_dependency: is_dep,
        dependency_witness,
        is_monotone_dependency: is_mono,
        monotone_witness,
        strictly_orders: transitive && irreflexive && asymmetric && wf && is_dep,
        monotonically_orders: transitive && wf && is_mono,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    /// Every body is positive in defp(Δ).
    pub positive: bool,
    pub monotone: bool,
    pub monotone_witness: Option<Witness>,
    pub declared: Option<OrderReport>,
    /// The declared relation strictly orders Δ.
    pub ordered: bool,
    /// ∝_t or the declared relation monotonically orders Δ.
    pub iterated: bool,
    /// Neither ∝_t nor the declared relation certifies Δ. Such a definition may
    /// still be well defined; only the safety report can say.
    pub uncertified: bool,
}

pub fn classify(problem: &Problem, cap: usize) -> Result<Classification> {
    let monotone_witness = is_monotone_definition(problem, cap)?;
    let monotone = monotone_witness.is_none();
    let declared = match problem.declared_relation() {
        Some(rel) => Some(check_order(problem, rel, cap)?),
        None => None,
    };
    let ordered = declared.as_ref().is_some_and(|r| r.strictly_orders);
    let iterated = monotone || declared.as_ref().is_some_and(|r| r.monotonically_orders);
    Ok(Classification {
        positive: is_positive(problem.definition()),
        monotone,
        monotone_witness,
        declared,
        ordered,
        iterated,
        uncertified: !iterated,
    })
}

/// Extends a respecting trace to a terminal one, one ≺-minimal applicable atom per step.
pub fn extend_to_terminal(problem: &Problem, trace: &InductionTrace, rel: &AtomRelation) -> Result<InductionTrace> {
    check_size(problem, rel)?;
    if let Some(v) = respects(problem, trace, rel) {
        return Err(Error::NotRespecting { atom: problem.name(v.atom), stage: v.stage, missing: problem.name(v.missing) });
    }
    if let Some(c) = rel.strict_cycle() {
        return Err(Error::CyclicOrder(problem.name(c[0])));
    }
    let mut t = trace.clone();
    loop {
        let app = applicable(problem, t.last());
        let Some(next) = app.iter().find(|&a| app.is_disjoint(&rel.strict_below(a))) else {
            return Ok(t);
        };
        t.push_step(problem, &AtomSet::from_indices(problem.len(), [next]))?;
    }
}
