//! The Γ operator, derivability, saturation and natural inductions.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{AtomRelation, AtomSet};
use crate::problem::Problem;
use crate::safety::{self, Budget};

/// 𝔄 ⊢ A.
pub fn derives(problem: &Problem, set: &AtomSet, atom: usize) -> bool {
    problem.grounding().derives(set, atom)
}

/// Γ(𝔄): every derivable atom.
pub fn gamma(problem: &Problem, set: &AtomSet) -> AtomSet {
    let mut out = problem.empty_set();
    for a in 0..problem.len() {
        if derives(problem, set, a) {
            out.insert(a);
        }
    }
    out
}

/// Γ(𝔄) \ 𝔄.
pub fn applicable(problem: &Problem, set: &AtomSet) -> AtomSet {
    let mut out = problem.empty_set();
    for a in 0..problem.len() {
        if !set.contains(a) && derives(problem, set, a) {
            out.insert(a);
        }
    }
    out
}

/// Every derivable atom of `scope` is already in `set`.
pub fn is_saturated_on(problem: &Problem, set: &AtomSet, scope: &AtomSet) -> bool {
    scope.iter().all(|a| set.contains(a) || !derives(problem, set, a))
}

pub fn is_saturated(problem: &Problem, set: &AtomSet) -> bool {
    (0..problem.len()).all(|a| set.contains(a) || !derives(problem, set, a))
}

/// The sequence 𝔄₀ ⊆ 𝔄₁ ⊆ … with the stage at which each atom first appears.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductionTrace {
    stages: Vec<AtomSet>,
    rank: Vec<Option<usize>>,
}

impl InductionTrace {
    /// A trace with the single stage `start`; its members get rank 0.
    pub fn new(start: AtomSet) -> InductionTrace {
        let mut rank = alloc::vec![None; start.universe_len()];
        for a in start.iter() {
            rank[a] = Some(0);
        }
        InductionTrace { stages: alloc::vec![start], rank }
    }

    pub fn empty(problem: &Problem) -> InductionTrace {
        InductionTrace::new(problem.empty_set())
    }

    pub fn stages(&self) -> &[AtomSet] {
        &self.stages
    }

    pub fn start(&self) -> &AtomSet {
        &self.stages[0]
    }

    pub fn last(&self) -> &AtomSet {
        self.stages.last().expect("a trace has at least one stage")
    }

    /// Number of derivation steps.
    pub fn steps(&self) -> usize {
        self.stages.len() - 1
    }

    /// Index of the first stage containing `atom`.
    pub fn rank(&self, atom: usize) -> Option<usize> {
        self.rank.get(atom).copied().flatten()
    }

    /// Atoms derived at stage i, i.e. 𝔄_{i+1} \ 𝔄_i.
    pub fn derived_at(&self, i: usize) -> AtomSet {
        self.stages[i + 1].difference(&self.stages[i])
    }

    pub fn is_terminal(&self, problem: &Problem) -> bool {
        is_saturated(problem, self.last())
    }

    fn push(&mut self, added: &AtomSet) {
        let next = self.last().union(added);
        let stage = self.stages.len();
        for a in added.iter() {
            self.rank[a] = Some(stage);
        }
        self.stages.push(next);
    }

    /// Extends the trace by `chosen`; every chosen atom must be new and derivable.
    pub fn push_step(&mut self, problem: &Problem, chosen: &AtomSet) -> Result<()> {
        if chosen.is_empty() {
            return Err(Error::EmptyStep);
        }
        let last = self.last();
        for a in chosen.iter() {
            if last.contains(a) {
                return Err(Error::AlreadyDerived(problem.name(a)));
            }
            if !derives(problem, last, a) {
                return Err(Error::NotDerivable(problem.name(a)));
            }
        }
        self.push(chosen);
        Ok(())
    }

    /// Checks that stages strictly increase and every new atom was derivable.
    pub fn validate(&self, problem: &Problem) -> Result<()> {
        for i in 0..self.steps() {
            if !self.stages[i].is_subset(&self.stages[i + 1]) {
                return Err(Error::InvalidTrace(i));
            }
            let new = self.derived_at(i);
            if new.is_empty() {
                return Err(Error::EmptyStep);
            }
            for a in new.iter() {
                if !derives(problem, &self.stages[i], a) {
                    return Err(Error::NotDerivable(problem.name(a)));
                }
            }
        }
        Ok(())
    }
}

/// Returns the trace extended by one step.
pub fn step(problem: &Problem, trace: &InductionTrace, chosen: &AtomSet) -> Result<InductionTrace> {
    let mut t = trace.clone();
    t.push_step(problem, chosen)?;
    Ok(t)
}

/// The inflationary construction 𝔄_{i+1} = 𝔄_i ∪ Γ(𝔄_i) from ∅.
pub fn eager_induction(problem: &Problem, max_stages: usize) -> Result<InductionTrace> {
    eager_from(problem, problem.empty_set(), max_stages)
}

pub fn eager_from(problem: &Problem, start: AtomSet, max_stages: usize) -> Result<InductionTrace> {
    let mut t = InductionTrace::new(start);
    loop {
        let new = applicable(problem, t.last());
        if new.is_empty() {
            return Ok(t);
        }
        if t.steps() >= max_stages {
            return Err(Error::StageLimit(max_stages));
        }
        t.push(&new);
    }
}

/// An atom derived at `stage` while some derivable atom strictly below it was missing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RespectViolation {
    pub atom: usize,
    pub stage: usize,
    pub missing: usize,
}

/// First violation of "𝔄_i is saturated on {B | B ≺ A} for each A derived at i".
pub fn respects(problem: &Problem, trace: &InductionTrace, rel: &AtomRelation) -> Option<RespectViolation> {
    for i in 0..trace.steps() {
        let stage = &trace.stages[i];
        for a in trace.derived_at(i).iter() {
            for b in rel.strict_below(a).iter() {
                if !stage.contains(b) && derives(problem, stage, b) {
                    return Some(RespectViolation { atom: a, stage: i, missing: b });
                }
            }
        }
    }
    None
}

/// First pair A ≺ B of derived atoms with rank(A) ≥ rank(B).
pub fn follows(trace: &InductionTrace, rel: &AtomRelation) -> Option<(usize, usize)> {
    let derived: Vec<usize> = (0..trace.rank.len()).filter(|&a| trace.rank(a).is_some()).collect();
    for &b in &derived {
        for a in rel.strict_below(b).iter() {
            if let (Some(ra), Some(rb)) = (trace.rank(a), trace.rank(b)) {
                if ra >= rb {
                    return Some((a, b));
                }
            }
        }
    }
    None
}

/// Applicable atoms whose strict predecessors are saturated.
pub fn respecting_candidates(problem: &Problem, set: &AtomSet, rel: &AtomRelation) -> AtomSet {
    let app = applicable(problem, set);
    let mut out = problem.empty_set();
    for a in app.iter() {
        if app.is_disjoint(&rel.strict_below(a)) {
            out.insert(a);
        }
    }
    out
}

/// How [`random_induction`] chooses each step.
#[derive(Debug, Clone, Copy)]
pub enum Policy<'a> {
    /// A uniformly random non-empty subset of Γ(𝔄)\𝔄.
    AnySubset,
    /// One uniformly random applicable atom.
    Singleton,
    /// A random non-empty subset of the applicable atoms allowed by the relation.
    Respect(&'a AtomRelation),
    /// A random non-empty subset of Safe(𝔄)\𝔄.
    SafeOnly(Budget),
}

impl Policy<'_> {
    pub fn name(&self) -> &'static str {
        match self {
            Policy::AnySubset => "any-subset",
            Policy::Singleton => "singleton",
            Policy::Respect(_) => "respect",
            Policy::SafeOnly(_) => "safe-only",
        }
    }
}

/// Uniform over non-empty subsets of `from`.
pub fn random_nonempty_subset<R: Rng>(rng: &mut R, from: &AtomSet) -> AtomSet {
    let items = from.to_vec();
    assert!(!items.is_empty());
    loop {
        let mut s = AtomSet::empty(from.universe_len());
        for &a in &items {
            if rng.gen_bool(0.5) {
                s.insert(a);
            }
        }
        if !s.is_empty() {
            return s;
        }
    }
}

pub fn random_induction(problem: &Problem, seed: u64, policy: Policy<'_>) -> Result<InductionTrace> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_induction_with(problem, InductionTrace::empty(problem), &mut rng, policy)
}

/// Continues `trace` until it is terminal (safe-terminal for [`Policy::SafeOnly`]).
pub fn random_induction_with<R: Rng>(
    problem: &Problem,
    mut trace: InductionTrace,
    rng: &mut R,
    policy: Policy<'_>,
) -> Result<InductionTrace> {
    loop {
        let set = trace.last().clone();
        let candidates = match policy {
            Policy::SafeOnly(budget) => safety::safe_new(problem, &set, &budget)?,
            Policy::AnySubset | Policy::Singleton => applicable(problem, &set),
            Policy::Respect(rel) => {
                let c = respecting_candidates(problem, &set, rel);
                if c.is_empty() && !is_saturated(problem, &set) {
                    return Err(Error::NoProgress(policy.name()));
                }
                c
            }
        };
        if candidates.is_empty() {
            return Ok(trace);
        }
        let chosen = match policy {
            Policy::Singleton => {
                let items = candidates.to_vec();
                AtomSet::from_indices(set.universe_len(), [items[rng.gen_range(0..items.len())]])
            }
            _ => random_nonempty_subset(rng, &candidates),
        };
        trace.push(&chosen);
    }
}

/// First structure on which the two problems' Γ differ, if any.
///
/// Both problems must share a universe. Each atom is compared over the
/// valuations of the union of its two supports.
pub fn gamma_equivalent(p: &Problem, q: &Problem, max_support: usize) -> Result<Option<AtomSet>> {
    if p.universe() != q.universe() {
        return Err(Error::DomainMismatch);
    }
    for a in 0..p.len() {
        let mut supp: Vec<usize> = p.grounding().support(a).iter().map(|&x| x as usize).collect();
        supp.extend(q.grounding().support(a).iter().map(|&x| x as usize));
        supp.sort_unstable();
        supp.dedup();
        let cap = max_support.min(crate::order::MAX_SUPPORT_CAP);
        if supp.len() > cap {
            return Err(Error::SupportCap { atom: p.name(a), size: supp.len(), cap });
        }
        for bits in 0u64..(1u64 << supp.len()) {
            let set = AtomSet::from_indices(p.len(), supp.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &x)| x));
            if derives(p, &set, a) != derives(q, &set, a) {
                return Ok(Some(set));
            }
        }
    }
    Ok(None)
}
