//! Safe derivability, strict underivability, the safely defined structure and fixpoints.
//!
//! Queries about a single atom A explore only the cone of A: the closure of
//! A's support under the support relation, minus atoms already present. The
//! projection of a natural induction onto a support-closed set is again a
//! natural induction of that part, and every induction of the part lifts back,
//! so exploring the cone is exact.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ground::Ground;
use crate::induction::{derives, gamma, random_induction, InductionTrace, Policy};
use crate::model::AtomSet;
use crate::problem::Problem;

/// Limits for the exponential searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Distinct states visited by one reachability search.
    pub max_states: usize,
    /// Applicable atoms in one state; successors number 2^k − 1.
    pub max_branching: usize,
    /// Search nodes for fixpoint enumeration.
    pub max_fixpoint_nodes: usize,
    /// Support size for exhaustive order checks.
    pub max_support: usize,
}

pub const DEFAULT_MAX_STATES: usize = 1 << 18;

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_states: DEFAULT_MAX_STATES,
            max_branching: 20,
            max_fixpoint_nodes: 1 << 20,
            max_support: crate::order::DEFAULT_SUPPORT_CAP,
        }
    }
}

/// All structures reachable from `start` by natural-induction steps.
#[derive(Debug, Clone)]
pub struct ReachabilityIndex {
    pub start: AtomSet,
    pub visited: BTreeSet<AtomSet>,
}

impl ReachabilityIndex {
    pub fn contains(&self, set: &AtomSet) -> bool {
        self.visited.contains(set)
    }

    pub fn len(&self) -> usize {
        self.visited.len()
    }

    pub fn is_empty(&self) -> bool {
        self.visited.is_empty()
    }
}

fn is_dead(problem: &Problem, atom: usize) -> bool {
    problem.grounding().formula(atom) == &Ground::False
}

/// Atoms that can still change and may influence `atom`.
fn cone(problem: &Problem, start: &AtomSet, atom: usize) -> Vec<usize> {
    let g = problem.grounding();
    let mut seen = AtomSet::empty(problem.len());
    let mut stack: Vec<usize> = g.support(atom).iter().map(|&b| b as usize).collect();
    for &b in &stack {
        seen.insert(b);
    }
    let mut out = Vec::new();
    while let Some(a) = stack.pop() {
        if start.contains(a) || is_dead(problem, a) {
            continue;
        }
        out.push(a);
        for &b in g.support(a) {
            if seen.insert(b as usize) {
                stack.push(b as usize);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Depth-first exploration over the given atoms. Returns false if `visit` aborted.
fn explore(
    problem: &Problem,
    start: &AtomSet,
    atoms: &[usize],
    budget: &Budget,
    mut visit: impl FnMut(&AtomSet) -> bool,
    mut visited: Option<&mut BTreeSet<AtomSet>>,
) -> Result<bool> {
    let mut own = BTreeSet::new();
    let seen = match visited.as_mut() {
        Some(v) => v,
        None => &mut own,
    };
    seen.insert(start.clone());
    if !visit(start) {
        return Ok(false);
    }
    let mut stack = alloc::vec![start.clone()];
    while let Some(s) = stack.pop() {
        let app: Vec<usize> = atoms.iter().copied().filter(|&a| !s.contains(a) && derives(problem, &s, a)).collect();
        if app.len() > budget.max_branching {
            return Err(Error::BranchingCap { found: app.len(), cap: budget.max_branching });
        }
        for mask in 1u64..(1u64 << app.len()) {
            let mut t = s.clone();
            for (i, &a) in app.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    t.insert(a);
                }
            }
            if seen.contains(&t) {
                continue;
            }
            if seen.len() >= budget.max_states {
                return Err(Error::StateBudget(budget.max_states));
            }
            if !visit(&t) {
                return Ok(false);
            }
            seen.insert(t.clone());
            stack.push(t);
        }
    }
    Ok(true)
}

/// Exhaustive reachable-state closure over the whole universe.
pub fn reachable(problem: &Problem, start: &AtomSet, budget: &Budget) -> Result<ReachabilityIndex> {
    let atoms: Vec<usize> = (0..problem.len()).filter(|&a| !start.contains(a) && !is_dead(problem, a)).collect();
    let mut visited = BTreeSet::new();
    explore(problem, start, &atoms, budget, |_| true, Some(&mut visited))?;
    Ok(ReachabilityIndex { start: start.clone(), visited })
}

// Kleene value of `atom` over all supersets of `start`.
fn superset_value(problem: &Problem, start: &AtomSet, atom: usize) -> Option<bool> {
    problem.grounding().formula(atom).eval3(&|b| {
        if start.contains(b as usize) {
            Some(true)
        } else if is_dead(problem, b as usize) {
            Some(false)
        } else {
            None
        }
    })
}

/// 𝔄 ⊢ A and every structure reachable from 𝔄 derives A.
pub fn safely_derivable(problem: &Problem, start: &AtomSet, atom: usize, budget: &Budget) -> Result<bool> {
    if !derives(problem, start, atom) {
        return Ok(false);
    }
    if superset_value(problem, start, atom) == Some(true) {
        return Ok(true);
    }
    let atoms = cone(problem, start, atom);
    explore(problem, start, &atoms, budget, |s| derives(problem, s, atom), None)
}

/// No structure reachable from 𝔄 derives A.
pub fn strictly_underivable(problem: &Problem, start: &AtomSet, atom: usize, budget: &Budget) -> Result<bool> {
    if derives(problem, start, atom) {
        return Ok(false);
    }
    if superset_value(problem, start, atom) == Some(false) {
        return Ok(true);
    }
    let atoms = cone(problem, start, atom);
    explore(problem, start, &atoms, budget, |s| !derives(problem, s, atom), None)
}

/// Safe(𝔄).
pub fn safe_set(problem: &Problem, start: &AtomSet, budget: &Budget) -> Result<AtomSet> {
    let mut out = problem.empty_set();
    for a in 0..problem.len() {
        if safely_derivable(problem, start, a, budget)? {
            out.insert(a);
        }
    }
    Ok(out)
}

/// Safe(𝔄) \ 𝔄.
pub fn safe_new(problem: &Problem, start: &AtomSet, budget: &Budget) -> Result<AtomSet> {
    let mut out = problem.empty_set();
    for a in 0..problem.len() {
        if !start.contains(a) && safely_derivable(problem, start, a, budget)? {
            out.insert(a);
        }
    }
    Ok(out)
}

/// Underivable*(𝔄).
pub fn underivable_set(problem: &Problem, start: &AtomSet, budget: &Budget) -> Result<AtomSet> {
    let mut out = problem.empty_set();
    for a in 0..problem.len() {
        if strictly_underivable(problem, start, a, budget)? {
            out.insert(a);
        }
    }
    Ok(out)
}

/// Greedy safe induction 𝔄_{i+1} = 𝔄_i ∪ Safe(𝔄_i) until nothing new is safe.
pub fn safely_defined_structure(problem: &Problem, budget: &Budget) -> Result<(AtomSet, InductionTrace)> {
    let mut trace = InductionTrace::empty(problem);
    loop {
        let new = safe_new(problem, trace.last(), budget)?;
        if new.is_empty() {
            return Ok((trace.last().clone(), trace));
        }
        trace.push_step(problem, &new)?;
    }
}

/// Each step adds a random non-empty subset of Safe(𝔄_i) \ 𝔄_i.
pub fn random_safe_induction(problem: &Problem, seed: u64, budget: &Budget) -> Result<InductionTrace> {
    random_induction(problem, seed, Policy::SafeOnly(*budget))
}

/// First (stage, atom) whose derivation was not safe, if any.
pub fn first_unsafe_step(problem: &Problem, trace: &InductionTrace, budget: &Budget) -> Result<Option<(usize, usize)>> {
    for i in 0..trace.steps() {
        for a in trace.derived_at(i).iter() {
            if !safely_derivable(problem, &trace.stages()[i], a, budget)? {
                return Ok(Some((i, a)));
            }
        }
    }
    Ok(None)
}

/// Safe(limit) ⊆ limit.
pub fn is_safe_terminal(problem: &Problem, trace: &InductionTrace, budget: &Budget) -> Result<bool> {
    Ok(safe_new(problem, trace.last(), budget)?.is_empty())
}

struct FixpointSearch<'a> {
    problem: &'a Problem,
    open: Vec<usize>,
    nodes: usize,
    max_nodes: usize,
    stop_after: usize,
    found: Vec<AtomSet>,
}

impl FixpointSearch<'_> {
    fn propagate(&self, assign: &mut [Option<bool>]) -> bool {
        loop {
            let mut changed = false;
            for &a in &self.open {
                let v = self.problem.grounding().formula(a).eval3(&|b| assign[b as usize]);
                match (assign[a], v) {
                    (None, Some(x)) => {
                        assign[a] = Some(x);
                        changed = true;
                    }
                    (Some(x), Some(y)) if x != y => return false,
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn run(&mut self, mut assign: Vec<Option<bool>>) -> Result<()> {
        if self.found.len() >= self.stop_after {
            return Ok(());
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::FixpointBudget(self.max_nodes));
        }
        if !self.propagate(&mut assign) {
            return Ok(());
        }
        match self.open.iter().copied().find(|&a| assign[a].is_none()) {
            None => {
                let set = AtomSet::from_indices(assign.len(), (0..assign.len()).filter(|&a| assign[a] == Some(true)));
                if gamma(self.problem, &set) == set {
                    self.found.push(set);
                }
                Ok(())
            }
            Some(a) => {
                for v in [false, true] {
                    let mut next = assign.clone();
                    next[a] = Some(v);
                    self.run(next)?;
                }
                Ok(())
            }
        }
    }
}

/// Fixpoints of Γ containing no atom of `forbidden`, at most `stop_after` of them.
fn fixpoints_with(
    problem: &Problem,
    forbidden: Option<&AtomSet>,
    stop_after: usize,
    budget: &Budget,
) -> Result<Vec<AtomSet>> {
    let n = problem.len();
    let mut assign = alloc::vec![None; n];
    let mut open = Vec::new();
    for (a, slot) in assign.iter_mut().enumerate() {
        match problem.grounding().formula(a).constant() {
            Some(v) => *slot = Some(v),
            None => open.push(a),
        }
        if forbidden.is_some_and(|f| f.contains(a)) {
            if *slot == Some(true) {
                return Ok(Vec::new());
            }
            *slot = Some(false);
        }
    }
    let mut s = FixpointSearch { problem, open, nodes: 0, max_nodes: budget.max_fixpoint_nodes, stop_after, found: Vec::new() };
    s.run(assign)?;
    let mut found = s.found;
    found.sort_by(|a, b| a.canonical_cmp(b));
    Ok(found)
}

/// Every 𝔄 with Γ(𝔄) = 𝔄, smallest first.
pub fn all_fixpoints(problem: &Problem, budget: &Budget) -> Result<Vec<AtomSet>> {
    fixpoints_with(problem, None, usize::MAX, budget)
}

/// The fixpoint contained in all others, if there is one.
pub fn least_fixpoint(fixpoints: &[AtomSet]) -> Option<&AtomSet> {
    fixpoints.iter().find(|f| fixpoints.iter().all(|g| f.is_subset(g)))
}

/// Fixpoints with no strictly smaller fixpoint.
pub fn minimal_fixpoints(fixpoints: &[AtomSet]) -> Vec<&AtomSet> {
    fixpoints.iter().filter(|f| !fixpoints.iter().any(|g| g != *f && g.is_subset(f))).collect()
}

/// `set` is a fixpoint and no other fixpoint lies strictly below it.
pub fn is_minimal_fixpoint(problem: &Problem, set: &AtomSet, budget: &Budget) -> Result<bool> {
    if gamma(problem, set) != *set {
        return Ok(false);
    }
    let below = fixpoints_with(problem, Some(&set.complement()), 2, budget)?;
    Ok(below.iter().all(|f| f == set))
}

/// `set` is the only fixpoint.
pub fn is_unique_fixpoint(problem: &Problem, set: &AtomSet, budget: &Budget) -> Result<bool> {
    if gamma(problem, set) != *set {
        return Ok(false);
    }
    let all = fixpoints_with(problem, None, 2, budget)?;
    Ok(all.len() == 1)
}

#[derive(Debug, Clone)]
pub struct SafetyReport {
    pub safely_defined: AtomSet,
    /// The greedy safe-terminal induction that produced `safely_defined`.
    pub trace: InductionTrace,
    pub defined_true: AtomSet,
    /// Strictly underivable from the safely defined structure.
    pub defined_false: AtomSet,
    pub undecided: AtomSet,
    pub saturated: bool,
    pub is_fixpoint: bool,
    pub minimal_fixpoint: bool,
    pub unique_fixpoint: bool,
    /// Atoms whose deriving rules all became false later while another rule still derives them.
    pub dubious: Vec<usize>,
}

impl SafetyReport {
    pub fn well_defined(&self) -> bool {
        self.undecided.is_empty()
    }
}

pub fn report(problem: &Problem, budget: &Budget) -> Result<SafetyReport> {
    let (limit, trace) = safely_defined_structure(problem, budget)?;
    let mut defined_false = problem.empty_set();
    for a in 0..problem.len() {
        if !limit.contains(a) && strictly_underivable(problem, &limit, a, budget)? {
            defined_false.insert(a);
        }
    }
    let undecided = limit.union(&defined_false).complement();
    let g = gamma(problem, &limit);
    let saturated = g.is_subset(&limit);
    let is_fixpoint = g == limit;
    let minimal_fixpoint = is_fixpoint && is_minimal_fixpoint(problem, &limit, budget)?;
    let unique_fixpoint = is_fixpoint && is_unique_fixpoint(problem, &limit, budget)?;
    let dubious = dubious_atoms(problem, &trace);
    Ok(SafetyReport {
        defined_true: limit.clone(),
        safely_defined: limit,
        trace,
        defined_false,
        undecided,
        saturated,
        is_fixpoint,
        minimal_fixpoint,
        unique_fixpoint,
        dubious,
    })
}

/// Informational only: the rules that fired for A are all false at the limit,
/// yet some other rule derives A there.
pub fn dubious_atoms(problem: &Problem, trace: &InductionTrace) -> Vec<usize> {
    let limit = trace.last();
    let mut out = Vec::new();
    for a in limit.iter() {
        let Some(rank) = trace.rank(a) else { continue };
        if rank == 0 {
            continue;
        }
        let stage = &trace.stages()[rank - 1];
        let bodies = problem.grounding().rule_bodies(a);
        let fired: Vec<&Ground> = bodies.iter().filter(|(_, g)| g.eval(stage)).map(|(_, g)| g).collect();
        if !fired.is_empty() && fired.iter().all(|g| !g.eval(limit)) && derives(problem, limit, a) {
            out.push(a);
        }
    }
    out
}
