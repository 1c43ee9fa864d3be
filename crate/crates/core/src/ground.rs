//! Partial evaluation of rule bodies against the context.
//!
//! For every defined atom A and every rule for A's predicate, the body is
//! instantiated at A's arguments, quantifiers are expanded over the domain and
//! every parameter symbol is replaced by its value in O. What remains is a
//! propositional formula over defined atoms whose truth in any 𝔄 equals the
//! truth of the body in O∘𝔄.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{AtomSet, Elem, FiniteStructure, Interpretation, SymbolKind, Universe};
use crate::syntax::{Definition, Formula, Term};

/// A ground body: a propositional formula over atom indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ground {
    True,
    False,
    Atom(u32),
    Not(Box<Ground>),
    And(Vec<Ground>),
    Or(Vec<Ground>),
}

impl Ground {
    fn not(g: Ground) -> Ground {
        match g {
            Ground::True => Ground::False,
            Ground::False => Ground::True,
            Ground::Not(inner) => *inner,
            other => Ground::Not(Box::new(other)),
        }
    }

    fn and(parts: Vec<Ground>) -> Ground {
        let mut out = Vec::with_capacity(parts.len());
        for p in parts {
            match p {
                Ground::True => {}
                Ground::False => return Ground::False,
                Ground::And(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Ground::True,
            1 => out.pop().unwrap_or(Ground::True),
            _ => Ground::And(out),
        }
    }

    fn or(parts: Vec<Ground>) -> Ground {
        let mut out = Vec::with_capacity(parts.len());
        for p in parts {
            match p {
                Ground::False => {}
                Ground::True => return Ground::True,
                Ground::Or(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Ground::False,
            1 => out.pop().unwrap_or(Ground::False),
            _ => Ground::Or(out),
        }
    }

    pub fn constant(&self) -> Option<bool> {
        match self {
            Ground::True => Some(true),
            Ground::False => Some(false),
            _ => None,
        }
    }

    pub fn eval(&self, set: &AtomSet) -> bool {
        self.eval_with(&|a| set.contains(a as usize))
    }

    pub fn eval_with(&self, val: &impl Fn(u32) -> bool) -> bool {
        match self {
            Ground::True => true,
            Ground::False => false,
            Ground::Atom(a) => val(*a),
            Ground::Not(g) => !g.eval_with(val),
            Ground::And(gs) => gs.iter().all(|g| g.eval_with(val)),
            Ground::Or(gs) => gs.iter().any(|g| g.eval_with(val)),
        }
    }

    /// Strong Kleene evaluation; `None` is unknown.
    pub fn eval3(&self, val: &impl Fn(u32) -> Option<bool>) -> Option<bool> {
        match self {
            Ground::True => Some(true),
            Ground::False => Some(false),
            Ground::Atom(a) => val(*a),
            Ground::Not(g) => g.eval3(val).map(|b| !b),
            Ground::And(gs) => {
                let mut unknown = false;
                for g in gs {
                    match g.eval3(val) {
                        Some(false) => return Some(false),
                        None => unknown = true,
                        Some(true) => {}
                    }
                }
                if unknown {
                    None
                } else {
                    Some(true)
                }
            }
            Ground::Or(gs) => {
                let mut unknown = false;
                for g in gs {
                    match g.eval3(val) {
                        Some(true) => return Some(true),
                        None => unknown = true,
                        Some(false) => {}
                    }
                }
                if unknown {
                    None
                } else {
                    Some(false)
                }
            }
        }
    }

    pub fn collect_atoms(&self, out: &mut BTreeSet<u32>) {
        match self {
            Ground::True | Ground::False => {}
            Ground::Atom(a) => {
                out.insert(*a);
            }
            Ground::Not(g) => g.collect_atoms(out),
            Ground::And(gs) | Ground::Or(gs) => gs.iter().for_each(|g| g.collect_atoms(out)),
        }
    }

    /// No atom occurs under a negation.
    pub fn is_positive(&self) -> bool {
        match self {
            Ground::True | Ground::False | Ground::Atom(_) => true,
            Ground::Not(g) => g.is_negative(),
            Ground::And(gs) | Ground::Or(gs) => gs.iter().all(Ground::is_positive),
        }
    }

    fn is_negative(&self) -> bool {
        match self {
            Ground::True | Ground::False => true,
            Ground::Atom(_) => false,
            Ground::Not(g) => g.is_positive(),
            Ground::And(gs) | Ground::Or(gs) => gs.iter().all(Ground::is_negative),
        }
    }
}

enum Table {
    Dense(Vec<u64>),
    Sparse(BTreeSet<Vec<Elem>>),
}

const DENSE_LIMIT: usize = 1 << 24;

enum CTerm {
    Slot(usize),
    Const(Elem),
    Fun(usize, Vec<CTerm>),
}

enum CFormula {
    True,
    False,
    Param(usize, Vec<CTerm>),
    Def(usize, Vec<CTerm>),
    Eq(CTerm, CTerm),
    Not(Box<CFormula>),
    And(Box<CFormula>, Box<CFormula>),
    Or(Box<CFormula>, Box<CFormula>),
    Quant { exists: bool, slot: usize, body: Box<CFormula> },
}

struct Compiler<'a> {
    context: &'a FiniteStructure,
    universe: &'a Universe,
    n: usize,
    pred_ids: BTreeMap<String, usize>,
    preds: Vec<Table>,
    fun_ids: BTreeMap<String, usize>,
    funs: Vec<&'a [Elem]>,
    max_slots: usize,
}

impl<'a> Compiler<'a> {
    fn term(&mut self, t: &Term, scope: &[String]) -> Result<CTerm> {
        match t {
            Term::Var(v) => {
                if let Some(i) = scope.iter().rposition(|s| s == v) {
                    Ok(CTerm::Slot(i))
                } else {
                    self.context.object(v).map(CTerm::Const).ok_or_else(|| Error::UnassignedVariable(v.clone()))
                }
            }
            Term::Apply(f, args) if args.is_empty() => {
                self.context.object(f).map(CTerm::Const).ok_or_else(|| Error::UnknownSymbol(f.clone()))
            }
            Term::Apply(f, args) => {
                let sym = self.context.symbol(f).ok_or_else(|| Error::UnknownSymbol(f.clone()))?;
                if sym.kind != SymbolKind::Function || sym.arity != args.len() {
                    return Err(Error::UnknownSymbol(f.clone()));
                }
                let id = match self.fun_ids.get(f) {
                    Some(&id) => id,
                    None => {
                        let table = match self.context.interpretation(f) {
                            Some(Interpretation::Function(t)) => t.as_slice(),
                            _ => return Err(Error::UnknownSymbol(f.clone())),
                        };
                        self.funs.push(table);
                        self.fun_ids.insert(f.clone(), self.funs.len() - 1);
                        self.funs.len() - 1
                    }
                };
                let cargs = args.iter().map(|a| self.term(a, scope)).collect::<Result<Vec<_>>>()?;
                Ok(CTerm::Fun(id, cargs))
            }
        }
    }

    fn param_table(&mut self, p: &str, arity: usize) -> Result<usize> {
        if let Some(&id) = self.pred_ids.get(p) {
            return Ok(id);
        }
        let tuples = match (self.context.symbol(p), self.context.interpretation(p)) {
            (Some(sym), Some(Interpretation::Predicate(t))) if sym.arity == arity => t,
            _ => return Err(Error::UnknownSymbol(p.into())),
        };
        let size = self.n.checked_pow(arity as u32).unwrap_or(usize::MAX);
        let table = if size <= DENSE_LIMIT {
            let mut bits = alloc::vec![0u64; size.div_ceil(64).max(1)];
            for t in tuples {
                let i = t.iter().fold(0usize, |acc, &a| acc * self.n + a as usize);
                bits[i / 64] |= 1 << (i % 64);
            }
            Table::Dense(bits)
        } else {
            Table::Sparse(tuples.clone())
        };
        self.preds.push(table);
        self.pred_ids.insert(p.into(), self.preds.len() - 1);
        Ok(self.preds.len() - 1)
    }

    fn formula(&mut self, f: &Formula, scope: &mut Vec<String>) -> Result<CFormula> {
        self.max_slots = self.max_slots.max(scope.len());
        Ok(match f {
            Formula::True => CFormula::True,
            Formula::False => CFormula::False,
            Formula::Atom(p, args) => {
                let cargs = args.iter().map(|a| self.term(a, scope)).collect::<Result<Vec<_>>>()?;
                match self.universe.predicate_index(p) {
                    Some(i) if self.universe.predicates()[i].arity == args.len() => CFormula::Def(i, cargs),
                    Some(_) => return Err(Error::UnknownSymbol(p.clone())),
                    None => CFormula::Param(self.param_table(p, args.len())?, cargs),
                }
            }
            Formula::Eq(a, b) => CFormula::Eq(self.term(a, scope)?, self.term(b, scope)?),
            Formula::Not(a) => CFormula::Not(Box::new(self.formula(a, scope)?)),
            Formula::And(a, b) => CFormula::And(Box::new(self.formula(a, scope)?), Box::new(self.formula(b, scope)?)),
            Formula::Or(a, b) => CFormula::Or(Box::new(self.formula(a, scope)?), Box::new(self.formula(b, scope)?)),
            Formula::Implies(a, b) => CFormula::Or(
                Box::new(CFormula::Not(Box::new(self.formula(a, scope)?))),
                Box::new(self.formula(b, scope)?),
            ),
            Formula::Exists(v, a) | Formula::Forall(v, a) => {
                scope.push(v.clone());
                let slot = scope.len() - 1;
                self.max_slots = self.max_slots.max(scope.len());
                let body = self.formula(a, scope);
                scope.pop();
                CFormula::Quant { exists: matches!(f, Formula::Exists(..)), slot, body: Box::new(body?) }
            }
        })
    }
}

struct Instantiator<'a> {
    n: usize,
    universe: &'a Universe,
    preds: &'a [Table],
    funs: &'a [&'a [Elem]],
    env: Vec<Elem>,
    scratch: Vec<Elem>,
}

impl Instantiator<'_> {
    fn term(&self, t: &CTerm) -> Elem {
        match t {
            CTerm::Slot(i) => self.env[*i],
            CTerm::Const(e) => *e,
            CTerm::Fun(f, args) => {
                let i = args.iter().fold(0usize, |acc, a| acc * self.n + self.term(a) as usize);
                self.funs[*f][i]
            }
        }
    }

    fn ground(&mut self, f: &CFormula) -> Ground {
        match f {
            CFormula::True => Ground::True,
            CFormula::False => Ground::False,
            CFormula::Param(p, args) => {
                let holds = match &self.preds[*p] {
                    Table::Dense(bits) => {
                        let i = args.iter().fold(0usize, |acc, a| acc * self.n + self.term(a) as usize);
                        bits[i / 64] >> (i % 64) & 1 == 1
                    }
                    Table::Sparse(set) => {
                        let mut buf = core::mem::take(&mut self.scratch);
                        buf.clear();
                        buf.extend(args.iter().map(|a| self.term(a)));
                        let r = set.contains(&buf);
                        self.scratch = buf;
                        r
                    }
                };
                if holds {
                    Ground::True
                } else {
                    Ground::False
                }
            }
            CFormula::Def(p, args) => {
                let i = args.iter().fold(0usize, |acc, a| acc * self.n + self.term(a) as usize);
                Ground::Atom((self.universe.predicate_range(*p).start + i) as u32)
            }
            CFormula::Eq(a, b) => {
                if self.term(a) == self.term(b) {
                    Ground::True
                } else {
                    Ground::False
                }
            }
            CFormula::Not(a) => Ground::not(self.ground(a)),
            CFormula::And(a, b) => {
                let ga = self.ground(a);
                if ga == Ground::False {
                    return Ground::False;
                }
                Ground::and(alloc::vec![ga, self.ground(b)])
            }
            CFormula::Or(a, b) => {
                let ga = self.ground(a);
                if ga == Ground::True {
                    return Ground::True;
                }
                Ground::or(alloc::vec![ga, self.ground(b)])
            }
            CFormula::Quant { exists, slot, body } => {
                let saved = self.env[*slot];
                let mut parts = Vec::new();
                let mut decided = None;
                for d in 0..self.n as Elem {
                    self.env[*slot] = d;
                    let g = self.ground(body);
                    match (g.constant(), *exists) {
                        (Some(true), true) | (Some(false), false) => {
                            decided = Some(g);
                            break;
                        }
                        (Some(_), _) => {}
                        (None, _) => parts.push(g),
                    }
                }
                self.env[*slot] = saved;
                match decided {
                    Some(g) => g,
                    None if *exists => Ground::or(parts),
                    None => Ground::and(parts),
                }
            }
        }
    }
}

/// Ground bodies for every atom of the universe.
#[derive(Debug, Clone)]
pub struct Grounding {
    /// Per atom: (rule index, ground body) for rules whose body is not constantly false.
    rules: Vec<Vec<(usize, Ground)>>,
    combined: Vec<Ground>,
    support: Vec<Vec<u32>>,
}

impl Grounding {
    pub fn build(definition: &Definition, context: &FiniteStructure, universe: &Universe) -> Result<Grounding> {
        let n = context.domain().len();
        let mut c = Compiler {
            context,
            universe,
            n,
            pred_ids: BTreeMap::new(),
            preds: Vec::new(),
            fun_ids: BTreeMap::new(),
            funs: Vec::new(),
            max_slots: 0,
        };
        let mut compiled = Vec::with_capacity(definition.rules.len());
        for r in &definition.rules {
            let mut scope = r.head_vars.clone();
            let body = c.formula(&r.body, &mut scope)?;
            let pred = universe.predicate_index(&r.head).ok_or_else(|| Error::UnknownSymbol(r.head.clone()))?;
            compiled.push((pred, body));
        }
        let Compiler { preds, funs, max_slots, .. } = c;
        let mut inst = Instantiator {
            n,
            universe,
            preds: &preds,
            funs: &funs,
            env: alloc::vec![0; max_slots.max(1)],
            scratch: Vec::new(),
        };
        let mut rules = alloc::vec![Vec::new(); universe.len()];
        for (ri, (pred, body)) in compiled.iter().enumerate() {
            for atom in universe.predicate_range(*pred) {
                let args = universe.args_of(atom);
                inst.env[..args.len()].copy_from_slice(&args);
                let g = inst.ground(body);
                if g != Ground::False {
                    rules[atom].push((ri, g));
                }
            }
        }
        let combined: Vec<Ground> =
            rules.iter().map(|rs| Ground::or(rs.iter().map(|(_, g)| g.clone()).collect())).collect();
        let support = combined
            .iter()
            .map(|g| {
                let mut s = BTreeSet::new();
                g.collect_atoms(&mut s);
                s.into_iter().collect()
            })
            .collect();
        Ok(Grounding { rules, combined, support })
    }

    pub fn len(&self) -> usize {
        self.combined.len()
    }

    pub fn is_empty(&self) -> bool {
        self.combined.is_empty()
    }

    /// Disjunction of all ground rule bodies for the atom.
    pub fn formula(&self, atom: usize) -> &Ground {
        &self.combined[atom]
    }

    pub fn rule_bodies(&self, atom: usize) -> &[(usize, Ground)] {
        &self.rules[atom]
    }

    /// Atoms the derivability of `atom` depends on, ascending.
    pub fn support(&self, atom: usize) -> &[u32] {
        &self.support[atom]
    }

    pub fn derives(&self, set: &AtomSet, atom: usize) -> bool {
        self.combined[atom].eval(set)
    }

    /// Indices of rules whose body holds for `atom` in `set`.
    pub fn firing_rules(&self, set: &AtomSet, atom: usize) -> Vec<usize> {
        self.rules[atom].iter().filter(|(_, g)| g.eval(set)).map(|(r, _)| *r).collect()
    }
}
