//! A definition together with its context, universe and ground bodies.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ground::Grounding;
use crate::model::{AtomRelation, AtomSet, FiniteStructure, SymbolKind, Universe};
use crate::syntax::{well_formed, Definition};

/// Golden values attached to a problem file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Expectations {
    pub defined: Option<AtomSet>,
    pub underivable: Option<AtomSet>,
    pub undecided: Option<AtomSet>,
    /// `saturated`, `fixpoint`, `minimal`, `unique`.
    pub flags: BTreeMap<String, bool>,
}

impl Expectations {
    pub fn is_empty(&self) -> bool {
        self.defined.is_none() && self.underivable.is_none() && self.undecided.is_none() && self.flags.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct Problem {
    definition: Definition,
    context: FiniteStructure,
    universe: Universe,
    grounding: Grounding,
    declared: Option<AtomRelation>,
    expectations: Expectations,
}

impl Problem {
    /// Validates the definition against the context and grounds every rule.
    pub fn new(definition: Definition, context: FiniteStructure) -> Result<Problem> {
        let wf = well_formed(&definition);
        if let Some(d) = wf.errors().next() {
            return Err(Error::IllFormed(d.to_string()));
        }
        for p in &wf.defined {
            if context.symbol(&p.name).is_some() {
                return Err(Error::InvalidInterpretation {
                    symbol: p.name.clone(),
                    reason: "defined predicates take no extension in the context".into(),
                });
            }
        }
        for s in &wf.parameters {
            match context.symbol(&s.name) {
                Some(c) if c.kind == s.kind && c.arity == s.arity => {}
                Some(c) if s.kind == SymbolKind::Object && c.kind == SymbolKind::Object => {}
                _ => return Err(Error::UnknownSymbol(s.name.clone())),
            }
        }
        let defined: Vec<_> = wf.defined.into_iter().collect();
        let universe = Universe::new(&defined, context.domain());
        let grounding = Grounding::build(&definition, &context, &universe)?;
        Ok(Problem { definition, context, universe, grounding, declared: None, expectations: Expectations::default() })
    }

    pub fn with_relation(mut self, rel: AtomRelation) -> Result<Problem> {
        if rel.universe_len() != self.universe.len() {
            return Err(Error::RelationSize { expected: self.universe.len(), found: rel.universe_len() });
        }
        self.declared = Some(rel);
        Ok(self)
    }

    pub fn without_relation(mut self) -> Problem {
        self.declared = None;
        self
    }

    pub fn with_expectations(mut self, expectations: Expectations) -> Problem {
        self.expectations = expectations;
        self
    }

    pub fn definition(&self) -> &Definition {
        &self.definition
    }

    pub fn context(&self) -> &FiniteStructure {
        &self.context
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn grounding(&self) -> &Grounding {
        &self.grounding
    }

    pub fn declared_relation(&self) -> Option<&AtomRelation> {
        self.declared.as_ref()
    }

    pub fn expectations(&self) -> &Expectations {
        &self.expectations
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    pub fn empty_set(&self) -> AtomSet {
        AtomSet::empty(self.universe.len())
    }

    /// Resolves `P`, `P()` or `R(a,b)` to an atom index.
    pub fn atom(&self, text: &str) -> Option<usize> {
        let text = text.trim();
        match text.find('(') {
            None => self.universe.lookup(text, &[]),
            Some(open) => {
                let inner = text[open + 1..].strip_suffix(')')?;
                let args: Vec<&str> =
                    if inner.trim().is_empty() { Vec::new() } else { inner.split(',').map(str::trim).collect() };
                self.universe.lookup(text[..open].trim(), &args)
            }
        }
    }

    /// Builds a set from atom names; unknown names are an error.
    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> Result<AtomSet> {
        let mut s = self.empty_set();
        for n in names {
            let i = self.atom(n.as_ref()).ok_or_else(|| Error::AtomOutsideUniverse(n.as_ref().into()))?;
            s.insert(i);
        }
        Ok(s)
    }

    pub fn name(&self, atom: usize) -> String {
        self.universe.name(atom)
    }

    pub fn names(&self, set: &AtomSet) -> Vec<String> {
        self.universe.names(set)
    }
}
