//! Compiling DNF validity into a safely-defined-structure question.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::model::{Elem, FiniteStructure};
use crate::problem::Problem;
use crate::safety::{safely_defined_structure, Budget};
use crate::syntax::{Definition, Formula, Rule, Term};

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Disjunct {
    pub pos: BTreeSet<String>,
    pub neg: BTreeSet<String>,
}

impl Disjunct {
    pub fn new<S: AsRef<str>>(pos: &[S], neg: &[S]) -> Disjunct {
        Disjunct {
            pos: pos.iter().map(|s| s.as_ref().into()).collect(),
            neg: neg.iter().map(|s| s.as_ref().into()).collect(),
        }
    }
}

/// A disjunction of conjunctions of literals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DnfFormula {
    pub variables: Vec<String>,
    pub disjuncts: Vec<Disjunct>,
}

impl DnfFormula {
    pub fn new(variables: Vec<String>, disjuncts: Vec<Disjunct>) -> Result<DnfFormula> {
        if variables.is_empty() {
            return Err(Error::Dnf("no variables".into()));
        }
        if disjuncts.is_empty() {
            return Err(Error::Dnf("no disjuncts".into()));
        }
        let mut seen = BTreeSet::new();
        for v in &variables {
            if !seen.insert(v) {
                return Err(Error::Dnf(format!("variable `{v}` listed twice")));
            }
        }
        for d in &disjuncts {
            if d.pos.is_empty() && d.neg.is_empty() {
                return Err(Error::Dnf("empty disjunct".into()));
            }
            if let Some(l) = d.pos.iter().chain(&d.neg).find(|l| !seen.contains(l)) {
                return Err(Error::Dnf(format!("literal `{l}` is not a variable")));
            }
        }
        Ok(DnfFormula { variables, disjuncts })
    }

    /// Variables in order of first occurrence.
    pub fn from_disjuncts(disjuncts: Vec<Disjunct>) -> Result<DnfFormula> {
        let mut vars: Vec<String> = Vec::new();
        for d in &disjuncts {
            for l in d.pos.iter().chain(&d.neg) {
                if !vars.contains(l) {
                    vars.push(l.clone());
                }
            }
        }
        DnfFormula::new(vars, disjuncts)
    }

    pub fn eval(&self, truth: impl Fn(&str) -> bool) -> bool {
        self.disjuncts
            .iter()
            .any(|d| d.pos.iter().all(|p| truth(p)) && d.neg.iter().all(|p| !truth(p)))
    }

    /// Names `d1..dk` for the disjuncts, made distinct from every variable.
    pub fn disjunct_names(&self) -> Vec<String> {
        let mut prefix = String::from("d");
        loop {
            let names: Vec<String> = (1..=self.disjuncts.len()).map(|i| format!("{prefix}{i}")).collect();
            if names.iter().all(|n| !self.variables.contains(n)) {
                return names;
            }
            prefix.push('_');
        }
    }
}

impl fmt::Display for DnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.disjuncts.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            let lits: Vec<String> =
                d.pos.iter().cloned().chain(d.neg.iter().map(|n| format!("~{n}"))).collect();
            if lits.len() > 1 && self.disjuncts.len() > 1 {
                write!(f, "({})", lits.join(" & "))?;
            } else {
                f.write_str(&lits.join(" & "))?;
            }
        }
        Ok(())
    }
}

fn v(name: &str) -> Term {
    Term::var(name)
}

/// The two rules of the reduction, over parameters Prop/1, Dis/1, Pos/2, Neg/2.
pub fn reduction_definition() -> Definition {
    let val_body = Formula::exists(
        "d",
        Formula::conj([
            Formula::atom("Dis", alloc::vec![v("d")]),
            Formula::forall(
                "p",
                Formula::implies(Formula::atom("Pos", alloc::vec![v("d"), v("p")]), Formula::atom("T", alloc::vec![v("p")])),
            ),
            Formula::forall(
                "p",
                Formula::implies(
                    Formula::atom("Neg", alloc::vec![v("d"), v("p")]),
                    Formula::not(Formula::atom("T", alloc::vec![v("p")])),
                ),
            ),
        ]),
    );
    Definition::new(alloc::vec![
        Rule::new("Val", &[], val_body),
        Rule::new("T", &["p"], Formula::and(Formula::atom("Val", alloc::vec![]), Formula::atom("Prop", alloc::vec![v("p")]))),
    ])
}

/// Domain: the variables, then one element per disjunct.
pub fn dnf_context(dnf: &DnfFormula) -> Result<FiniteStructure> {
    let names = dnf.disjunct_names();
    let mut domain: Vec<String> = dnf.variables.clone();
    domain.extend(names.iter().cloned());
    let mut o = FiniteStructure::new(&domain)?;
    let nv = dnf.variables.len() as Elem;
    let var_index = |name: &str| dnf.variables.iter().position(|x| x == name).map(|i| i as Elem);
    o.set_predicate("Prop", 1, (0..nv).map(|i| alloc::vec![i]).collect())?;
    o.set_predicate("Dis", 1, (0..dnf.disjuncts.len() as Elem).map(|j| alloc::vec![nv + j]).collect())?;
    let mut pos = BTreeSet::new();
    let mut neg = BTreeSet::new();
    for (j, d) in dnf.disjuncts.iter().enumerate() {
        let dj = nv + j as Elem;
        for p in &d.pos {
            pos.insert(alloc::vec![dj, var_index(p).ok_or_else(|| Error::Dnf(p.clone()))?]);
        }
        for p in &d.neg {
            neg.insert(alloc::vec![dj, var_index(p).ok_or_else(|| Error::Dnf(p.clone()))?]);
        }
    }
    o.set_predicate("Pos", 2, pos)?;
    o.set_predicate("Neg", 2, neg)?;
    Ok(o)
}

pub fn dnf_to_problem(dnf: &DnfFormula) -> Result<Problem> {
    Problem::new(reduction_definition(), dnf_context(dnf)?)
}

/// Val ∈ safely defined structure.
pub fn dnf_validity_via_safety(dnf: &DnfFormula, budget: &Budget) -> Result<bool> {
    let p = dnf_to_problem(dnf)?;
    let (limit, _) = safely_defined_structure(&p, budget)?;
    let val = p.atom("Val").ok_or_else(|| Error::Dnf("missing Val".into()))?;
    Ok(limit.contains(val))
}

pub const ORACLE_MAX_VARIABLES: usize = 20;

/// Truth-table check over all 2^n valuations.
pub fn dnf_validity_oracle(dnf: &DnfFormula) -> Result<bool> {
    let n = dnf.variables.len();
    if n > ORACLE_MAX_VARIABLES {
        return Err(Error::Dnf(format!("{n} variables exceed the truth-table limit of {ORACLE_MAX_VARIABLES}")));
    }
    Ok((0u32..(1 << n)).all(|bits| {
        dnf.eval(|name| {
            let i = dnf.variables.iter().position(|x| x == name).unwrap_or(usize::MAX);
            i < 32 && bits >> i & 1 == 1
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn lit(p: &[&str], n: &[&str]) -> Disjunct {
        Disjunct::new(p, n)
    }

    #[test]
    fn encoding_of_excluded_middle() {
        let dnf = DnfFormula::from_disjuncts(vec![lit(&["p"], &[]), lit(&[], &["p"])]).unwrap();
        let o = dnf_context(&dnf).unwrap();
        assert_eq!(o.domain(), &["p", "d1", "d2"]);
        assert_eq!(o.holds("Pos", &[1, 0]), Some(true));
        assert_eq!(o.holds("Neg", &[2, 0]), Some(true));
        assert_eq!(o.holds("Pos", &[2, 0]), Some(false));
        let b = Budget::default();
        assert!(dnf_validity_via_safety(&dnf, &b).unwrap());
        assert!(dnf_validity_oracle(&dnf).unwrap());
        assert_eq!(dnf.to_string(), "p | ~p");
    }

    #[test]
    fn proof_cases() {
        let b = Budget::default();
        let p = DnfFormula::from_disjuncts(vec![lit(&["p"], &[])]).unwrap();
        assert!(!dnf_validity_via_safety(&p, &b).unwrap());
        assert_eq!(dnf_context(&p).unwrap().domain(), &["p", "d1"]);
        let pq = DnfFormula::from_disjuncts(vec![lit(&["p", "q"], &[]), lit(&[], &["p"])]).unwrap();
        assert!(!dnf_validity_via_safety(&pq, &b).unwrap());
        assert!(!dnf_validity_oracle(&pq).unwrap());
        let o = dnf_context(&pq).unwrap();
        assert_eq!(o.holds("Pos", &[2, 0]), Some(true));
        assert_eq!(o.holds("Pos", &[2, 1]), Some(true));
        assert_eq!(o.holds("Neg", &[3, 0]), Some(true));
        let taut = DnfFormula::from_disjuncts(vec![lit(&["p"], &["q"]), lit(&["q"], &[]), lit(&[], &["p"])]).unwrap();
        assert!(dnf_validity_oracle(&taut).unwrap());
        assert!(dnf_validity_via_safety(&taut, &b).unwrap());
    }

    #[test]
    fn fresh_disjunct_names() {
        let dnf = DnfFormula::from_disjuncts(vec![lit(&["d1"], &[])]).unwrap();
        assert_eq!(dnf.disjunct_names(), vec!["d_1"]);
        assert!(DnfFormula::new(vec![], vec![]).is_err());
        assert!(DnfFormula::new(vec!["p".into()], vec![lit(&["q"], &[])]).is_err());
    }
}
