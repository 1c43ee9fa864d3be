//! Two-valued evaluation of terms and formulas in a finite structure.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{Elem, FiniteStructure};
use crate::syntax::{Formula, Term};

pub use crate::syntax::free_symbols;

/// Variable name to domain element.
pub type Assignment = BTreeMap<String, Elem>;

pub fn eval_term(structure: &FiniteStructure, assignment: &Assignment, term: &Term) -> Result<Elem> {
    match term {
        Term::Var(v) => assignment
            .get(v)
            .copied()
            .or_else(|| structure.object(v))
            .ok_or_else(|| Error::UnassignedVariable(v.clone())),
        Term::Apply(f, args) => {
            let vals = args.iter().map(|a| eval_term(structure, assignment, a)).collect::<Result<Vec<_>>>()?;
            structure.apply(f, &vals).ok_or_else(|| Error::UnknownSymbol(f.clone()))
        }
    }
}

pub fn eval_formula(structure: &FiniteStructure, assignment: &Assignment, formula: &Formula) -> Result<bool> {
    let mut a = assignment.clone();
    eval_in(structure, &mut a, formula)
}

fn eval_in(s: &FiniteStructure, a: &mut Assignment, f: &Formula) -> Result<bool> {
    Ok(match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(p, args) => {
            let vals = args.iter().map(|t| eval_term(s, a, t)).collect::<Result<Vec<_>>>()?;
            s.holds(p, &vals).ok_or_else(|| Error::UnknownSymbol(p.clone()))?
        }
        Formula::Eq(x, y) => eval_term(s, a, x)? == eval_term(s, a, y)?,
        Formula::Not(g) => !eval_in(s, a, g)?,
        Formula::And(g, h) => eval_in(s, a, g)? && eval_in(s, a, h)?,
        Formula::Or(g, h) => eval_in(s, a, g)? || eval_in(s, a, h)?,
        Formula::Implies(g, h) => !eval_in(s, a, g)? || eval_in(s, a, h)?,
        Formula::Exists(v, g) | Formula::Forall(v, g) => {
            let want = matches!(f, Formula::Exists(..));
            let saved = a.get(v).copied();
            let mut result = !want;
            for d in 0..s.domain().len() as Elem {
                a.insert(v.clone(), d);
                if eval_in(s, a, g)? == want {
                    result = want;
                    break;
                }
            }
            match saved {
                Some(x) => a.insert(v.clone(), x),
                None => a.remove(v),
            };
            result
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{compose, AtomSet, Symbol, Universe};
    use alloc::vec;

    fn ctx() -> FiniteStructure {
        let mut o = FiniteStructure::new(&["a", "b", "c"]).unwrap();
        o.set_predicate("G", 2, [vec![0, 0], vec![1, 2], vec![2, 1]].into_iter().collect()).unwrap();
        let s: BTreeMap<Vec<Elem>, Elem> = [(vec![0], 1), (vec![1], 2), (vec![2], 2)].into_iter().collect();
        o.set_function("s", 1, &s).unwrap();
        o.set_object("zero", 0).unwrap();
        o
    }

    #[test]
    fn terms() {
        let o = ctx();
        let a = Assignment::new();
        assert_eq!(eval_term(&o, &a, &Term::app("s", vec![Term::obj("zero")])).unwrap(), 1);
        assert_eq!(eval_term(&o, &a, &Term::app("s", vec![Term::app("s", vec![Term::obj("zero")])])).unwrap(), 2);
        assert_eq!(eval_term(&o, &a, &Term::obj("zero")).unwrap(), 0);
        assert!(matches!(eval_term(&o, &a, &Term::var("q")), Err(Error::UnassignedVariable(_))));
        assert!(matches!(eval_term(&o, &a, &Term::obj("nope")), Err(Error::UnknownSymbol(_))));
    }

    #[test]
    fn tc_body() {
        let o = ctx();
        let u = Universe::new(&[Symbol::predicate("R", 2)], o.domain());
        let body = Formula::exists(
            "z",
            Formula::and(
                Formula::atom("R", vec![Term::var("x"), Term::var("z")]),
                Formula::atom("R", vec![Term::var("z"), Term::var("y")]),
            ),
        );
        let mut asg = Assignment::new();
        asg.insert("x".into(), 1);
        asg.insert("y".into(), 1);
        let empty = compose(&o, &u, &AtomSet::empty(9)).unwrap();
        assert!(!eval_formula(&empty, &asg, &body).unwrap());
        let bc = u.lookup("R", &["b", "c"]).unwrap();
        let cb = u.lookup("R", &["c", "b"]).unwrap();
        let s = compose(&o, &u, &AtomSet::from_indices(9, [bc, cb])).unwrap();
        assert!(eval_formula(&s, &asg, &body).unwrap());
        // The quantified variable is restored afterwards.
        asg.insert("z".into(), 2);
        assert!(eval_formula(&s, &asg, &body).unwrap());
    }
}
