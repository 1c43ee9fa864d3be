//! Semantics engine for rule-based inductive definitions over finite structures.
//!
//! A [`Problem`] pairs a [`Definition`] with a context structure. From it the
//! engine builds natural inductions, checks candidate induction orders,
//! decides safe derivability and computes the safely defined structure.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod dnf;
pub mod error;
pub mod eval;
pub mod ground;
pub mod induction;
pub mod model;
pub mod order;
pub mod problem;
pub mod safety;
pub mod syntax;

pub use error::{Error, Result};
pub use model::{AtomRelation, AtomSet, DomainAtom, Elem, FiniteStructure, Symbol, SymbolKind, Universe, Vocabulary};
pub use problem::{Expectations, Problem};
pub use safety::Budget;
pub use syntax::{Definition, Formula, Rule, Term};
