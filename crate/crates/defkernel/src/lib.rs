//! File formats, built-in corpus and command line for `defkernel-core`.

pub mod brute;
pub mod cli;
pub mod corpus;
pub mod json;
pub mod parser;

pub use parser::{parse_atom, parse_dnf, parse_formula, parse_problem, render_problem, ParseError};
