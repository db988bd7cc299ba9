//! Terms, literals, clauses, Horn programs, substitutions and their text syntax.

mod clause;
pub mod parser;
pub mod render;
mod subst;
mod term;

use thiserror::Error;

pub use clause::{Clause, ExampleStream, HornProgram};
pub use parser::{parse_atom, parse_clauses, parse_examples, parse_program, parse_term};
pub use render::{canonical_clause, clause_order, render_clause, render_program, sorted_clauses};
pub use subst::{
    clause_variant_equal, condense, condense_fixing, match_literal, match_term, theta_subsumes,
    theta_subsumes_from, Substitution,
};
pub use term::{Literal, Symbol, Term};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LogicError {
    #[error("clause `{0}` is not definite")]
    NonDefinite(String),
    #[error("example `{0}` is not ground")]
    NonGroundExample(String),
    #[error("example `{0}` is negative")]
    NegativeExample(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("clause at {line}:{col} has no head; only definite clauses are supported")]
    NonDefinite { line: usize, col: usize },
    #[error("example at {line}:{col} is not ground: {atom}")]
    NonGround {
        line: usize,
        col: usize,
        atom: String,
    },
}
