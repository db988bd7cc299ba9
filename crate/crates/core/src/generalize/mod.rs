//! Least general generalization, GOLEM saturation and program reduction.

mod lgg;
mod reduce;
mod saturate;

use thiserror::Error;

use crate::semantics::SemanticsError;

pub use lgg::{
    lgg_clause_sets, lgg_clauses, lgg_clauses_with_table, lgg_literals, lgg_terms, PairTable,
};
pub use reduce::reduce_program;
pub use saturate::{saturate, Saturation, SaturationPolicy, MAX_SATURATION_CLAUSES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneralizeError {
    #[error("example `{0}` must be a ground positive atom")]
    NotGroundAtom(String),
    #[error("negated background expands to more than {0} clauses")]
    SaturationTooLarge(usize),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}
