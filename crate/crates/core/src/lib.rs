//! First-order Horn clause learning over a stream of ground examples:
//! term and clause distances, least general generalization, bounded
//! least-model semantics, GOLEM and its prioritized variant, and a
//! finite-window analysis of the resulting program sequences.

pub mod cases;
pub mod cli;
pub mod generalize;
pub mod learner;
pub mod limits;
pub mod logic;
pub mod metric;
pub mod report;
pub mod semantics;

pub use generalize::{lgg_clause_sets, lgg_clauses, reduce_program, saturate, SaturationPolicy};
pub use learner::{run_stream, LearnerConfig, LearnerSystem, StageAction, StageRecord};
pub use limits::{convergence_report, LimitReport, Verdict};
pub use logic::{Clause, ExampleStream, HornProgram, Literal, Term};
pub use metric::{clause_distance, literal_distance, term_distance, DistanceValue};
pub use semantics::{least_model_bounded, BoundedModel};
