//! Incremental GOLEM and prioritized GOLEM over example streams.
//!
//! Both drivers short-circuit when the current program already covers the
//! new example. Otherwise the example is saturated against the current
//! program and generalized against the most recent learned rule (the
//! hypothesis); if the result still does not derive the example it is
//! added as a fact, and the program is reduced.
//!
//! The prioritized driver additionally restarts from an earlier snapshot
//! whenever the new example has higher priority than some earlier arrival,
//! replaying the pending arrivals in ascending priority order, and keeps
//! only simple clauses.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::generalize::{
    lgg_clause_sets, reduce_program, saturate, GeneralizeError, Saturation, SaturationPolicy,
};
use crate::logic::{Clause, ExampleStream, HornProgram, Literal};
use crate::metric::{is_simple_program, priority_precedes};
use crate::semantics::{check_depth, least_model_bounded, SemanticsError};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum LearnerSystem {
    #[default]
    Golem,
    PrioritizedGolem,
}

impl fmt::Display for LearnerSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LearnerSystem::Golem => "golem",
            LearnerSystem::PrioritizedGolem => "pgolem",
        })
    }
}

impl FromStr for LearnerSystem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "golem" => Ok(LearnerSystem::Golem),
            "pgolem" => Ok(LearnerSystem::PrioritizedGolem),
            other => Err(format!("unknown system `{other}` (expected golem|pgolem)")),
        }
    }
}

/// Extra depth allowed above the deepest example when no bound is given.
pub const DEFAULT_DEPTH_MARGIN: usize = 4;

pub fn default_depth_bound(examples: &[Literal]) -> usize {
    examples.iter().map(Literal::depth).max().unwrap_or(0) + DEFAULT_DEPTH_MARGIN
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LearnerConfig {
    pub system: LearnerSystem,
    pub policy: SaturationPolicy,
    pub depth_bound: usize,
    pub max_stages: usize,
    /// Program the run starts from.
    pub background: HornProgram,
}

impl LearnerConfig {
    /// Defaults for a stream: depth = deepest example + 4, one stage per arrival.
    pub fn for_stream(system: LearnerSystem, stream: &ExampleStream) -> LearnerConfig {
        LearnerConfig {
            system,
            policy: SaturationPolicy::Cnf,
            depth_bound: default_depth_bound(stream.arrivals()),
            max_stages: stream.len().max(1),
            background: HornProgram::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StageAction {
    Covered,
    Extended,
    /// Relearned a suffix of the learning order; carries the earliest
    /// arrival stage in that suffix.
    Restarted(usize),
}

impl fmt::Display for StageAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StageAction::Covered => f.write_str("Covered"),
            StageAction::Extended => f.write_str("Extended"),
            StageAction::Restarted(j) => write!(f, "Restarted({j})"),
        }
    }
}

impl FromStr for StageAction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Covered" => Ok(StageAction::Covered),
            "Extended" => Ok(StageAction::Extended),
            _ => s
                .strip_prefix("Restarted(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|n| n.parse().ok())
                .map(StageAction::Restarted)
                .ok_or_else(|| format!("unknown stage action `{s}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageRecord {
    pub stage: usize,
    pub example: Literal,
    pub action: StageAction,
    pub program: HornProgram,
    pub simple: bool,
    /// Most recent learned rule, generalized against at the next stage.
    pub hypothesis: Option<Clause>,
    /// Arrivals in the order they were learned, each with the state after
    /// it. Maintained by the prioritized system only; restarts resume from
    /// these prefix states.
    pub schedule: Vec<Scheduled>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scheduled {
    /// Stage at which the example arrived.
    pub stage: usize,
    pub example: Literal,
    pub program: HornProgram,
    pub hypothesis: Option<Clause>,
}

#[derive(Debug, Error)]
pub enum LearnError {
    #[error("example stream is empty")]
    EmptyStream,
    #[error("stage budget of {limit} exceeded ({} stages completed)", partial.len())]
    StageBudget {
        limit: usize,
        partial: Vec<StageRecord>,
    },
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error(transparent)]
    Generalize(#[from] GeneralizeError),
}

#[derive(Clone)]
struct State {
    program: HornProgram,
    hypothesis: Option<Clause>,
}

impl State {
    fn after(s: &Scheduled) -> State {
        State {
            program: s.program.clone(),
            hypothesis: s.hypothesis.clone(),
        }
    }

    fn scheduled(&self, stage: usize, example: &Literal) -> Scheduled {
        Scheduled {
            stage,
            example: example.clone(),
            program: self.program.clone(),
            hypothesis: self.hypothesis.clone(),
        }
    }
}

fn current_state(history: &[StageRecord], cfg: &LearnerConfig) -> State {
    match history.last() {
        Some(r) => State {
            program: r.program.clone(),
            hypothesis: r.hypothesis.clone(),
        },
        None => State {
            program: cfg.background.clone(),
            hypothesis: None,
        },
    }
}

fn derives(p: &HornProgram, e: &Literal, cfg: &LearnerConfig) -> Result<bool, LearnError> {
    Ok(least_model_bounded(p, cfg.depth_bound)?.contains(e))
}

/// Keep a saturated clause only if `e` is its sole positive literal, and
/// only the body atoms of higher priority than `e`.
fn restrict_by_priority(c: &Clause, e: &Literal) -> Option<Clause> {
    if c.head() != Some(e) {
        return None;
    }
    Some(Clause::new(
        c.literals()
            .filter(|l| l.positive || priority_precedes(&l.to_atom(), e))
            .cloned(),
    ))
}

/// Definite, range-restricted and (for the prioritized system) simple.
fn admissible(g: Clause, prioritized: bool) -> Option<Clause> {
    let head = g.head()?.clone();
    let g = if prioritized {
        let head_terms = head.subterms();
        let kept = Clause::new(
            g.literals()
                .filter(|l| l.positive || l.subterms().is_subset(&head_terms))
                .cloned(),
        );
        if kept.len() != g.len() {
            log::info!("simplicity filter: {g} -> {kept}");
        }
        kept
    } else {
        g
    };
    if g.is_tautology() || !g.is_range_restricted() {
        log::debug!("rejecting generalization {g}");
        return None;
    }
    Some(g)
}

fn extend(
    state: State,
    e: &Literal,
    cfg: &LearnerConfig,
    prioritized: bool,
) -> Result<State, LearnError> {
    let sigma = match saturate(&state.program, e, cfg.policy, cfg.depth_bound)? {
        Saturation::AlreadyCovered => return Ok(state),
        Saturation::Clauses(c) => c,
    };
    let sigma: Vec<Clause> = if prioritized {
        sigma
            .iter()
            .filter_map(|c| restrict_by_priority(c, e))
            .collect()
    } else {
        sigma
    };
    let learned: Vec<Clause> = match &state.hypothesis {
        Some(h) => lgg_clause_sets(std::slice::from_ref(h), &sigma)
            .into_iter()
            .filter_map(|g| admissible(g, prioritized))
            .collect(),
        None => sigma.into_iter().filter(Clause::is_definite).collect(),
    };
    let mut program = state.program;
    for c in &learned {
        program
            .insert(c.clone())
            .expect("learned clauses are definite");
    }
    if !derives(&program, e, cfg)? {
        program
            .insert(Clause::fact(e.clone()))
            .expect("facts are definite");
    }
    let program = reduce_program(&program, cfg.depth_bound)?;
    let hypothesis = learned
        .iter()
        .rev()
        .find(|c| !c.is_unit() && program.contains(c))
        .cloned()
        .or(state.hypothesis);
    Ok(State {
        program,
        hypothesis,
    })
}

fn record(
    stage: usize,
    e: &Literal,
    action: StageAction,
    state: State,
    schedule: Vec<Scheduled>,
) -> StageRecord {
    StageRecord {
        stage,
        example: e.clone(),
        action,
        simple: is_simple_program(&state.program),
        program: state.program,
        hypothesis: state.hypothesis,
        schedule,
    }
}

/// One GOLEM stage on top of `history`.
pub fn golem_step(
    history: &[StageRecord],
    e: &Literal,
    cfg: &LearnerConfig,
) -> Result<StageRecord, LearnError> {
    let stage = history.len();
    let state = current_state(history, cfg);
    if derives(&state.program, e, cfg)? {
        return Ok(record(stage, e, StageAction::Covered, state, Vec::new()));
    }
    let state = extend(state, e, cfg, false)?;
    Ok(record(stage, e, StageAction::Extended, state, Vec::new()))
}

/// Topological order under ≺, earliest arrival first among candidates.
pub fn priority_sort(pending: Vec<Literal>) -> Vec<Literal> {
    priority_sort_by(pending, |l| l)
}

fn priority_sort_by<T>(mut pending: Vec<T>, lit: impl Fn(&T) -> &Literal) -> Vec<T> {
    let strictly = |a: &Literal, b: &Literal| priority_precedes(a, b) && !priority_precedes(b, a);
    let mut out = Vec::with_capacity(pending.len());
    while !pending.is_empty() {
        let next = (0..pending.len())
            .find(|&i| !pending.iter().any(|b| strictly(lit(b), lit(&pending[i]))))
            .expect("strict priority is acyclic");
        out.push(pending.remove(next));
    }
    out
}

/// One prioritized GOLEM stage on top of `history`.
///
/// A restart looks for the first position in the learning order whose
/// example `e` precedes, resumes from the state before that position and
/// relearns the rest together with `e` in ≺ order. Without earlier restarts
/// the learning order is the arrival order.
pub fn pgolem_step(
    history: &[StageRecord],
    e: &Literal,
    cfg: &LearnerConfig,
) -> Result<StageRecord, LearnError> {
    let stage = history.len();
    let state = current_state(history, cfg);
    let mut schedule = history
        .last()
        .map(|r| r.schedule.clone())
        .unwrap_or_default();
    if derives(&state.program, e, cfg)? {
        schedule.push(state.scheduled(stage, e));
        return Ok(record(stage, e, StageAction::Covered, state, schedule));
    }
    let Some(from) = schedule
        .iter()
        .position(|s| priority_precedes(e, &s.example))
    else {
        let state = extend(state, e, cfg, true)?;
        schedule.push(state.scheduled(stage, e));
        return Ok(record(stage, e, StageAction::Extended, state, schedule));
    };
    let mut state = match from {
        0 => current_state(&[], cfg),
        _ => State::after(&schedule[from - 1]),
    };
    let mut pending: Vec<(usize, Literal)> = schedule
        .drain(from..)
        .map(|s| (s.stage, s.example))
        .collect();
    pending.push((stage, e.clone()));
    pending.sort_by_key(|(k, _)| *k);
    let first = pending[0].0;
    for (k, a) in priority_sort_by(pending, |(_, l)| l) {
        if !derives(&state.program, &a, cfg)? {
            state = extend(state, &a, cfg, true)?;
        }
        schedule.push(state.scheduled(k, &a));
    }
    Ok(record(
        stage,
        e,
        StageAction::Restarted(first),
        state,
        schedule,
    ))
}

/// Folds the configured step over every arrival.
pub fn run_stream(
    stream: &ExampleStream,
    cfg: &LearnerConfig,
) -> Result<Vec<StageRecord>, LearnError> {
    if stream.is_empty() {
        return Err(LearnError::EmptyStream);
    }
    check_depth(stream.arrivals(), cfg.depth_bound)?;
    let mut trace: Vec<StageRecord> = Vec::with_capacity(stream.len());
    for e in stream.arrivals() {
        if trace.len() >= cfg.max_stages {
            return Err(LearnError::StageBudget {
                limit: cfg.max_stages,
                partial: trace,
            });
        }
        let rec = match cfg.system {
            LearnerSystem::Golem => golem_step(&trace, e, cfg)?,
            LearnerSystem::PrioritizedGolem => pgolem_step(&trace, e, cfg)?,
        };
        log::debug!(
            "stage {} {} {}: {}",
            rec.stage,
            rec.example,
            rec.action,
            rec.program
        );
        trace.push(rec);
    }
    Ok(trace)
}
