//! Set-theoretic limits of program sequences, finitized over a trailing
//! window of snapshots. Clause identity is variant equality.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::logic::{clause_variant_equal, sorted_clauses, Clause, HornProgram, Literal};
use crate::semantics::{
    coverage_in, least_model_bounded, BoundedModel, CoverageReport, SemanticsError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LimitsError {
    #[error("window of {window} exceeds the {len} available snapshots")]
    WindowTooLarge { window: usize, len: usize },
    #[error("window must be positive")]
    EmptyWindow,
    #[error("trace is empty")]
    EmptyTrace,
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

/// `max(4, ⌈stages / 3⌉)`, never more than the number of stages.
pub fn default_window(stages: usize) -> usize {
    4.max(stages.div_ceil(3)).min(stages.max(1))
}

/// Clauses up to variant equality, kept in canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClauseSet(Vec<Clause>);

impl ClauseSet {
    pub fn contains(&self, c: &Clause) -> bool {
        self.0.iter().any(|d| clause_variant_equal(c, d))
    }

    fn insert(&mut self, c: &Clause) {
        if !self.contains(c) {
            self.0.push(c.clone());
        }
    }

    fn sorted(self) -> ClauseSet {
        ClauseSet(sorted_clauses(&self.0).into_iter().cloned().collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = &Clause> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &ClauseSet) -> bool {
        self.0.iter().all(|c| other.contains(c))
    }

    pub fn same_as(&self, other: &ClauseSet) -> bool {
        self.is_subset(other) && other.is_subset(self)
    }

    pub fn to_program(&self) -> HornProgram {
        HornProgram::new(self.0.iter().cloned()).expect("program clauses are definite")
    }
}

fn program_has(p: &HornProgram, c: &Clause) -> bool {
    p.clauses().any(|d| clause_variant_equal(c, d))
}

/// (liminf, limsup) over the last `w` snapshots.
pub fn window_limits(
    snapshots: &[HornProgram],
    w: usize,
) -> Result<(ClauseSet, ClauseSet), LimitsError> {
    if w == 0 {
        return Err(LimitsError::EmptyWindow);
    }
    if w > snapshots.len() {
        return Err(LimitsError::WindowTooLarge {
            window: w,
            len: snapshots.len(),
        });
    }
    let window = &snapshots[snapshots.len() - w..];
    let mut sup = ClauseSet::default();
    for p in window {
        for c in p.clauses() {
            sup.insert(c);
        }
    }
    let inf = ClauseSet(
        sup.iter()
            .filter(|c| window.iter().all(|p| program_has(p, c)))
            .cloned()
            .collect(),
    );
    Ok((inf.sorted(), sup.sorted()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Stable,
    ConvergentModuloTransients,
    Divergent,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Stable => "Stable",
            Verdict::ConvergentModuloTransients => "ConvergentModuloTransients",
            Verdict::Divergent => "Divergent",
        })
    }
}

impl FromStr for Verdict {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Stable" => Ok(Verdict::Stable),
            "ConvergentModuloTransients" => Ok(Verdict::ConvergentModuloTransients),
            "Divergent" => Ok(Verdict::Divergent),
            other => Err(format!("unknown verdict `{other}`")),
        }
    }
}

/// Inclusive stage interval `(first, last)`.
pub type Interval = (usize, usize);

/// Maximal runs of consecutive stages in which a variant of `c` is present.
pub fn occurrence_runs(snapshots: &[HornProgram], offset: usize, c: &Clause) -> Vec<Interval> {
    let mut runs: Vec<Interval> = Vec::new();
    for (i, p) in snapshots.iter().enumerate() {
        if program_has(p, c) {
            let stage = offset + i;
            match runs.last_mut() {
                Some((_, end)) if *end + 1 == stage => *end = stage,
                _ => runs.push((stage, stage)),
            }
        }
    }
    runs
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitReport {
    pub window_size: usize,
    pub liminf_window: ClauseSet,
    pub limsup_window: ClauseSet,
    /// Every clause seen anywhere in the trace with its occurrence runs.
    pub per_clause_occurrences: Vec<(Clause, Vec<Interval>)>,
    pub verdict: Verdict,
    pub candidate_limit: HornProgram,
    pub correctness: CoverageReport,
    pub candidate_model: BoundedModel,
}

impl LimitReport {
    pub fn limit_correct(&self) -> bool {
        self.correctness.all_covered()
    }
}

/// Window verdict plus coverage of the candidate limit (the window liminf).
pub fn convergence_report(
    snapshots: &[HornProgram],
    streamed: &[Literal],
    w: usize,
    depth_bound: usize,
) -> Result<LimitReport, LimitsError> {
    if snapshots.is_empty() {
        return Err(LimitsError::EmptyTrace);
    }
    let (inf, sup) = window_limits(snapshots, w)?;
    let start = snapshots.len() - w;
    let verdict = if sup.is_subset(&inf) {
        Verdict::Stable
    } else if sup
        .iter()
        .filter(|c| !inf.contains(c))
        .all(|c| occurrence_runs(&snapshots[start..], start, c).len() <= 1)
    {
        Verdict::ConvergentModuloTransients
    } else {
        Verdict::Divergent
    };

    let mut all = ClauseSet::default();
    for p in snapshots {
        for c in p.clauses() {
            all.insert(c);
        }
    }
    let per_clause_occurrences = all
        .sorted()
        .iter()
        .map(|c| (c.clone(), occurrence_runs(snapshots, 0, c)))
        .collect();

    let candidate_limit = inf.to_program();
    crate::semantics::check_depth(streamed, depth_bound)?;
    let candidate_model = least_model_bounded(&candidate_limit, depth_bound)?;
    let correctness = coverage_in(&candidate_model, streamed);
    Ok(LimitReport {
        window_size: w,
        liminf_window: inf,
        limsup_window: sup,
        per_clause_occurrences,
        verdict,
        candidate_limit,
        correctness,
        candidate_model,
    })
}
