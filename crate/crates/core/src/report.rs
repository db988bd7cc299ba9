//! JSON surfaces: the per-stage trace (JSON lines) and the limit report.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::learner::{StageAction, StageRecord};
use crate::limits::{Interval, LimitReport};
use crate::logic::{
    parse_atom, parse_program, render_clause, render_program, HornProgram, Literal, ParseError,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("trace line {line}: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("trace line {line}: {source}")]
    Parse {
        line: usize,
        #[source]
        source: ParseError,
    },
    #[error("trace line {line}: {message}")]
    Invalid { line: usize, message: String },
}

/// One stage of a learner trace as written to `.jsonl`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceLine {
    pub stage: usize,
    pub example: String,
    pub action: String,
    pub program: String,
    pub simple: bool,
}

impl From<&StageRecord> for TraceLine {
    fn from(r: &StageRecord) -> Self {
        TraceLine {
            stage: r.stage,
            example: r.example.to_string(),
            action: r.action.to_string(),
            program: render_program(&r.program),
            simple: r.simple,
        }
    }
}

pub fn trace_to_jsonl(trace: &[StageRecord]) -> String {
    let mut out = String::new();
    for r in trace {
        out.push_str(&serde_json::to_string(&TraceLine::from(r)).expect("serializable"));
        out.push('\n');
    }
    out
}

/// A trace read back from disk: examples and program snapshots in stage order.
#[derive(Clone, Debug, Default)]
pub struct LoadedTrace {
    pub examples: Vec<Literal>,
    pub actions: Vec<StageAction>,
    pub snapshots: Vec<HornProgram>,
}

pub fn parse_trace_jsonl(text: &str) -> Result<LoadedTrace, TraceError> {
    let mut out = LoadedTrace::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let t: TraceLine =
            serde_json::from_str(raw).map_err(|source| TraceError::Json { line, source })?;
        if t.stage != out.snapshots.len() {
            return Err(TraceError::Invalid {
                line,
                message: format!("expected stage {}, found {}", out.snapshots.len(), t.stage),
            });
        }
        let example =
            parse_atom(&t.example).map_err(|source| TraceError::Parse { line, source })?;
        let program =
            parse_program(&t.program).map_err(|source| TraceError::Parse { line, source })?;
        let action = t
            .action
            .parse()
            .map_err(|message| TraceError::Invalid { line, message })?;
        out.examples.push(example);
        out.actions.push(action);
        out.snapshots.push(program);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OccurrenceJson {
    pub clause: String,
    pub intervals: Vec<Interval>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CoverageJson {
    pub example: String,
    pub covered: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ModelJson {
    pub depth_bound: usize,
    pub atoms: Vec<String>,
    pub saturated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LimitReportJson {
    pub schema_version: u32,
    pub window_size: usize,
    pub verdict: String,
    pub liminf_window: Vec<String>,
    pub limsup_window: Vec<String>,
    pub per_clause_occurrences: Vec<OccurrenceJson>,
    pub candidate_limit: String,
    pub limit_correct: bool,
    pub correctness: Vec<CoverageJson>,
    pub candidate_model: ModelJson,
}

impl From<&LimitReport> for LimitReportJson {
    fn from(r: &LimitReport) -> Self {
        LimitReportJson {
            schema_version: SCHEMA_VERSION,
            window_size: r.window_size,
            verdict: r.verdict.to_string(),
            liminf_window: r.liminf_window.iter().map(render_clause).collect(),
            limsup_window: r.limsup_window.iter().map(render_clause).collect(),
            per_clause_occurrences: r
                .per_clause_occurrences
                .iter()
                .map(|(c, iv)| OccurrenceJson {
                    clause: render_clause(c),
                    intervals: iv.clone(),
                })
                .collect(),
            candidate_limit: render_program(&r.candidate_limit),
            limit_correct: r.limit_correct(),
            correctness: r
                .correctness
                .entries
                .iter()
                .map(|(e, covered)| CoverageJson {
                    example: e.to_string(),
                    covered: *covered,
                })
                .collect(),
            candidate_model: ModelJson {
                depth_bound: r.candidate_model.depth_bound,
                atoms: r
                    .candidate_model
                    .atoms
                    .iter()
                    .map(Literal::to_string)
                    .collect(),
                saturated: r.candidate_model.saturated,
            },
        }
    }
}

pub fn report_to_json(r: &LimitReport) -> String {
    serde_json::to_string_pretty(&LimitReportJson::from(r)).expect("serializable")
}
