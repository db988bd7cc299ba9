//! Built-in streams for the even-number examples and the golden checks run
//! by `reproduce`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::learner::{
    default_depth_bound, run_stream, LearnError, LearnerConfig, LearnerSystem, StageRecord,
};
use crate::limits::{convergence_report, LimitReport, LimitsError, Verdict};
use crate::logic::{
    clause_variant_equal, parse_program, render_program, ExampleStream, HornProgram, Literal, Term,
};
use crate::metric::is_simple_program;
use crate::semantics::{least_model_bounded, SemanticsError};

/// Window used by every built-in reproduction.
pub const REPRODUCE_WINDOW: usize = 4;
/// Length of the permuted prefix in the seeded `pgolem-fix` streams.
pub const SHUFFLED_PREFIX: usize = 6;

pub const GOLDEN_EXAMPLE_3_1: &str = include_str!("../fixtures/golden/example-3.1.txt");
pub const GOLDEN_EXAMPLE_3_2: &str = include_str!("../fixtures/golden/example-3.2.txt");
pub const GOLDEN_PGOLEM_ASCENDING: &str = include_str!("../fixtures/golden/pgolem-ascending.txt");
pub const GOLDEN_PGOLEM_REORDERED: &str = include_str!("../fixtures/golden/pgolem-reordered.txt");

/// `{p(0); p(s(s(X))) :- p(X)}`, the limit of the ascending even stream.
pub const EVEN_PROGRAM: &str = "p(0).\np(s(s(X0))) :- p(X0).";
/// `p(X) :- p(s(s(X)))`, the order-sensitive limit.
pub const DOWNWARD_RULE: &str = "p(X0) :- p(s(s(X0))).";

pub fn even(k: usize) -> Literal {
    Literal::atom("p", vec![Term::numeral(2 * k)])
}

/// `p(0), p(s²(0)), …, p(s^{2n}(0))`.
pub fn ascending_evens(n: usize) -> ExampleStream {
    ExampleStream::new((0..=n).map(even)).expect("ground atoms")
}

/// Blocks `p(s^{6k+4}(0)), p(s^{6k+2}(0)), p(s^{6k}(0))` for `k < blocks`.
pub fn reordered_evens(blocks: usize) -> ExampleStream {
    ExampleStream::new((0..blocks).flat_map(|k| [3 * k + 2, 3 * k + 1, 3 * k].map(even)))
        .expect("ground atoms")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinCase {
    Example31,
    Example32,
    Case1,
    Case2,
    PgolemFix,
}

impl BuiltinCase {
    pub const ALL: [BuiltinCase; 5] = [
        BuiltinCase::Example31,
        BuiltinCase::Example32,
        BuiltinCase::Case1,
        BuiltinCase::Case2,
        BuiltinCase::PgolemFix,
    ];
}

impl fmt::Display for BuiltinCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BuiltinCase::Example31 => "example-3.1",
            BuiltinCase::Example32 => "example-3.2",
            BuiltinCase::Case1 => "case-1",
            BuiltinCase::Case2 => "case-2",
            BuiltinCase::PgolemFix => "pgolem-fix",
        })
    }
}

impl FromStr for BuiltinCase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BuiltinCase::ALL
            .into_iter()
            .find(|c| c.to_string() == s)
            .ok_or_else(|| format!("unknown case `{s}`"))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CaseError {
    #[error(transparent)]
    Learn(#[from] LearnError),
    #[error(transparent)]
    Limits(#[from] LimitsError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

/// One analysed sequence within a reproduction.
#[derive(Clone, Debug)]
pub struct Run {
    pub label: String,
    pub examples: Vec<Literal>,
    /// Learner trace, absent for the hand-built Case 1/2 sequences.
    pub trace: Option<Vec<StageRecord>>,
    pub snapshots: Vec<HornProgram>,
    pub report: LimitReport,
}

#[derive(Clone, Debug)]
pub struct Reproduction {
    pub case: BuiltinCase,
    pub runs: Vec<Run>,
    pub failures: Vec<String>,
}

impl Reproduction {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Golden text: `# stage N ACTION EXAMPLE` followed by the canonical program.
pub fn render_golden(trace: &[StageRecord]) -> String {
    let mut out = String::new();
    for r in trace {
        out.push_str(&format!("# stage {} {} {}\n", r.stage, r.action, r.example));
        let prog = render_program(&r.program);
        if !prog.is_empty() {
            out.push_str(&prog);
            out.push('\n');
        }
    }
    out
}

fn golden_blocks(text: &str) -> Vec<String> {
    let mut blocks: Vec<String> = Vec::new();
    for line in text.lines().map(str::trim_end).filter(|l| !l.is_empty()) {
        if line.starts_with("# stage") || blocks.is_empty() {
            blocks.push(String::new());
        }
        let b = blocks.last_mut().unwrap();
        b.push_str(line);
        b.push('\n');
    }
    blocks
}

/// `None` when equal, otherwise a description of the first differing stage.
pub fn compare_golden(expected: &str, trace: &[StageRecord]) -> Option<String> {
    let want = golden_blocks(expected);
    let got = golden_blocks(&render_golden(trace));
    for (i, (w, g)) in want.iter().zip(&got).enumerate() {
        if w != g {
            return Some(format!(
                "first differing stage {i}:\nexpected:\n{w}actual:\n{g}"
            ));
        }
    }
    (want.len() != got.len()).then(|| {
        format!(
            "stage count differs: expected {}, got {}",
            want.len(),
            got.len()
        )
    })
}

fn learn(label: &str, system: LearnerSystem, stream: &ExampleStream) -> Result<Run, CaseError> {
    let cfg = LearnerConfig::for_stream(system, stream);
    let trace = run_stream(stream, &cfg)?;
    let snapshots: Vec<HornProgram> = trace.iter().map(|r| r.program.clone()).collect();
    let report = convergence_report(
        &snapshots,
        stream.arrivals(),
        REPRODUCE_WINDOW,
        cfg.depth_bound,
    )?;
    Ok(Run {
        label: label.to_string(),
        examples: stream.arrivals().to_vec(),
        trace: Some(trace),
        snapshots,
        report,
    })
}

fn synthetic(
    label: &str,
    stream: &ExampleStream,
    snapshots: Vec<HornProgram>,
) -> Result<Run, CaseError> {
    let depth = default_depth_bound(stream.arrivals());
    let report = convergence_report(&snapshots, stream.arrivals(), REPRODUCE_WINDOW, depth)?;
    Ok(Run {
        label: label.to_string(),
        examples: stream.arrivals().to_vec(),
        trace: None,
        snapshots,
        report,
    })
}

struct Checks<'a>(&'a mut Vec<String>);

impl Checks<'_> {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.0.push(what());
        }
    }
}

fn check_limit(c: &mut Checks, run: &Run, verdict: Verdict, candidate: &str, correct: bool) {
    let r = &run.report;
    c.expect(r.verdict == verdict, || {
        format!("{}: verdict {} (expected {verdict})", run.label, r.verdict)
    });
    let got = render_program(&r.candidate_limit);
    c.expect(got == candidate, || {
        format!(
            "{}: candidate limit {got:?} (expected {candidate:?})",
            run.label
        )
    });
    c.expect(r.limit_correct() == correct, || {
        format!(
            "{}: {} of {} examples covered by the candidate limit",
            run.label,
            r.correctness.covered_count(),
            r.correctness.len()
        )
    });
}

fn check_golden(c: &mut Checks, run: &Run, golden: &str) {
    if let Some(diff) = compare_golden(golden, run.trace.as_deref().unwrap_or(&[])) {
        c.expect(false, || format!("{}: golden mismatch, {diff}", run.label));
    }
}

/// Runs one built-in reproduction. `seed` drives the extra shuffled
/// orderings checked by `pgolem-fix`.
pub fn reproduce(case: BuiltinCase, seed: u64) -> Result<Reproduction, CaseError> {
    let mut failures = Vec::new();
    let mut c = Checks(&mut failures);
    let runs = match case {
        BuiltinCase::Example31 => {
            let run = learn(
                "golem/ascending",
                LearnerSystem::Golem,
                &ascending_evens(10),
            )?;
            check_golden(&mut c, &run, GOLDEN_EXAMPLE_3_1);
            check_limit(&mut c, &run, Verdict::Stable, EVEN_PROGRAM, true);
            vec![run]
        }
        BuiltinCase::Example32 => {
            let run = learn("golem/reordered", LearnerSystem::Golem, &reordered_evens(4))?;
            check_golden(&mut c, &run, GOLDEN_EXAMPLE_3_2);
            check_limit(
                &mut c,
                &run,
                Verdict::ConvergentModuloTransients,
                DOWNWARD_RULE,
                false,
            );
            c.expect(run.report.candidate_model.is_empty(), || {
                "golem/reordered: candidate model is not empty".into()
            });
            c.expect(run.report.correctness.covered_count() == 0, || {
                "golem/reordered: some example is covered by the limit".into()
            });
            vec![run]
        }
        BuiltinCase::Case1 => {
            let stream = ascending_evens(10);
            let t = parse_program(EVEN_PROGRAM).expect("valid");
            let run = synthetic("case-1", &stream, vec![t; stream.len()])?;
            check_limit(&mut c, &run, Verdict::Stable, EVEN_PROGRAM, true);
            vec![run]
        }
        BuiltinCase::Case2 => {
            let stream = ascending_evens(10);
            let depth = default_depth_bound(stream.arrivals());
            let mut snapshots = Vec::new();
            for n in 0..stream.len() {
                let s_n = parse_program(&format!("{}. {DOWNWARD_RULE}", even(n))).expect("valid");
                // the least model of S_n is exactly E_n
                let model = least_model_bounded(&s_n, depth)?;
                let e_n: std::collections::BTreeSet<Literal> =
                    stream.cumulative(n).iter().cloned().collect();
                c.expect(model.atoms == e_n, || {
                    format!("case-2: model of S_{n} differs from E_{n}")
                });
                snapshots.push(s_n);
            }
            let run = synthetic("case-2", &stream, snapshots)?;
            check_limit(
                &mut c,
                &run,
                Verdict::ConvergentModuloTransients,
                DOWNWARD_RULE,
                false,
            );
            c.expect(run.report.candidate_model.is_empty(), || {
                "case-2: limit model not empty".into()
            });
            vec![run]
        }
        BuiltinCase::PgolemFix => {
            let sys = LearnerSystem::PrioritizedGolem;
            let asc = learn("pgolem/ascending", sys, &ascending_evens(10))?;
            let reo = learn("pgolem/reordered", sys, &reordered_evens(4))?;
            check_golden(&mut c, &asc, GOLDEN_PGOLEM_ASCENDING);
            check_golden(&mut c, &reo, GOLDEN_PGOLEM_REORDERED);
            let mut runs = vec![asc, reo];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for i in 0..4 {
                // a shuffled prefix followed by the rest of the stream in order
                let mut arrivals: Vec<Literal> = (0..SHUFFLED_PREFIX).map(even).collect();
                arrivals.shuffle(&mut rng);
                arrivals.extend((SHUFFLED_PREFIX..=12).map(even));
                let stream = ExampleStream::new(arrivals).expect("ground atoms");
                runs.push(learn(&format!("pgolem/shuffled-{i}"), sys, &stream)?);
            }
            for run in &runs {
                check_limit(&mut c, run, Verdict::Stable, EVEN_PROGRAM, true);
                let all_simple = run.snapshots.iter().all(is_simple_program);
                c.expect(all_simple, || format!("{}: non-simple snapshot", run.label));
                let last = run.snapshots.last().unwrap();
                let first_final = runs[0].snapshots.last().unwrap();
                let same = last.len() == first_final.len()
                    && last
                        .clauses()
                        .all(|x| first_final.clauses().any(|y| clause_variant_equal(x, y)));
                c.expect(same, || {
                    format!("{}: final program differs from ascending run", run.label)
                });
            }
            runs
        }
    };
    Ok(Reproduction {
        case,
        runs,
        failures,
    })
}
