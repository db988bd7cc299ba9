//! Command-line front end. `run` returns the process exit status:
//! 0 success, 1 assertion or golden failure, 2 usage error, 3 input parse error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::cases::{render_golden, reproduce, BuiltinCase, Reproduction};
use crate::generalize::{lgg_clause_sets, lgg_clauses, saturate, Saturation, SaturationPolicy};
use crate::learner::{
    default_depth_bound, run_stream, LearnerConfig, LearnerSystem, DEFAULT_DEPTH_MARGIN,
};
use crate::limits::{convergence_report, default_window, LimitReport};
use crate::logic::{
    parse_atom, parse_clauses, parse_examples, parse_program, parse_term, render_clause,
    ExampleStream, HornProgram, ParseError,
};
use crate::metric::term_distance;
use crate::report::{parse_trace_jsonl, report_to_json, trace_to_jsonl, LimitReportJson};
use crate::semantics::least_model_bounded;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "prigolem",
    version,
    about = "Generalization, GOLEM learners and limit analysis for Horn programs"
)]
pub struct Cli {
    /// Term depth bound for bounded models (default: deepest input term + 4)
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Seed for randomized orderings
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact distance between two terms
    Distance { left: String, right: String },
    /// Least general generalization of the two clauses in a file
    Lgg { file: PathBuf },
    /// Relative lgg of examples against a background program
    Rlgg {
        #[arg(long)]
        background: Option<PathBuf>,
        #[arg(long = "example", required = true)]
        examples: Vec<String>,
        #[arg(long, default_value_t = SaturationPolicy::Cnf)]
        policy: SaturationPolicy,
    },
    /// Bounded least Herbrand model of a program
    Model {
        #[arg(long)]
        program: PathBuf,
    },
    /// Run a learner over an example stream
    Learn {
        #[arg(long, default_value_t = LearnerSystem::Golem)]
        system: LearnerSystem,
        #[arg(long)]
        examples: PathBuf,
        #[arg(long)]
        background: Option<PathBuf>,
        /// Number of stages (default: one per example)
        #[arg(long)]
        stages: Option<usize>,
        #[arg(long, default_value_t = SaturationPolicy::Cnf)]
        policy: SaturationPolicy,
        /// Write the JSON-lines trace here
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Limit analysis of a recorded trace
    Analyze {
        #[arg(long)]
        trace: PathBuf,
        /// Window size (default: max(4, stages/3 rounded up))
        #[arg(long)]
        window: Option<usize>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Re-run a built-in case and check it against its golden trace
    Reproduce {
        case: BuiltinCase,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{context}: {source}")]
    Parse {
        context: String,
        #[source]
        source: ParseError,
    },
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => EXIT_USAGE,
            CliError::Parse { .. } | CliError::Input(_) => EXIT_PARSE,
            CliError::Failed(_) => EXIT_FAILURE,
        }
    }
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parsed<T>(context: impl std::fmt::Display, r: Result<T, ParseError>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Parse {
        context: context.to_string(),
        source,
    })
}

fn load_program(path: &Path) -> Result<HornProgram, CliError> {
    parsed(path.display(), parse_program(&read(path)?))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    writeln!(out, "{text}").map_err(|source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

/// Parses `args` (including the program name) and executes the command,
/// writing results to `out` and diagnostics to stderr.
pub fn run_with<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout().lock())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Distance { left, right } => {
            let t = parsed("first term", parse_term(left))?;
            let s = parsed("second term", parse_term(right))?;
            let d = term_distance(&t, &s);
            if json {
                emit(
                    out,
                    &json!({"distance": d.to_string(), "value": d.to_f64()}).to_string(),
                )?;
            } else {
                emit(out, &d.to_string())?;
            }
        }
        Command::Lgg { file } => {
            let clauses = parsed(file.display(), parse_clauses(&read(file)?))?;
            let [c, d] = clauses.as_slice() else {
                return Err(CliError::Input(format!(
                    "{}: expected exactly two clauses, found {}",
                    file.display(),
                    clauses.len()
                )));
            };
            let g = render_clause(&lgg_clauses(c, d));
            if json {
                emit(out, &json!({"lgg": g}).to_string())?;
            } else {
                emit(out, &g)?;
            }
        }
        Command::Rlgg {
            background,
            examples,
            policy,
        } => {
            let bg = match background {
                Some(p) => load_program(p)?,
                None => HornProgram::default(),
            };
            let atoms = examples
                .iter()
                .map(|e| parsed(format!("example `{e}`"), parse_atom(e)))
                .collect::<Result<Vec<_>, _>>()?;
            let depth = cli.depth.unwrap_or_else(|| default_depth_bound(&atoms));
            let mut acc: Option<Vec<_>> = None;
            for e in &atoms {
                match saturate(&bg, e, *policy, depth).map_err(failed)? {
                    Saturation::AlreadyCovered => {
                        emit(out, &format!("% {e} is already derived by the background"))?;
                    }
                    Saturation::Clauses(cs) => {
                        acc = Some(match acc {
                            None => cs,
                            Some(prev) => lgg_clause_sets(&prev, &cs),
                        });
                    }
                }
            }
            let clauses = acc.unwrap_or_default();
            if json {
                let rendered: Vec<String> = clauses.iter().map(render_clause).collect();
                emit(out, &json!({"rlgg": rendered}).to_string())?;
            } else if !clauses.is_empty() {
                emit(out, &crate::logic::render::render_clauses(&clauses))?;
            }
        }
        Command::Model { program } => {
            let p = load_program(program)?;
            let depth = cli.depth.unwrap_or_else(|| {
                p.clauses().map(|c| c.depth()).max().unwrap_or(0) + DEFAULT_DEPTH_MARGIN
            });
            let m = least_model_bounded(&p, depth).map_err(failed)?;
            let atoms: Vec<String> = m.atoms.iter().map(|a| a.to_string()).collect();
            if json {
                let v = json!({"depthBound": depth, "atoms": atoms, "saturated": m.saturated});
                emit(out, &v.to_string())?;
            } else {
                let state = if m.saturated {
                    "saturated"
                } else {
                    "truncated"
                };
                emit(
                    out,
                    &format!("% depth {depth}, {} atoms, {state}", atoms.len()),
                )?;
                for a in atoms {
                    emit(out, &format!("{a}."))?;
                }
            }
        }
        Command::Learn {
            system,
            examples,
            background,
            stages,
            policy,
            trace,
        } => {
            let mut arrivals = parsed(examples.display(), parse_examples(&read(examples)?))?
                .arrivals()
                .to_vec();
            if let Some(n) = stages {
                if *n > arrivals.len() {
                    return Err(CliError::Usage(format!(
                        "--stages {n} exceeds the {} examples in {}",
                        arrivals.len(),
                        examples.display()
                    )));
                }
                arrivals.truncate(*n);
            }
            let stream =
                ExampleStream::new(arrivals).map_err(|e| CliError::Input(e.to_string()))?;
            let mut cfg = LearnerConfig::for_stream(*system, &stream);
            cfg.policy = *policy;
            if let Some(d) = cli.depth {
                cfg.depth_bound = d;
            }
            if let Some(bg) = background {
                cfg.background = load_program(bg)?;
            }
            let records = run_stream(&stream, &cfg).map_err(failed)?;
            let jsonl = trace_to_jsonl(&records);
            if let Some(path) = trace {
                write_file(path, &jsonl)?;
            }
            if json {
                out.write_all(jsonl.as_bytes())
                    .map_err(|source| CliError::Io {
                        path: PathBuf::from("<stdout>"),
                        source,
                    })?;
            } else {
                emit(out, render_golden(&records).trim_end())?;
            }
        }
        Command::Analyze {
            trace,
            window,
            report,
        } => {
            let loaded =
                parse_trace_jsonl(&read(trace)?).map_err(|e| CliError::Input(e.to_string()))?;
            if loaded.snapshots.is_empty() {
                return Err(CliError::Input(format!(
                    "{}: trace is empty",
                    trace.display()
                )));
            }
            let w = window.unwrap_or_else(|| default_window(loaded.snapshots.len()));
            let depth = cli
                .depth
                .unwrap_or_else(|| default_depth_bound(&loaded.examples));
            let r =
                convergence_report(&loaded.snapshots, &loaded.examples, w, depth).map_err(|e| {
                    match e {
                        crate::limits::LimitsError::Semantics(s) => failed(s),
                        other => CliError::Usage(other.to_string()),
                    }
                })?;
            let text = report_to_json(&r);
            if let Some(path) = report {
                write_file(path, &text)?;
            }
            if json {
                emit(out, &text)?;
            } else {
                emit(out, &summary(&r))?;
            }
        }
        Command::Reproduce { case, out: dir } => {
            let rep = reproduce(*case, cli.seed).map_err(failed)?;
            fs::create_dir_all(dir).map_err(|source| CliError::Io {
                path: dir.clone(),
                source,
            })?;
            write_reproduction(&rep, dir)?;
            if json {
                let runs: Vec<_> = rep
                    .runs
                    .iter()
                    .map(|r| json!({"label": r.label, "report": LimitReportJson::from(&r.report)}))
                    .collect();
                let v = json!({"case": case.to_string(), "passed": rep.passed(), "failures": rep.failures, "runs": runs});
                emit(
                    out,
                    &serde_json::to_string_pretty(&v).expect("serializable"),
                )?;
            } else {
                for r in &rep.runs {
                    emit(out, &format!("[{}]\n{}", r.label, summary(&r.report)))?;
                }
            }
            if !rep.passed() {
                for f in &rep.failures {
                    eprintln!("FAIL {f}");
                }
                return Ok(EXIT_FAILURE);
            }
        }
    }
    Ok(EXIT_OK)
}

fn summary(r: &LimitReport) -> String {
    let limit = crate::logic::render_program(&r.candidate_limit);
    format!(
        "verdict: {}\nwindow: {}\ncandidate limit:\n{}\ncovered: {}/{}\nlimit correct: {}",
        r.verdict,
        r.window_size,
        if limit.is_empty() {
            "(empty)".to_string()
        } else {
            limit
        },
        r.correctness.covered_count(),
        r.correctness.len(),
        r.limit_correct()
    )
}

fn write_reproduction(rep: &Reproduction, dir: &Path) -> Result<(), CliError> {
    for run in &rep.runs {
        let stem = if rep.runs.len() == 1 {
            rep.case.to_string()
        } else {
            format!("{}.{}", rep.case, run.label.replace('/', "-"))
        };
        if let Some(trace) = &run.trace {
            write_file(
                &dir.join(format!("{stem}.trace.jsonl")),
                &trace_to_jsonl(trace),
            )?;
        }
        write_file(
            &dir.join(format!("{stem}.report.json")),
            &report_to_json(&run.report),
        )?;
    }
    Ok(())
}
