//! Python bindings: terms, clauses, programs, learner runs and limit reports.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ::prigolem::cases::{reproduce as reproduce_case, BuiltinCase};
use ::prigolem::learner::default_depth_bound;
use ::prigolem::limits::default_window;
use ::prigolem::logic::{
    self, parse_atom, parse_clauses, parse_program, parse_term, render_clause, render_program,
};
use ::prigolem::metric::{is_simple, is_simple_program};
use ::prigolem::report::report_to_json;
use ::prigolem::{ExampleStream, LearnerConfig, LearnerSystem, SaturationPolicy};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(frozen, from_py_object, eq, hash, module = "prigolem")]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Term(logic::Term);

#[pymethods]
impl Term {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse_term(text).map(Term).map_err(value_err)
    }

    #[getter]
    fn depth(&self) -> usize {
        self.0.depth()
    }

    #[getter]
    fn is_ground(&self) -> bool {
        self.0.is_ground()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Term('{}')", self.0)
    }
}

#[pyclass(frozen, skip_from_py_object, eq, hash, module = "prigolem")]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Clause(logic::Clause);

#[pymethods]
impl Clause {
    /// Parses a single clause; `:- ` rules and facts both accepted.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        let mut cs = parse_clauses(text).map_err(value_err)?;
        match cs.len() {
            1 => Ok(Clause(cs.remove(0))),
            n => Err(PyValueError::new_err(format!(
                "expected one clause, found {n}"
            ))),
        }
    }

    #[getter]
    fn is_definite(&self) -> bool {
        self.0.is_definite()
    }

    fn is_simple(&self) -> PyResult<bool> {
        is_simple(&self.0).map_err(value_err)
    }

    fn variant_of(&self, other: &Clause) -> bool {
        logic::clause_variant_equal(&self.0, &other.0)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        render_clause(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Clause('{}')", render_clause(&self.0))
    }
}

#[pyclass(frozen, skip_from_py_object, module = "prigolem")]
#[derive(Clone)]
pub struct Program(logic::HornProgram);

#[pymethods]
impl Program {
    #[new]
    #[pyo3(signature = (text = ""))]
    fn new(text: &str) -> PyResult<Self> {
        parse_program(text).map(Program).map_err(value_err)
    }

    #[getter]
    fn clauses(&self) -> Vec<Clause> {
        logic::sorted_clauses(self.0.clauses())
            .into_iter()
            .cloned()
            .map(Clause)
            .collect()
    }

    #[getter]
    fn is_simple(&self) -> bool {
        is_simple_program(&self.0)
    }

    fn least_model(&self, depth: usize) -> PyResult<Vec<String>> {
        least_model(self, depth)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        render_program(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Program({:?})", render_program(&self.0))
    }
}

#[pyclass(frozen, get_all, module = "prigolem")]
pub struct Stage {
    stage: usize,
    example: String,
    action: String,
    program: Program,
    simple: bool,
}

#[pymethods]
impl Stage {
    fn __repr__(&self) -> String {
        format!("Stage({}, {}, {})", self.stage, self.action, self.example)
    }
}

#[pyclass(frozen, module = "prigolem")]
pub struct LimitReport(::prigolem::LimitReport);

#[pymethods]
impl LimitReport {
    #[getter]
    fn verdict(&self) -> String {
        self.0.verdict.to_string()
    }

    #[getter]
    fn window_size(&self) -> usize {
        self.0.window_size
    }

    #[getter]
    fn candidate_limit(&self) -> Program {
        Program(self.0.candidate_limit.clone())
    }

    #[getter]
    fn limit_correct(&self) -> bool {
        self.0.limit_correct()
    }

    #[getter]
    fn covered(&self) -> (usize, usize) {
        (self.0.correctness.covered_count(), self.0.correctness.len())
    }

    #[getter]
    fn candidate_model(&self) -> Vec<String> {
        self.0
            .candidate_model
            .atoms
            .iter()
            .map(|a| a.to_string())
            .collect()
    }

    fn to_json(&self) -> String {
        report_to_json(&self.0)
    }

    fn __repr__(&self) -> String {
        format!(
            "LimitReport(verdict={}, window={})",
            self.0.verdict, self.0.window_size
        )
    }
}

#[derive(FromPyObject)]
enum TermArg {
    Term(Term),
    Text(String),
}

impl TermArg {
    fn into_term(self) -> PyResult<logic::Term> {
        match self {
            TermArg::Term(t) => Ok(t.0),
            TermArg::Text(s) => parse_term(&s).map_err(value_err),
        }
    }
}

/// Exact distance as a `fractions.Fraction`.
#[pyfunction]
fn distance<'py>(py: Python<'py>, left: TermArg, right: TermArg) -> PyResult<Bound<'py, PyAny>> {
    let d = ::prigolem::term_distance(&left.into_term()?, &right.into_term()?);
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((d.numer(), d.denom()))
}

#[pyfunction]
fn lgg(left: &Clause, right: &Clause) -> Clause {
    Clause(::prigolem::lgg_clauses(&left.0, &right.0))
}

#[pyfunction]
fn least_model(program: &Program, depth: usize) -> PyResult<Vec<String>> {
    let m = ::prigolem::least_model_bounded(&program.0, depth).map_err(value_err)?;
    Ok(m.atoms.iter().map(|a| a.to_string()).collect())
}

fn parse_examples(examples: &[String]) -> PyResult<Vec<logic::Literal>> {
    examples
        .iter()
        .map(|e| parse_atom(e).map_err(value_err))
        .collect()
}

#[pyfunction]
#[pyo3(signature = (examples, system = "golem", policy = "cnf", depth = None, background = None))]
fn run_stream(
    examples: Vec<String>,
    system: &str,
    policy: &str,
    depth: Option<usize>,
    background: Option<&Program>,
) -> PyResult<Vec<Stage>> {
    let stream = ExampleStream::new(parse_examples(&examples)?).map_err(value_err)?;
    let mut cfg =
        LearnerConfig::for_stream(system.parse::<LearnerSystem>().map_err(value_err)?, &stream);
    cfg.policy = policy.parse::<SaturationPolicy>().map_err(value_err)?;
    if let Some(d) = depth {
        cfg.depth_bound = d;
    }
    if let Some(bg) = background {
        cfg.background = bg.0.clone();
    }
    let trace = ::prigolem::run_stream(&stream, &cfg).map_err(value_err)?;
    Ok(trace
        .into_iter()
        .map(|r| Stage {
            stage: r.stage,
            example: r.example.to_string(),
            action: r.action.to_string(),
            program: Program(r.program),
            simple: r.simple,
        })
        .collect())
}

#[pyfunction]
#[pyo3(signature = (snapshots, examples, window = None, depth = None))]
fn convergence_report(
    snapshots: Vec<PyRef<'_, Program>>,
    examples: Vec<String>,
    window: Option<usize>,
    depth: Option<usize>,
) -> PyResult<LimitReport> {
    let programs: Vec<logic::HornProgram> = snapshots.iter().map(|p| p.0.clone()).collect();
    let atoms = parse_examples(&examples)?;
    let w = window.unwrap_or_else(|| default_window(programs.len()));
    let d = depth.unwrap_or_else(|| default_depth_bound(&atoms));
    ::prigolem::convergence_report(&programs, &atoms, w, d)
        .map(LimitReport)
        .map_err(value_err)
}

/// Runs a built-in case; returns the list of failed checks (empty on success).
#[pyfunction]
#[pyo3(signature = (case, seed = 0))]
fn reproduce(case: &str, seed: u64) -> PyResult<Vec<String>> {
    let case: BuiltinCase = case.parse().map_err(value_err)?;
    Ok(reproduce_case(case, seed).map_err(value_err)?.failures)
}

#[pymodule(name = "prigolem")]
fn prigolem_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Term>()?;
    m.add_class::<Clause>()?;
    m.add_class::<Program>()?;
    m.add_class::<Stage>()?;
    m.add_class::<LimitReport>()?;
    m.add_function(wrap_pyfunction!(distance, m)?)?;
    m.add_function(wrap_pyfunction!(lgg, m)?)?;
    m.add_function(wrap_pyfunction!(least_model, m)?)?;
    m.add_function(wrap_pyfunction!(run_stream, m)?)?;
    m.add_function(wrap_pyfunction!(convergence_report, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce, m)?)?;
    Ok(())
}
