use std::collections::BTreeSet;
use std::fmt;

use super::render;
use super::subst::Substitution;
use super::term::{Literal, Symbol, Term};
use super::LogicError;

/// A clause as a finite set of literals, read disjunctively.
///
/// The definite view (one positive head, negative body) is derived on
/// demand; the set view is what generalization works on.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    literals: BTreeSet<Literal>,
}

impl Clause {
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Clause {
        Clause {
            literals: literals.into_iter().collect(),
        }
    }

    /// `head :- body`, with the body given as positive atoms.
    pub fn definite(head: Literal, body: impl IntoIterator<Item = Literal>) -> Clause {
        let mut literals: BTreeSet<Literal> =
            body.into_iter().map(|b| b.to_atom().negate()).collect();
        literals.insert(head.to_atom());
        Clause { literals }
    }

    pub fn fact(atom: Literal) -> Clause {
        Clause::definite(atom, [])
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.literals.iter()
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn contains(&self, l: &Literal) -> bool {
        self.literals.contains(l)
    }

    pub fn is_subset(&self, other: &Clause) -> bool {
        self.literals.is_subset(&other.literals)
    }

    /// The unique positive literal, when the clause is definite.
    pub fn head(&self) -> Option<&Literal> {
        let mut pos = self.literals.iter().filter(|l| l.positive);
        match (pos.next(), pos.next()) {
            (Some(h), None) => Some(h),
            _ => None,
        }
    }

    pub fn is_definite(&self) -> bool {
        self.head().is_some()
    }

    /// Body atoms (the negated literals, returned with positive sign).
    pub fn body(&self) -> Vec<Literal> {
        self.literals
            .iter()
            .filter(|l| !l.positive)
            .map(Literal::to_atom)
            .collect()
    }

    pub fn is_ground(&self) -> bool {
        self.literals.iter().all(Literal::is_ground)
    }

    pub fn is_unit(&self) -> bool {
        self.literals.len() == 1
    }

    /// A ground definite unit clause.
    pub fn is_fact(&self) -> bool {
        self.is_unit() && self.is_definite() && self.is_ground()
    }

    pub fn is_tautology(&self) -> bool {
        self.literals
            .iter()
            .any(|l| !l.positive && self.literals.contains(&l.to_atom()))
    }

    /// Every head variable also occurs in the body.
    pub fn is_range_restricted(&self) -> bool {
        let Some(head) = self.head() else {
            return false;
        };
        let mut head_vars = Vec::new();
        head.collect_vars(&mut head_vars);
        let mut body_vars = Vec::new();
        for l in self.literals.iter().filter(|l| !l.positive) {
            l.collect_vars(&mut body_vars);
        }
        head_vars.iter().all(|v| body_vars.contains(v))
    }

    pub fn variables(&self) -> Vec<&str> {
        let mut out = Vec::new();
        for l in &self.literals {
            l.collect_vars(&mut out);
        }
        out
    }

    pub fn collect_symbols(&self, functions: &mut BTreeSet<Symbol>) {
        for l in &self.literals {
            for a in &l.args {
                a.collect_symbols(functions);
            }
        }
    }

    /// Largest argument depth over all literals.
    pub fn depth(&self) -> usize {
        self.literals.iter().map(Literal::depth).max().unwrap_or(0)
    }

    pub fn apply(&self, theta: &Substitution) -> Clause {
        Clause::new(self.literals.iter().map(|l| l.apply(theta)))
    }

    pub(crate) fn map_vars(&self, rename: &mut impl FnMut(&str) -> String) -> Clause {
        Clause::new(self.literals.iter().map(|l| l.map_vars(rename)))
    }

    pub fn subterms(&self) -> BTreeSet<Term> {
        let mut out = BTreeSet::new();
        for l in &self.literals {
            for a in &l.args {
                a.collect_subterms(&mut out);
            }
        }
        out
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render::render_clause(self))
    }
}

/// A finite set of definite clauses.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HornProgram {
    clauses: BTreeSet<Clause>,
}

impl HornProgram {
    pub fn new(clauses: impl IntoIterator<Item = Clause>) -> Result<HornProgram, LogicError> {
        let mut p = HornProgram::default();
        for c in clauses {
            p.insert(c)?;
        }
        Ok(p)
    }

    pub fn insert(&mut self, c: Clause) -> Result<bool, LogicError> {
        if !c.is_definite() {
            return Err(LogicError::NonDefinite(c.to_string()));
        }
        Ok(self.clauses.insert(c))
    }

    pub fn remove(&mut self, c: &Clause) -> bool {
        self.clauses.remove(c)
    }

    pub fn contains(&self, c: &Clause) -> bool {
        self.clauses.contains(c)
    }

    pub fn clauses(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter()
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn facts(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(|c| c.is_fact())
    }

    /// Non-unit clauses.
    pub fn rules(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(|c| !c.is_unit())
    }

    /// Function symbols (including constants) used anywhere in the program.
    pub fn signature(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        for c in &self.clauses {
            c.collect_symbols(&mut out);
        }
        out
    }

    /// Same program with one clause dropped.
    pub fn without(&self, c: &Clause) -> HornProgram {
        let mut p = self.clone();
        p.remove(c);
        p
    }
}

impl fmt::Display for HornProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render::render_program(self))
    }
}

/// Ordered arrivals of ground positive atoms. The example set at stage
/// `n` is the first `n + 1` arrivals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExampleStream {
    arrivals: Vec<Literal>,
}

impl ExampleStream {
    pub fn new(arrivals: impl IntoIterator<Item = Literal>) -> Result<ExampleStream, LogicError> {
        let arrivals: Vec<Literal> = arrivals.into_iter().collect();
        for a in &arrivals {
            if !a.positive {
                return Err(LogicError::NegativeExample(a.to_string()));
            }
            if !a.is_ground() {
                return Err(LogicError::NonGroundExample(a.to_string()));
            }
        }
        Ok(ExampleStream { arrivals })
    }

    pub fn arrivals(&self) -> &[Literal] {
        &self.arrivals
    }

    pub fn len(&self) -> usize {
        self.arrivals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrivals.is_empty()
    }

    /// `E_n`: the arrivals of stages `0..=n`.
    pub fn cumulative(&self, n: usize) -> &[Literal] {
        &self.arrivals[..(n + 1).min(self.arrivals.len())]
    }

    pub fn max_depth(&self) -> usize {
        self.arrivals.iter().map(Literal::depth).max().unwrap_or(0)
    }
}
