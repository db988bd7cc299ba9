use std::collections::BTreeSet;
use std::fmt;

use super::subst::Substitution;

/// A function or predicate symbol. Two symbols with the same name but
/// different arities are distinct.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

impl Symbol {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        Symbol {
            name: name.into(),
            arity,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

/// A first-order term. Constants are applications with no arguments.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    App { functor: String, args: Vec<Term> },
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Term {
        Term::App {
            functor: name.into(),
            args: Vec::new(),
        }
    }

    pub fn app(functor: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App {
            functor: functor.into(),
            args,
        }
    }

    /// `functor` applied unarily `n` times on top of `base`, e.g. `s^n(0)`.
    pub fn iterate(functor: &str, n: usize, base: Term) -> Term {
        (0..n).fold(base, |t, _| Term::app(functor, vec![t]))
    }

    /// The numeral `s^n(0)` used throughout the even-number examples.
    pub fn numeral(n: usize) -> Term {
        Term::iterate("s", n, Term::constant("0"))
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    /// Root symbol; `None` for variables.
    pub fn symbol(&self) -> Option<Symbol> {
        match self {
            Term::Var(_) => None,
            Term::App { functor, args } => Some(Symbol::new(functor.clone(), args.len())),
        }
    }

    pub fn same_root(&self, other: &Term) -> bool {
        match (self, other) {
            (
                Term::App {
                    functor: f,
                    args: a,
                },
                Term::App {
                    functor: g,
                    args: b,
                },
            ) => f == g && a.len() == b.len(),
            _ => false,
        }
    }

    /// Number of nodes on the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App { args, .. } => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App { args, .. } => args.iter().all(Term::is_ground),
        }
    }

    pub fn subterms(&self) -> BTreeSet<Term> {
        let mut out = BTreeSet::new();
        self.collect_subterms(&mut out);
        out
    }

    pub(crate) fn collect_subterms(&self, out: &mut BTreeSet<Term>) {
        if out.insert(self.clone()) {
            if let Term::App { args, .. } = self {
                for a in args {
                    a.collect_subterms(out);
                }
            }
        }
    }

    pub fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Term::Var(v) => {
                if !out.contains(&v.as_str()) {
                    out.push(v);
                }
            }
            Term::App { args, .. } => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn collect_symbols(&self, out: &mut BTreeSet<Symbol>) {
        if let Term::App { functor, args } = self {
            out.insert(Symbol::new(functor.clone(), args.len()));
            args.iter().for_each(|a| a.collect_symbols(out));
        }
    }

    pub fn apply(&self, theta: &Substitution) -> Term {
        match self {
            Term::Var(v) => theta.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::App { functor, args } => Term::App {
                functor: functor.clone(),
                args: args.iter().map(|a| a.apply(theta)).collect(),
            },
        }
    }

    /// Rename variables through `rename`; variables it does not know are kept.
    pub(crate) fn map_vars(&self, rename: &mut impl FnMut(&str) -> String) -> Term {
        match self {
            Term::Var(v) => Term::Var(rename(v)),
            Term::App { functor, args } => Term::App {
                functor: functor.clone(),
                args: args.iter().map(|a| a.map_vars(rename)).collect(),
            },
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::App { functor, args } => {
                f.write_str(functor)?;
                write_args(f, args)
            }
        }
    }
}

pub(crate) fn write_args(f: &mut fmt::Formatter<'_>, args: &[Term]) -> fmt::Result {
    if args.is_empty() {
        return Ok(());
    }
    f.write_str("(")?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

/// A possibly negated atom.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub positive: bool,
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Literal {
    pub fn atom(predicate: impl Into<String>, args: Vec<Term>) -> Literal {
        Literal {
            positive: true,
            predicate: predicate.into(),
            args,
        }
    }

    pub fn negated(predicate: impl Into<String>, args: Vec<Term>) -> Literal {
        Literal {
            positive: false,
            predicate: predicate.into(),
            args,
        }
    }

    pub fn negate(&self) -> Literal {
        Literal {
            positive: !self.positive,
            ..self.clone()
        }
    }

    /// The same atom with positive sign.
    pub fn to_atom(&self) -> Literal {
        Literal {
            positive: true,
            ..self.clone()
        }
    }

    pub fn symbol(&self) -> Symbol {
        Symbol::new(self.predicate.clone(), self.args.len())
    }

    pub fn same_predicate(&self, other: &Literal) -> bool {
        self.predicate == other.predicate && self.args.len() == other.args.len()
    }

    /// Maximum depth over the argument terms; 0 for propositional atoms.
    pub fn depth(&self) -> usize {
        self.args.iter().map(Term::depth).max().unwrap_or(0)
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }

    /// Union of the subterms of every argument.
    pub fn subterms(&self) -> BTreeSet<Term> {
        let mut out = BTreeSet::new();
        for a in &self.args {
            a.collect_subterms(&mut out);
        }
        out
    }

    pub fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        self.args.iter().for_each(|a| a.collect_vars(out));
    }

    pub fn apply(&self, theta: &Substitution) -> Literal {
        Literal {
            positive: self.positive,
            predicate: self.predicate.clone(),
            args: self.args.iter().map(|a| a.apply(theta)).collect(),
        }
    }

    pub(crate) fn map_vars(&self, rename: &mut impl FnMut(&str) -> String) -> Literal {
        Literal {
            positive: self.positive,
            predicate: self.predicate.clone(),
            args: self.args.iter().map(|a| a.map_vars(rename)).collect(),
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("~")?;
        }
        f.write_str(&self.predicate)?;
        write_args(f, &self.args)
    }
}
