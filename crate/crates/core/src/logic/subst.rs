use std::collections::BTreeMap;
use std::fmt;

use super::clause::Clause;
use super::term::{Literal, Term};

/// Finite map from variable names to terms, applied simultaneously.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    bindings: BTreeMap<String, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.bindings.get(var)
    }

    /// Binds `var`; returns false and leaves the substitution untouched if
    /// `var` is already bound.
    pub fn bind(&mut self, var: impl Into<String>, term: Term) -> bool {
        let var = var.into();
        if self.bindings.contains_key(&var) {
            return false;
        }
        self.bindings.insert(var, term);
        true
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Term)> {
        self.bindings.iter().map(|(k, v)| (k.as_str(), v))
    }
}

impl<S: Into<String>> FromIterator<(S, Term)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (S, Term)>>(iter: I) -> Self {
        let mut s = Substitution::new();
        for (v, t) in iter {
            s.bind(v, t);
        }
        s
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v} -> {t}")?;
        }
        f.write_str("}")
    }
}

/// One-way matching of `pattern` onto `target`, extending `theta`.
/// Variables in `target` are treated as constants.
pub fn match_term(pattern: &Term, target: &Term, theta: &mut Substitution) -> bool {
    match pattern {
        Term::Var(v) => match theta.get(v) {
            Some(bound) => bound == target,
            None => theta.bind(v.clone(), target.clone()),
        },
        Term::App { functor, args } => match target {
            Term::App {
                functor: g,
                args: targs,
            } if functor == g && args.len() == targs.len() => {
                args.iter().zip(targs).all(|(p, t)| match_term(p, t, theta))
            }
            _ => false,
        },
    }
}

pub fn match_literal(pattern: &Literal, target: &Literal, theta: &mut Substitution) -> bool {
    pattern.positive == target.positive
        && pattern.same_predicate(target)
        && pattern
            .args
            .iter()
            .zip(&target.args)
            .all(|(p, t)| match_term(p, t, theta))
}

/// Plotkin θ-subsumption: returns a witness θ with `c·θ ⊆ d` if one exists.
///
/// Complete backtracking search. The pattern is split into components that
/// share no variables, which are solved independently; within a component
/// the literal with the fewest candidate targets is matched first.
pub fn theta_subsumes(c: &Clause, d: &Clause) -> Option<Substitution> {
    theta_subsumes_from(c, d, &Substitution::new())
}

/// As [`theta_subsumes`], extending the given partial substitution.
pub fn theta_subsumes_from(c: &Clause, d: &Clause, init: &Substitution) -> Option<Substitution> {
    let targets: Vec<&Literal> = d.literals().collect();
    let mut theta = init.clone();
    for component in components(c) {
        let found = subsume_from(component, &targets, init.clone())?;
        for (v, t) in found.iter() {
            theta.bind(v, t.clone());
        }
    }
    Some(theta)
}

/// Groups literals into classes connected through shared variables.
fn components(c: &Clause) -> Vec<Vec<&Literal>> {
    let mut groups: Vec<(Vec<&str>, Vec<&Literal>)> = Vec::new();
    for l in c.literals() {
        let mut vars = Vec::new();
        l.collect_vars(&mut vars);
        let mut merged = (vars, vec![l]);
        let mut i = 0;
        while i < groups.len() {
            if groups[i].0.iter().any(|v| merged.0.contains(v)) {
                let (vs, ls) = groups.swap_remove(i);
                merged.0.extend(vs);
                merged.1.extend(ls);
            } else {
                i += 1;
            }
        }
        groups.push(merged);
    }
    groups.into_iter().map(|(_, ls)| ls).collect()
}

fn candidates<'a>(
    l: &Literal,
    targets: &[&'a Literal],
    theta: &Substitution,
) -> Vec<(&'a Literal, Substitution)> {
    targets
        .iter()
        .filter_map(|t| {
            let mut attempt = theta.clone();
            match_literal(l, t, &mut attempt).then_some((*t, attempt))
        })
        .collect()
}

fn subsume_from(
    mut pattern: Vec<&Literal>,
    targets: &[&Literal],
    theta: Substitution,
) -> Option<Substitution> {
    if pattern.is_empty() {
        return Some(theta);
    }
    let (pick, options) = pattern
        .iter()
        .enumerate()
        .map(|(i, l)| (i, candidates(l, targets, &theta)))
        .min_by_key(|(_, opts)| opts.len())
        .expect("nonempty pattern");
    pattern.swap_remove(pick);
    options
        .into_iter()
        .find_map(|(_, attempt)| subsume_from(pattern.clone(), targets, attempt))
}

/// Smallest subset of `c` that is θ-equivalent to it, unique up to
/// variable renaming.
pub fn condense(c: &Clause) -> Clause {
    condense_fixing(c, &[])
}

/// Condensation by substitutions that leave the `fixed` variables alone.
pub fn condense_fixing(c: &Clause, fixed: &[&str]) -> Clause {
    let mut c = c.clone();
    if c.is_ground() {
        return c;
    }
    let init: Substitution = fixed.iter().map(|v| (*v, Term::var(*v))).collect();
    loop {
        let smaller = c.literals().find_map(|l| {
            let rest = Clause::new(c.literals().filter(|m| *m != l).cloned());
            theta_subsumes_from(&c, &rest, &init).map(|theta| c.apply(&theta))
        });
        match smaller {
            Some(d) => c = d,
            None => return c,
        }
    }
}

/// Equality up to a bijective renaming of variables.
pub fn clause_variant_equal(c: &Clause, d: &Clause) -> bool {
    if c.len() != d.len() {
        return false;
    }
    let pattern: Vec<&Literal> = c.literals().collect();
    let targets: Vec<&Literal> = d.literals().collect();
    rename_from(&pattern, &targets, &Renaming::default())
}

#[derive(Clone, Default)]
struct Renaming {
    forward: BTreeMap<String, String>,
    backward: BTreeMap<String, String>,
}

impl Renaming {
    fn term(&mut self, p: &Term, t: &Term) -> bool {
        match (p, t) {
            (Term::Var(a), Term::Var(b)) => match (self.forward.get(a), self.backward.get(b)) {
                (Some(x), Some(y)) => x == b && y == a,
                (None, None) => {
                    self.forward.insert(a.clone(), b.clone());
                    self.backward.insert(b.clone(), a.clone());
                    true
                }
                _ => false,
            },
            (
                Term::App {
                    functor: f,
                    args: xs,
                },
                Term::App {
                    functor: g,
                    args: ys,
                },
            ) => f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| self.term(x, y)),
            _ => false,
        }
    }

    fn literal(&mut self, p: &Literal, t: &Literal) -> bool {
        p.positive == t.positive
            && p.same_predicate(t)
            && p.args.iter().zip(&t.args).all(|(x, y)| self.term(x, y))
    }
}

// Injective renaming of c into d with |c| = |d| forces c·ρ = d.
fn rename_from(pattern: &[&Literal], targets: &[&Literal], ren: &Renaming) -> bool {
    let Some((first, rest)) = pattern.split_first() else {
        return true;
    };
    targets.iter().any(|t| {
        let mut attempt = ren.clone();
        attempt.literal(first, t) && rename_from(rest, targets, &attempt)
    })
}
