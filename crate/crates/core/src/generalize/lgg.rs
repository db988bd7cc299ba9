use std::collections::{BTreeMap, BTreeSet};

use crate::logic::{clause_order, condense_fixing, Clause, Literal, Term};
use crate::metric::clause_distance;

/// Maps each disagreement pair `(t, s)` to the variable standing for it.
///
/// One table is shared across a whole clause-pair computation so that the
/// same pair always generalizes to the same variable.
#[derive(Clone, Debug, Default)]
pub struct PairTable {
    vars: BTreeMap<(Term, Term), String>,
    reserved: BTreeSet<String>,
    next: usize,
}

impl PairTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// A table whose fresh names avoid `reserved`.
    pub fn avoiding<'a>(reserved: impl IntoIterator<Item = &'a str>) -> Self {
        PairTable {
            reserved: reserved.into_iter().map(str::to_string).collect(),
            ..Self::default()
        }
    }

    pub fn lookup(&mut self, t: &Term, s: &Term) -> Term {
        if let Some(v) = self.vars.get(&(t.clone(), s.clone())) {
            return Term::var(v.clone());
        }
        let name = loop {
            let candidate = format!("X{}", self.next);
            self.next += 1;
            if !self.reserved.contains(&candidate) {
                break candidate;
            }
        };
        self.vars.insert((t.clone(), s.clone()), name.clone());
        Term::var(name)
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Term, &Term, &str)> {
        self.vars.iter().map(|((t, s), v)| (t, s, v.as_str()))
    }
}

pub fn lgg_terms(t: &Term, s: &Term, table: &mut PairTable) -> Term {
    if t == s {
        return t.clone();
    }
    match (t, s) {
        (Term::App { functor, args: xs }, Term::App { args: ys, .. }) if t.same_root(s) => {
            Term::app(
                functor.clone(),
                xs.iter()
                    .zip(ys)
                    .map(|(x, y)| lgg_terms(x, y, table))
                    .collect(),
            )
        }
        _ => table.lookup(t, s),
    }
}

/// `None` when signs or predicates differ.
pub fn lgg_literals(l: &Literal, m: &Literal, table: &mut PairTable) -> Option<Literal> {
    if l.positive != m.positive || !l.same_predicate(m) {
        return None;
    }
    Some(Literal {
        positive: l.positive,
        predicate: l.predicate.clone(),
        args: l
            .args
            .iter()
            .zip(&m.args)
            .map(|(a, b)| lgg_terms(a, b, table))
            .collect(),
    })
}

/// Plotkin's clause lgg: all pairwise literal lggs under one pair table,
/// condensed by substitutions over the fresh pair variables only.
pub fn lgg_clauses(c: &Clause, d: &Clause) -> Clause {
    lgg_clauses_with_table(c, d).0
}

pub fn lgg_clauses_with_table(c: &Clause, d: &Clause) -> (Clause, PairTable) {
    let mut reserved = c.variables();
    reserved.extend(d.variables());
    let mut table = PairTable::avoiding(reserved.iter().copied());
    let mut out = Vec::new();
    for l in c.literals() {
        for m in d.literals() {
            if let Some(g) = lgg_literals(l, m, &mut table) {
                out.push(g);
            }
        }
    }
    let g = condense_fixing(&Clause::new(out), &reserved);
    (g, table)
}

/// Pairs each clause of `a` with its nearest clause in `b` (ties broken by
/// canonical order) and keeps the nonempty lggs.
pub fn lgg_clause_sets(a: &[Clause], b: &[Clause]) -> Vec<Clause> {
    let mut targets: Vec<&Clause> = b.iter().filter(|c| !c.is_empty()).collect();
    targets.sort_by(|x, y| clause_order(x, y));
    let mut out: Vec<Clause> = Vec::new();
    for c in a.iter().filter(|c| !c.is_empty()) {
        let nearest = targets
            .iter()
            .map(|d| (clause_distance(c, d).expect("nonempty"), *d))
            .fold(None, |best: Option<(_, &Clause)>, (dist, d)| match best {
                Some((bd, _)) if bd <= dist => best,
                _ => Some((dist, d)),
            });
        if let Some((_, d)) = nearest {
            let g = lgg_clauses(c, d);
            if !g.is_empty() && !out.contains(&g) {
                out.push(g);
            }
        }
    }
    out
}
