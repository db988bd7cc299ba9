//! Depth-bounded Herbrand semantics: bounded universe, the immediate
//! consequence step, least-model fixpoint and coverage.
//!
//! Grounding joins body literals against the current atom set; only
//! variables that occur in the head alone are enumerated over the bounded
//! universe. Both produce exactly the ground instances whose body is
//! contained in the atom set.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::logic::{match_literal, Clause, HornProgram, Literal, Substitution, Symbol, Term};

/// Safety valve for programs whose bounded model explodes (e.g. binary
/// function symbols under a generous depth bound).
pub const DEFAULT_ATOM_LIMIT: usize = 200_000;
pub const UNIVERSE_LIMIT: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("depth bound must be positive")]
    ZeroDepth,
    #[error("signature has no constant; the Herbrand universe is empty")]
    NoConstant,
    #[error("bounded universe at depth {depth} exceeds {limit} terms")]
    UniverseTooLarge { depth: usize, limit: usize },
    #[error(
        "example `{example}` has depth {depth} > bound {bound}; rerun with --depth {depth} or more"
    )]
    ExampleTooDeep {
        example: String,
        depth: usize,
        bound: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedModel {
    pub depth_bound: usize,
    pub atoms: BTreeSet<Literal>,
    /// The fixpoint was reached (false only when the atom limit cut it short).
    pub saturated: bool,
}

impl BoundedModel {
    pub fn contains(&self, atom: &Literal) -> bool {
        self.atoms.contains(atom)
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

/// All ground terms over `signature` with depth at most `depth`.
pub fn bounded_universe(
    signature: &BTreeSet<Symbol>,
    depth: usize,
) -> Result<BTreeSet<Term>, SemanticsError> {
    if depth == 0 {
        return Err(SemanticsError::ZeroDepth);
    }
    let constants: Vec<Term> = signature
        .iter()
        .filter(|s| s.arity == 0)
        .map(|s| Term::constant(s.name.clone()))
        .collect();
    if constants.is_empty() {
        return Err(SemanticsError::NoConstant);
    }
    let functions: Vec<&Symbol> = signature.iter().filter(|s| s.arity > 0).collect();
    let mut level: BTreeSet<Term> = constants.iter().cloned().collect();
    for d in 2..=depth {
        let below: Vec<Term> = level.iter().cloned().collect();
        let mut next: BTreeSet<Term> = constants.iter().cloned().collect();
        for f in &functions {
            let count = (below.len() as u128).saturating_pow(f.arity as u32);
            if count + next.len() as u128 > UNIVERSE_LIMIT as u128 {
                return Err(SemanticsError::UniverseTooLarge {
                    depth: d,
                    limit: UNIVERSE_LIMIT,
                });
            }
            for args in product(&below, f.arity) {
                next.insert(Term::app(f.name.clone(), args));
            }
        }
        if next.len() == level.len() {
            break;
        }
        level = next;
    }
    Ok(level)
}

fn product(items: &[Term], k: usize) -> Vec<Vec<Term>> {
    let mut out: Vec<Vec<Term>> = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                items.iter().map(move |t| {
                    let mut v = prefix.clone();
                    v.push(t.clone());
                    v
                })
            })
            .collect();
    }
    out
}

struct Grounder<'a> {
    index: BTreeMap<(&'a str, usize), Vec<&'a Literal>>,
    signature: BTreeSet<Symbol>,
    universe: Option<BTreeSet<Term>>,
    depth: usize,
}

impl<'a> Grounder<'a> {
    fn new(p: &HornProgram, atoms: &'a BTreeSet<Literal>, depth: usize) -> Self {
        let mut index: BTreeMap<(&str, usize), Vec<&Literal>> = BTreeMap::new();
        let mut signature = p.signature();
        for a in atoms {
            index
                .entry((&a.predicate, a.args.len()))
                .or_default()
                .push(a);
            for t in &a.args {
                t.collect_symbols(&mut signature);
            }
        }
        Grounder {
            index,
            signature,
            universe: None,
            depth,
        }
    }

    fn universe(&mut self) -> Result<Vec<Term>, SemanticsError> {
        if self.universe.is_none() {
            self.universe = Some(match bounded_universe(&self.signature, self.depth) {
                Err(SemanticsError::NoConstant) => BTreeSet::new(),
                other => other?,
            });
        }
        Ok(self.universe.as_ref().unwrap().iter().cloned().collect())
    }

    fn body_matches(&self, body: &[Literal], theta: Substitution, out: &mut Vec<Substitution>) {
        let Some((first, rest)) = body.split_first() else {
            out.push(theta);
            return;
        };
        let Some(candidates) = self
            .index
            .get(&(first.predicate.as_str(), first.args.len()))
        else {
            return;
        };
        for atom in candidates {
            let mut attempt = theta.clone();
            if match_literal(first, atom, &mut attempt) {
                self.body_matches(rest, attempt, out);
            }
        }
    }

    fn fire(&mut self, c: &Clause, out: &mut BTreeSet<Literal>) -> Result<(), SemanticsError> {
        let head = c.head().expect("programs hold definite clauses");
        let mut matches = Vec::new();
        self.body_matches(&c.body(), Substitution::new(), &mut matches);
        if matches.is_empty() {
            return Ok(());
        }
        let mut head_vars = Vec::new();
        head.collect_vars(&mut head_vars);
        for theta in matches {
            let free: Vec<&str> = head_vars
                .iter()
                .copied()
                .filter(|v| theta.get(v).is_none())
                .collect();
            if free.is_empty() {
                let h = head.apply(&theta);
                if h.depth() <= self.depth {
                    out.insert(h);
                }
                continue;
            }
            let universe = self.universe()?;
            for values in product(&universe, free.len()) {
                let mut full = theta.clone();
                for (v, t) in free.iter().zip(values) {
                    full.bind(*v, t);
                }
                let h = head.apply(&full);
                if h.depth() <= self.depth {
                    out.insert(h);
                }
            }
        }
        Ok(())
    }
}

/// One application of the immediate-consequence operator, unioned with
/// the input (so the step is inflationary). Heads deeper than the bound
/// are dropped.
pub fn tp_step(
    p: &HornProgram,
    atoms: &BTreeSet<Literal>,
    depth_bound: usize,
) -> Result<BTreeSet<Literal>, SemanticsError> {
    if depth_bound == 0 {
        return Err(SemanticsError::ZeroDepth);
    }
    let mut out = atoms.clone();
    let mut g = Grounder::new(p, atoms, depth_bound);
    for c in p.clauses() {
        g.fire(c, &mut out)?;
    }
    Ok(out)
}

pub fn least_model_bounded(
    p: &HornProgram,
    depth_bound: usize,
) -> Result<BoundedModel, SemanticsError> {
    least_model_with_limit(p, depth_bound, DEFAULT_ATOM_LIMIT)
}

pub fn least_model_with_limit(
    p: &HornProgram,
    depth_bound: usize,
    max_atoms: usize,
) -> Result<BoundedModel, SemanticsError> {
    let mut atoms = BTreeSet::new();
    loop {
        let next = tp_step(p, &atoms, depth_bound)?;
        if next.len() == atoms.len() {
            return Ok(BoundedModel {
                depth_bound,
                atoms,
                saturated: true,
            });
        }
        if next.len() > max_atoms {
            log::warn!(
                "bounded model exceeded {max_atoms} atoms at depth {depth_bound}; truncating"
            );
            return Ok(BoundedModel {
                depth_bound,
                atoms: next,
                saturated: false,
            });
        }
        atoms = next;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageReport {
    pub entries: Vec<(Literal, bool)>,
}

impl CoverageReport {
    pub fn all_covered(&self) -> bool {
        self.entries.iter().all(|(_, c)| *c)
    }

    pub fn covered_count(&self) -> usize {
        self.entries.iter().filter(|(_, c)| *c).count()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn check_depth(examples: &[Literal], depth_bound: usize) -> Result<(), SemanticsError> {
    for e in examples {
        if e.depth() > depth_bound {
            return Err(SemanticsError::ExampleTooDeep {
                example: e.to_string(),
                depth: e.depth(),
                bound: depth_bound,
            });
        }
    }
    Ok(())
}

/// Coverage of each example by the bounded least model.
pub fn covers(
    p: &HornProgram,
    examples: &[Literal],
    depth_bound: usize,
) -> Result<CoverageReport, SemanticsError> {
    check_depth(examples, depth_bound)?;
    let model = least_model_bounded(p, depth_bound)?;
    Ok(coverage_in(&model, examples))
}

pub fn coverage_in(model: &BoundedModel, examples: &[Literal]) -> CoverageReport {
    CoverageReport {
        entries: examples
            .iter()
            .map(|e| (e.clone(), model.contains(e)))
            .collect(),
    }
}
