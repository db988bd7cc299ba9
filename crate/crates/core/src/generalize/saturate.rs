use std::fmt;
use std::str::FromStr;

use crate::logic::{clause_order, Clause, HornProgram, Literal};
use crate::semantics::least_model_bounded;

use super::GeneralizeError;

/// Upper bound on the number of clauses the negated-background CNF may expand to.
pub const MAX_SATURATION_CLAUSES: usize = 4096;

/// How the background is folded into the example before generalization.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SaturationPolicy {
    /// `¬(∧ ground rules) ∨ e` expanded to CNF, tautologies removed; when
    /// the background has no ground rules the body is its facts.
    #[default]
    Cnf,
    /// `{¬q : q ∈ bounded model of background} ∪ {e}`.
    GroundAtoms,
}

impl fmt::Display for SaturationPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SaturationPolicy::Cnf => "cnf",
            SaturationPolicy::GroundAtoms => "ground",
        })
    }
}

impl FromStr for SaturationPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cnf" => Ok(SaturationPolicy::Cnf),
            "ground" => Ok(SaturationPolicy::GroundAtoms),
            other => Err(format!("unknown policy `{other}` (expected cnf|ground)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Saturation {
    Clauses(Vec<Clause>),
    /// The background already derives the example.
    AlreadyCovered,
}

impl Saturation {
    pub fn clauses(&self) -> &[Clause] {
        match self {
            Saturation::Clauses(c) => c,
            Saturation::AlreadyCovered => &[],
        }
    }
}

pub fn saturate(
    background: &HornProgram,
    e: &Literal,
    policy: SaturationPolicy,
    depth_bound: usize,
) -> Result<Saturation, GeneralizeError> {
    if !e.positive || !e.is_ground() {
        return Err(GeneralizeError::NotGroundAtom(e.to_string()));
    }
    let model = least_model_bounded(background, depth_bound)?;
    if model.contains(e) {
        return Ok(Saturation::AlreadyCovered);
    }
    let mut clauses = match policy {
        SaturationPolicy::GroundAtoms => {
            let body = model.atoms.iter().map(Literal::negate);
            vec![Clause::new(body.chain([e.clone()]))]
        }
        SaturationPolicy::Cnf => cnf_saturation(background, e)?,
    };
    clauses.sort_by(clause_order);
    clauses.dedup();
    Ok(Saturation::Clauses(clauses))
}

fn cnf_saturation(background: &HornProgram, e: &Literal) -> Result<Vec<Clause>, GeneralizeError> {
    let rules: Vec<&Clause> = background.rules().filter(|c| c.is_ground()).collect();
    if rules.is_empty() {
        let body = background
            .facts()
            .filter_map(|f| f.head())
            .map(Literal::negate);
        return Ok(vec![Clause::new(body.chain([e.clone()]))]);
    }
    // ¬R for a clause R = {l1..lk} is the conjunction ¬l1 ∧ .. ∧ ¬lk; the
    // disjunction of these with e distributes into one clause per choice.
    let mut partial: Vec<Vec<Literal>> = vec![vec![e.clone()]];
    for r in rules {
        let mut next = Vec::new();
        for prefix in &partial {
            for l in r.literals() {
                let mut v = prefix.clone();
                v.push(l.negate());
                next.push(v);
            }
        }
        if next.len() > MAX_SATURATION_CLAUSES {
            return Err(GeneralizeError::SaturationTooLarge(MAX_SATURATION_CLAUSES));
        }
        partial = next;
    }
    Ok(partial
        .into_iter()
        .map(Clause::new)
        .filter(|c| !c.is_tautology())
        .collect())
}
