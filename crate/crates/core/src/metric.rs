//! Term distance, its lift to literals and clauses, the priority pre-order,
//! and simple clauses.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::logic::{Clause, HornProgram, Literal, Term};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricError {
    #[error("distance is undefined for the empty clause")]
    EmptyClause,
    #[error("clause `{0}` is not definite")]
    NonDefinite(String),
}

/// An exact non-negative rational in lowest terms.
///
/// Term distances only ever take values in `{0} ∪ {1/m}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DistanceValue {
    numer: u64,
    denom: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl DistanceValue {
    pub const ZERO: DistanceValue = DistanceValue { numer: 0, denom: 1 };
    pub const ONE: DistanceValue = DistanceValue { numer: 1, denom: 1 };

    pub fn new(numer: u64, denom: u64) -> DistanceValue {
        assert!(denom > 0, "zero denominator");
        if numer == 0 {
            return Self::ZERO;
        }
        let g = gcd(numer, denom);
        DistanceValue {
            numer: numer / g,
            denom: denom / g,
        }
    }

    pub fn reciprocal(m: u64) -> DistanceValue {
        DistanceValue::new(1, m)
    }

    pub fn numer(&self) -> u64 {
        self.numer
    }

    pub fn denom(&self) -> u64 {
        self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer == 0
    }

    /// `δ / (δ + 1)`.
    fn damp(self) -> DistanceValue {
        DistanceValue::new(self.numer, self.numer + self.denom)
    }

    pub fn to_f64(self) -> f64 {
        self.numer as f64 / self.denom as f64
    }
}

impl Ord for DistanceValue {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.numer as u128 * other.denom as u128).cmp(&(other.numer as u128 * self.denom as u128))
    }
}

impl PartialOrd for DistanceValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DistanceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom == 1 {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, self.denom)
        }
    }
}

fn damped_max<'a>(pairs: impl Iterator<Item = (&'a Term, &'a Term)>) -> DistanceValue {
    pairs
        .map(|(a, b)| term_distance(a, b))
        .max()
        .unwrap_or(DistanceValue::ZERO)
        .damp()
}

/// ρ on terms. Variables behave as nullary symbols distinct from every
/// functor and from each other.
pub fn term_distance(t: &Term, s: &Term) -> DistanceValue {
    if t == s {
        return DistanceValue::ZERO;
    }
    match (t, s) {
        (Term::App { args: xs, .. }, Term::App { args: ys, .. }) if t.same_root(s) => {
            damped_max(xs.iter().zip(ys))
        }
        _ => DistanceValue::ONE,
    }
}

/// Literal distance: 1 across signs or predicates, otherwise the literal
/// is read as a term rooted at its predicate.
pub fn literal_distance(l: &Literal, m: &Literal) -> DistanceValue {
    if l == m {
        return DistanceValue::ZERO;
    }
    if l.positive != m.positive || !l.same_predicate(m) {
        return DistanceValue::ONE;
    }
    damped_max(l.args.iter().zip(&m.args))
}

/// Hausdorff lift of [`literal_distance`] to clauses.
pub fn clause_distance(c: &Clause, d: &Clause) -> Result<DistanceValue, MetricError> {
    if c.is_empty() || d.is_empty() {
        return Err(MetricError::EmptyClause);
    }
    let directed = |a: &Clause, b: &Clause| {
        a.literals()
            .map(|l| b.literals().map(|m| literal_distance(l, m)).min().unwrap())
            .max()
            .unwrap()
    };
    Ok(directed(c, d).max(directed(d, c)))
}

/// `l ≺ m`: every subterm of `l` occurs in `m` (l has higher priority).
pub fn priority_precedes(l: &Literal, m: &Literal) -> bool {
    l.subterms().is_subset(&m.subterms())
}

/// Every subterm of every body literal occurs in the head.
pub fn is_simple(c: &Clause) -> Result<bool, MetricError> {
    let head = c
        .head()
        .ok_or_else(|| MetricError::NonDefinite(c.to_string()))?;
    let head_terms = head.subterms();
    Ok(c.body().iter().all(|b| b.subterms().is_subset(&head_terms)))
}

pub fn is_simple_program(p: &HornProgram) -> bool {
    p.clauses().all(|c| is_simple(c).unwrap_or(false))
}
