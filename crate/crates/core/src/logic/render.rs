//! Canonical text rendering.
//!
//! Variables are renamed `X0, X1, ...` in first-occurrence order (head
//! first, then body). Body atoms are ordered by their variable-blind
//! rendering, so variants of a clause render identically in all but
//! pathological symmetric cases.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write;

use super::clause::{Clause, HornProgram};
use super::term::{Literal, Term};

fn blind_term(t: &Term, out: &mut String) {
    match t {
        Term::Var(_) => out.push('_'),
        Term::App { functor, args } => {
            out.push_str(functor);
            if !args.is_empty() {
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    blind_term(a, out);
                }
                out.push(')');
            }
        }
    }
}

fn blind_literal(l: &Literal) -> String {
    let mut s = String::new();
    if !l.positive {
        s.push('~');
    }
    s.push_str(&l.predicate);
    if !l.args.is_empty() {
        s.push('(');
        for (i, a) in l.args.iter().enumerate() {
            if i > 0 {
                s.push_str(", ");
            }
            blind_term(a, &mut s);
        }
        s.push(')');
    }
    s
}

/// Literals in rendering order: positives first, then by variable-blind text.
fn ordered_literals(c: &Clause) -> Vec<&Literal> {
    let mut lits: Vec<(&Literal, String)> = c.literals().map(|l| (l, blind_literal(l))).collect();
    lits.sort_by(|(a, sa), (b, sb)| b.positive.cmp(&a.positive).then_with(|| sa.cmp(sb)));
    lits.into_iter().map(|(l, _)| l).collect()
}

/// Rename variables of `c` to `X0, X1, ...` in rendering order.
pub fn canonical_clause(c: &Clause) -> Clause {
    let order = ordered_literals(c);
    let mut names: HashMap<String, String> = HashMap::new();
    for l in &order {
        let mut vs = Vec::new();
        l.collect_vars(&mut vs);
        for v in vs {
            let next = format!("X{}", names.len());
            names.entry(v.to_string()).or_insert(next);
        }
    }
    c.map_vars(&mut |v| names[v].clone())
}

pub fn render_clause(c: &Clause) -> String {
    let canon = canonical_clause(c);
    let lits = ordered_literals(&canon);
    let mut out = String::new();
    if canon.is_definite() {
        let (head, body) = lits.split_first().expect("definite clause has a head");
        write!(out, "{head}").unwrap();
        for (i, b) in body.iter().enumerate() {
            out.push_str(if i == 0 { " :- " } else { ", " });
            write!(out, "{}", b.to_atom()).unwrap();
        }
        out.push('.');
    } else {
        out.push('{');
        for (i, l) in lits.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            write!(out, "{l}").unwrap();
        }
        out.push('}');
    }
    out
}

/// Sort key for the canonical clause order: head predicate name, arity,
/// head depth, then rendered text.
pub fn clause_order(a: &Clause, b: &Clause) -> Ordering {
    clause_key(a).cmp(&clause_key(b))
}

fn clause_key(c: &Clause) -> (String, usize, usize, String) {
    let lead = c
        .head()
        .or_else(|| c.literals().next())
        .cloned()
        .unwrap_or_else(|| Literal::atom("", vec![]));
    (
        lead.predicate.clone(),
        lead.args.len(),
        lead.depth(),
        render_clause(c),
    )
}

pub fn sorted_clauses<'a>(clauses: impl IntoIterator<Item = &'a Clause>) -> Vec<&'a Clause> {
    let mut v: Vec<_> = clauses.into_iter().map(|c| (c, clause_key(c))).collect();
    v.sort_by(|a, b| a.1.cmp(&b.1));
    v.into_iter().map(|(c, _)| c).collect()
}

/// Canonical program text: one clause per line, no trailing newline.
pub fn render_program(p: &HornProgram) -> String {
    render_clauses(p.clauses())
}

pub fn render_clauses<'a>(clauses: impl IntoIterator<Item = &'a Clause>) -> String {
    let mut lines: Vec<(String, usize, usize, String)> =
        clauses.into_iter().map(clause_key).collect();
    lines.sort();
    lines.dedup_by(|a, b| a.3 == b.3);
    lines
        .into_iter()
        .map(|k| k.3)
        .collect::<Vec<_>>()
        .join("\n")
}
