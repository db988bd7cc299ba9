//! Seeded generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use prigolem::logic::{Clause, HornProgram, Literal, Term};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Function symbols available to the generators: (name, arity).
#[derive(Clone, Debug)]
pub struct Sig {
    pub functions: Vec<(&'static str, usize)>,
    pub vars: Vec<&'static str>,
}

impl Sig {
    pub fn numerals() -> Sig {
        Sig {
            functions: vec![("0", 0), ("s", 1)],
            vars: vec![],
        }
    }

    pub fn binary() -> Sig {
        Sig {
            functions: vec![("0", 0), ("s", 1), ("f", 2)],
            vars: vec![],
        }
    }

    pub fn rich() -> Sig {
        Sig {
            functions: vec![("a", 0), ("b", 0), ("s", 1), ("f", 2)],
            vars: vec!["X", "Y", "Z"],
        }
    }

    pub fn with_vars(mut self, vars: &[&'static str]) -> Sig {
        self.vars = vars.to_vec();
        self
    }
}

/// Random term of depth at most `depth` (depth counts nodes).
pub fn term(r: &mut Rng8, sig: &Sig, depth: usize) -> Term {
    let leaves: Vec<Term> = sig
        .functions
        .iter()
        .filter(|(_, a)| *a == 0)
        .map(|(n, _)| Term::constant(*n))
        .chain(sig.vars.iter().map(|v| Term::var(*v)))
        .collect();
    let compound: Vec<(&str, usize)> = sig
        .functions
        .iter()
        .copied()
        .filter(|(_, a)| *a > 0)
        .collect();
    if depth <= 1 || compound.is_empty() || r.random_bool(0.3) {
        return leaves[r.random_range(0..leaves.len())].clone();
    }
    let (f, arity) = compound[r.random_range(0..compound.len())];
    Term::app(f, (0..arity).map(|_| term(r, sig, depth - 1)).collect())
}

pub fn ground_term(r: &mut Rng8, sig: &Sig, depth: usize) -> Term {
    let g = Sig {
        vars: vec![],
        ..sig.clone()
    };
    term(r, &g, depth)
}

/// Replaces one random position of `t` by a fresh random term.
pub fn mutate(r: &mut Rng8, sig: &Sig, t: &Term, depth: usize) -> Term {
    match t {
        Term::App { functor, args } if !args.is_empty() && depth > 1 && r.random_bool(0.75) => {
            let i = r.random_range(0..args.len());
            let mut args = args.clone();
            args[i] = mutate(r, sig, &args[i], depth - 1);
            Term::app(functor.clone(), args)
        }
        _ => term(r, sig, depth),
    }
}

/// Copy of `t` that agrees with it on the top `m` levels and differs at
/// level `m + 1` along the first argument spine.
pub fn diverge_below(t: &Term, m: usize) -> Term {
    if m == 0 {
        return Term::constant("zz_other");
    }
    match t {
        Term::App { functor, args } if !args.is_empty() => {
            let mut args = args.clone();
            args[0] = diverge_below(&args[0], m - 1);
            Term::app(functor.clone(), args)
        }
        _ => unreachable!("term too shallow"),
    }
}

pub fn chain(m: usize) -> Term {
    // f(s(f(…)), a) so both unary and binary nodes appear on the spine
    if m == 0 {
        return Term::constant("a");
    }
    if m.is_multiple_of(2) {
        Term::app("s", vec![chain(m - 1)])
    } else {
        Term::app("f", vec![chain(m - 1), Term::constant("b")])
    }
}

/// Independent ρ: `1/m` where `m` is the shallowest level (root = 1) at
/// which the two terms carry different symbols; 0 if equal.
pub fn rho_oracle(t: &Term, s: &Term) -> (u64, u64) {
    let mut level: Vec<(&Term, &Term)> = vec![(t, s)];
    let mut m = 1;
    while !level.is_empty() {
        let mut next = Vec::new();
        for (a, b) in level {
            match (a, b) {
                (Term::Var(x), Term::Var(y)) if x == y => {}
                (
                    Term::App {
                        functor: f,
                        args: xs,
                    },
                    Term::App {
                        functor: g,
                        args: ys,
                    },
                ) if f == g && xs.len() == ys.len() => {
                    next.extend(xs.iter().zip(ys));
                }
                _ => return (1, m),
            }
        }
        level = next;
        m += 1;
    }
    (0, 1)
}

/// Random literal over p/1 and q/2.
pub fn literal(r: &mut Rng8, sig: &Sig, depth: usize) -> Literal {
    if r.random_bool(0.5) {
        Literal::atom("p", vec![term(r, sig, depth)])
    } else {
        Literal::atom("q", vec![term(r, sig, depth), term(r, sig, depth)])
    }
}

/// Random definite clause with up to `max_body` body atoms.
pub fn definite_clause(r: &mut Rng8, sig: &Sig, depth: usize, max_body: usize) -> Clause {
    let head = literal(r, sig, depth);
    let n = r.random_range(0..=max_body);
    Clause::definite(head, (0..n).map(|_| literal(r, sig, depth)))
}

fn subterm_list(t: &Term, out: &mut Vec<Term>) {
    out.push(t.clone());
    if let Term::App { args, .. } = t {
        for a in args {
            subterm_list(a, out);
        }
    }
}

pub fn subterms_of(l: &Literal) -> BTreeSet<Term> {
    let mut v = Vec::new();
    for a in &l.args {
        subterm_list(a, &mut v);
    }
    v.into_iter().collect()
}

/// Independent simplicity check: body subterms all occur in the head.
pub fn simple_oracle(c: &Clause) -> bool {
    let heads: Vec<&Literal> = c.literals().filter(|l| l.positive).collect();
    let [head] = heads.as_slice() else {
        return false;
    };
    let hs = subterms_of(head);
    c.literals()
        .filter(|l| !l.positive)
        .all(|b| subterms_of(b).is_subset(&hs))
}

/// Random simple definite clause: body arguments are drawn from the
/// subterms of the head.
pub fn simple_clause(r: &mut Rng8, sig: &Sig, depth: usize, max_body: usize) -> Clause {
    let head = literal(r, sig, depth);
    let pool: Vec<Term> = subterms_of(&head).into_iter().collect();
    let pick = |r: &mut Rng8| pool[r.random_range(0..pool.len())].clone();
    let n = r.random_range(0..=max_body);
    let body: Vec<Literal> = (0..n)
        .map(|_| {
            if r.random_bool(0.5) {
                Literal::atom("p", vec![pick(r)])
            } else {
                Literal::atom("q", vec![pick(r), pick(r)])
            }
        })
        .collect();
    Clause::definite(head, body)
}

/// Random simple program with at least one ground fact.
pub fn simple_program(r: &mut Rng8, sig: &Sig, depth: usize) -> HornProgram {
    let ground = Sig {
        vars: vec![],
        ..sig.clone()
    };
    let mut clauses = vec![Clause::fact(literal(r, &ground, depth))];
    for _ in 0..r.random_range(0..3) {
        clauses.push(Clause::fact(literal(r, &ground, depth)));
    }
    for _ in 0..r.random_range(1..4) {
        clauses.push(simple_clause(r, sig, depth, 2));
    }
    HornProgram::new(clauses).unwrap()
}

fn symbols_of(t: &Term, out: &mut BTreeSet<(String, usize)>) {
    if let Term::App { functor, args } = t {
        out.insert((functor.clone(), args.len()));
        for a in args {
            symbols_of(a, out);
        }
    }
}

/// Every ground term of depth ≤ `depth` over the given symbols.
pub fn universe_oracle(symbols: &BTreeSet<(String, usize)>, depth: usize) -> Vec<Term> {
    let mut all: Vec<Term> = Vec::new();
    for d in 1..=depth {
        let mut level = Vec::new();
        for (f, arity) in symbols {
            if *arity == 0 {
                if d == 1 {
                    level.push(Term::constant(f.clone()));
                }
                continue;
            }
            // argument tuples over all shallower terms with at least one of depth d-1
            let mut tuples: Vec<Vec<Term>> = vec![vec![]];
            for _ in 0..*arity {
                tuples = tuples
                    .into_iter()
                    .flat_map(|t| {
                        all.iter().map(move |a| {
                            let mut t = t.clone();
                            t.push(a.clone());
                            t
                        })
                    })
                    .collect();
            }
            for args in tuples {
                if args.iter().map(Term::depth).max() == Some(d - 1) {
                    level.push(Term::app(f.clone(), args));
                }
            }
        }
        all.extend(level);
    }
    all
}

fn ground_all(vars: &[String], universe: &[Term]) -> Vec<Vec<(String, Term)>> {
    let mut out: Vec<Vec<(String, Term)>> = vec![vec![]];
    for v in vars {
        out = out
            .into_iter()
            .flat_map(|b| {
                universe.iter().map(move |t| {
                    let mut b = b.clone();
                    b.push((v.clone(), t.clone()));
                    b
                })
            })
            .collect();
    }
    out
}

fn subst(t: &Term, b: &[(String, Term)]) -> Term {
    match t {
        Term::Var(x) => b
            .iter()
            .find(|(v, _)| v == x)
            .map(|(_, t)| t.clone())
            .unwrap(),
        Term::App { functor, args } => {
            Term::app(functor.clone(), args.iter().map(|a| subst(a, b)).collect())
        }
    }
}

fn subst_lit(l: &Literal, b: &[(String, Term)]) -> Literal {
    Literal::atom(
        l.predicate.clone(),
        l.args.iter().map(|a| subst(a, b)).collect(),
    )
}

fn var_names(l: &Literal, out: &mut Vec<String>) {
    fn go(t: &Term, out: &mut Vec<String>) {
        match t {
            Term::Var(x) => {
                if !out.contains(x) {
                    out.push(x.clone())
                }
            }
            Term::App { args, .. } => args.iter().for_each(|a| go(a, out)),
        }
    }
    l.args.iter().for_each(|a| go(a, out));
}

/// Brute-force bounded least model: every clause is instantiated with every
/// assignment of its variables over the depth-bounded universe.
pub fn model_oracle(p: &HornProgram, depth: usize) -> BTreeSet<Literal> {
    let mut symbols = BTreeSet::new();
    for c in p.clauses() {
        for l in c.literals() {
            l.args.iter().for_each(|a| symbols_of(a, &mut symbols));
        }
    }
    let universe = universe_oracle(&symbols, depth);
    let mut instances: Vec<(Literal, Vec<Literal>)> = Vec::new();
    for c in p.clauses() {
        let mut vars = Vec::new();
        c.literals().for_each(|l| var_names(l, &mut vars));
        let head = c.literals().find(|l| l.positive).unwrap();
        let body: Vec<&Literal> = c.literals().filter(|l| !l.positive).collect();
        for b in ground_all(&vars, &universe) {
            let h = subst_lit(head, &b);
            if h.args.iter().all(|a| a.depth() <= depth) {
                instances.push((h, body.iter().map(|l| subst_lit(l, &b)).collect()));
            }
        }
    }
    let mut model = BTreeSet::new();
    loop {
        let before = model.len();
        for (h, body) in &instances {
            if body.iter().all(|l| model.contains(l)) {
                model.insert(h.clone());
            }
        }
        if model.len() == before {
            return model;
        }
    }
}

/// Variant equality of two programs taken as clause sets.
pub fn same_program(a: &HornProgram, b: &HornProgram) -> bool {
    use prigolem::logic::clause_variant_equal;
    a.len() == b.len()
        && a.clauses()
            .all(|x| b.clauses().any(|y| clause_variant_equal(x, y)))
        && b.clauses()
            .all(|y| a.clauses().any(|x| clause_variant_equal(x, y)))
}

pub fn even(k: usize) -> Literal {
    Literal::atom("p", vec![Term::numeral(2 * k)])
}
