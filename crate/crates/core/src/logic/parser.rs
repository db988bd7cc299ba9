//! Recursive-descent reader for the clause and example-stream syntax.
//!
//! ```text
//! program  := clause*
//! clause   := atom [":-" atom ("," atom)*] "."
//! atom     := ident ["(" term ("," term)* ")"]
//! term     := Var | ident ["(" term ("," term)* ")"]
//! ```
//! Identifiers start with a lowercase letter or digit, variables with an
//! uppercase letter or `_`. `%` starts a comment running to end of line.

use super::clause::{Clause, ExampleStream, HornProgram};
use super::term::{Literal, Term};
use super::ParseError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Var(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Neck,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Var(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Neck => "`:-`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        let mut advance = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        match c {
            c if c.is_whitespace() => {
                advance(&mut chars);
            }
            '%' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    advance(&mut chars);
                }
            }
            '(' | ')' | ',' | '.' => {
                advance(&mut chars);
                let t = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    _ => Tok::Dot,
                };
                out.push((t, pos));
            }
            ':' => {
                advance(&mut chars);
                if chars.peek() == Some(&'-') {
                    advance(&mut chars);
                    out.push((Tok::Neck, pos));
                } else {
                    return Err(syntax(pos, "expected `:-`"));
                }
            }
            c if c.is_alphanumeric() || c == '_' => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' {
                        word.push(c);
                        advance(&mut chars);
                    } else {
                        break;
                    }
                }
                let first = word.chars().next().unwrap();
                let tok = if first.is_uppercase() || first == '_' {
                    Tok::Var(word)
                } else {
                    Tok::Ident(word)
                };
                out.push((tok, pos));
            }
            other => {
                return Err(syntax(pos, &format!("unexpected character `{other}`")));
            }
        }
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

fn syntax(pos: Pos, message: &str) -> ParseError {
    ParseError::Syntax {
        line: pos.line,
        col: pos.col,
        message: message.to_string(),
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Parser, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            at: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(
                self.pos(),
                &format!(
                    "expected {}, found {}",
                    want.describe(),
                    self.peek().describe()
                ),
            ))
        }
    }

    fn args(&mut self) -> Result<Vec<Term>, ParseError> {
        if *self.peek() != Tok::LParen {
            return Ok(Vec::new());
        }
        self.bump();
        let mut args = vec![self.term()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            args.push(self.term()?);
        }
        self.expect(Tok::RParen)?;
        Ok(args)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Var(v) => Ok(Term::Var(v)),
            Tok::Ident(f) => Ok(Term::app(f, self.args()?)),
            other => Err(syntax(
                pos,
                &format!("expected a term, found {}", other.describe()),
            )),
        }
    }

    fn atom(&mut self) -> Result<Literal, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Ident(p) => Ok(Literal::atom(p, self.args()?)),
            other => Err(syntax(
                pos,
                &format!("expected a predicate, found {}", other.describe()),
            )),
        }
    }

    fn clause(&mut self) -> Result<(Clause, Pos), ParseError> {
        let pos = self.pos();
        if *self.peek() == Tok::Neck {
            return Err(ParseError::NonDefinite {
                line: pos.line,
                col: pos.col,
            });
        }
        let head = self.atom()?;
        let mut body = Vec::new();
        if *self.peek() == Tok::Neck {
            self.bump();
            body.push(self.atom()?);
            while *self.peek() == Tok::Comma {
                self.bump();
                body.push(self.atom()?);
            }
        }
        self.expect(Tok::Dot)?;
        Ok((Clause::definite(head, body), pos))
    }

    fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }
}

/// Clauses in file order (duplicates kept).
pub fn parse_clauses(text: &str) -> Result<Vec<Clause>, ParseError> {
    let mut p = Parser::new(text)?;
    let mut out = Vec::new();
    while !p.at_eof() {
        out.push(p.clause()?.0);
    }
    Ok(out)
}

pub fn parse_program(text: &str) -> Result<HornProgram, ParseError> {
    let clauses = parse_clauses(text)?;
    // the grammar only admits definite clauses
    Ok(HornProgram::new(clauses).expect("parsed clauses are definite"))
}

/// One ground atom per clause, arrival order = file order.
pub fn parse_examples(text: &str) -> Result<ExampleStream, ParseError> {
    let mut p = Parser::new(text)?;
    let mut arrivals = Vec::new();
    while !p.at_eof() {
        let (c, pos) = p.clause()?;
        if !c.is_unit() {
            return Err(syntax(pos, "examples must be atoms, not rules"));
        }
        let atom = c.head().unwrap().clone();
        if !atom.is_ground() {
            return Err(ParseError::NonGround {
                line: pos.line,
                col: pos.col,
                atom: atom.to_string(),
            });
        }
        arrivals.push(atom);
    }
    Ok(ExampleStream::new(arrivals).expect("ground positive atoms"))
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(text)?;
    let t = p.term()?;
    p.expect(Tok::Eof)?;
    Ok(t)
}

/// A single atom, with or without a terminating `.`.
pub fn parse_atom(text: &str) -> Result<Literal, ParseError> {
    let mut p = Parser::new(text)?;
    let a = p.atom()?;
    if *p.peek() == Tok::Dot {
        p.bump();
    }
    p.expect(Tok::Eof)?;
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::render::render_program;

    #[test]
    fn parses_fact() {
        let p = parse_program("p(0).").unwrap();
        assert_eq!(p.len(), 1);
        assert!(p.clauses().next().unwrap().is_fact());
    }

    #[test]
    fn parses_rule_and_renders_back() {
        let p = parse_program("p(s(s(X))) :- p(X).").unwrap();
        let c = p.clauses().next().unwrap();
        assert_eq!(c.head().unwrap().to_string(), "p(s(s(X)))");
        assert_eq!(c.body().len(), 1);
        assert_eq!(render_program(&p), "p(s(s(X0))) :- p(X0).");
    }

    #[test]
    fn rejects_disjunctive_head() {
        match parse_program("p(X) ; q(X).") {
            Err(ParseError::Syntax { line, col, .. }) => assert_eq!((line, col), (1, 6)),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_headless_clause() {
        assert!(matches!(
            parse_program(":- p(X)."),
            Err(ParseError::NonDefinite { .. })
        ));
    }

    #[test]
    fn comments_and_positions() {
        let text = "% evens\np(0).\n\np(s(s(X))) :- p(X)\n";
        match parse_program(text) {
            Err(ParseError::Syntax { line, .. }) => assert_eq!(line, 5),
            other => panic!("expected missing-dot error, got {other:?}"),
        }
        assert_eq!(parse_program("% only a comment\n").unwrap().len(), 0);
    }

    #[test]
    fn examples_must_be_ground() {
        let s = parse_examples("p(0).\np(s(s(0))).\n").unwrap();
        assert_eq!(s.len(), 2);
        assert!(matches!(
            parse_examples("p(0).\np(X).\n"),
            Err(ParseError::NonGround { line: 2, .. })
        ));
        assert!(parse_examples("p(s(s(0))) :- p(0).").is_err());
    }

    #[test]
    fn terms_and_atoms() {
        assert_eq!(parse_term("s(s(0))").unwrap(), Term::numeral(2));
        assert!(parse_term("s(0) x").is_err());
        assert_eq!(
            parse_atom("p(0).").unwrap(),
            Literal::atom("p", vec![Term::numeral(0)])
        );
        assert!(parse_atom("X").is_err());
    }
}
