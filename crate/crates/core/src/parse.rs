//! Surface syntax.
//!
//! ```text
//! type  ::= "N" | type "->" type | "(" type ")"
//! term  ::= "\" ident ":" type "." term | atom atom*
//! atom  ::= ident | "0" | "S" | "R" "[" type "]" | "#" digits | "(" term ")"
//! ```
//!
//! `λ` and `→` are accepted as alternatives, `--` starts a comment.
//! Identifiers resolve to the innermost binder first and then to the
//! definitions of the supplied [`Prelude`].

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::term::{Context, Name, Term};
use crate::types::Type;

/// Largest `#n` literal accepted; each unit is one term node.
pub const MAX_NUMERAL_LITERAL: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub offset: usize,
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    BadChar(char),
    #[error("expected {expected}, found {found}")]
    Expected { expected: String, found: String },
    #[error("unbound identifier `{0}`")]
    Unbound(String),
    #[error("numeral literal #{0} exceeds the limit of {MAX_NUMERAL_LITERAL}")]
    NumeralTooLarge(String),
    #[error("bare number `{0}`; write numerals as #{0}")]
    BareNumber(String),
}

/// Named closed terms available to the parser.
#[derive(Clone, Debug, Default)]
pub struct Prelude {
    defs: BTreeMap<String, Arc<Term>>,
}

impl Prelude {
    pub fn new() -> Prelude {
        Prelude::default()
    }

    /// Adds or replaces a definition. The term must be closed.
    pub fn define(&mut self, name: &str, term: Term) {
        assert!(term.is_closed(), "prelude definition `{name}` is open");
        self.defs.insert(name.to_string(), Arc::new(term));
    }

    pub fn get(&self, name: &str) -> Option<&Arc<Term>> {
        self.defs.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.defs.keys().map(String::as_str)
    }

    /// Parses and defines `name` in one step.
    pub fn define_src(&mut self, name: &str, src: &str) -> Result<(), ParseError> {
        let t = parse_term_with(self, &Context::new(), src)?;
        self.define(name, t);
        Ok(())
    }
}

pub(crate) fn is_reserved(name: &str) -> bool {
    matches!(name, "N" | "S" | "R")
}

pub fn parse_type(src: &str) -> Result<Type, ParseError> {
    let mut p = Parser::new(src)?;
    let ty = p.ty()?;
    p.expect_end()?;
    Ok(ty)
}

/// Parses a closed term with no prelude.
pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    parse_term_with(&Prelude::new(), &Context::new(), src)
}

/// Parses a term whose free identifiers refer to `ctx` or `prelude`.
pub fn parse_term_with(prelude: &Prelude, ctx: &Context, src: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(src)?;
    let mut scope: Vec<String> = ctx.names();
    let t = p.term(prelude, &mut scope)?;
    p.expect_end()?;
    Ok(t)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Lambda,
    Ident(String),
    Colon,
    Dot,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Arrow,
    Numeral(u64),
    Zero,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Lambda => "`\\`".into(),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Colon => "`:`".into(),
            Tok::Dot => "`.`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrack => "`[`".into(),
            Tok::RBrack => "`]`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Numeral(n) => format!("`#{n}`"),
            Tok::Zero => "`0`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn error_at(src: &str, offset: usize, kind: ParseErrorKind) -> ParseError {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    ParseError { offset, line, column, kind }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut toks = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(at, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if src[at..].starts_with("--") {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
            }
            continue;
        }
        if src[at..].starts_with("->") {
            chars.next();
            chars.next();
            toks.push((Tok::Arrow, at));
            continue;
        }
        let single = match c {
            '\\' | 'λ' => Some(Tok::Lambda),
            ':' => Some(Tok::Colon),
            '.' => Some(Tok::Dot),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBrack),
            ']' => Some(Tok::RBrack),
            '→' => Some(Tok::Arrow),
            _ => None,
        };
        if let Some(t) = single {
            chars.next();
            toks.push((t, at));
            continue;
        }
        if c == '#' {
            chars.next();
            let start = at + 1;
            let mut end = start;
            while let Some(&(i, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = i + 1;
                chars.next();
            }
            let digits = &src[start..end];
            if digits.is_empty() {
                let found = src[start..].chars().next().map_or("end of input".into(), |c| format!("{c:?}"));
                return Err(error_at(
                    src,
                    start,
                    ParseErrorKind::Expected { expected: "digits after `#`".into(), found },
                ));
            }
            let n = digits
                .parse::<u64>()
                .ok()
                .filter(|n| *n <= MAX_NUMERAL_LITERAL)
                .ok_or_else(|| error_at(src, at, ParseErrorKind::NumeralTooLarge(digits.into())))?;
            toks.push((Tok::Numeral(n), at));
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = at;
            while let Some(&(i, d)) = chars.peek() {
                if !d.is_ascii_alphanumeric() && d != '_' {
                    break;
                }
                end = i + d.len_utf8();
                chars.next();
            }
            let word = &src[at..end];
            if word == "0" {
                toks.push((Tok::Zero, at));
                continue;
            }
            return Err(error_at(src, at, ParseErrorKind::BareNumber(word.into())));
        }
        if c.is_alphabetic() || c == '_' {
            let mut end = at;
            while let Some(&(i, d)) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_' || d == '\'') || d == 'λ' {
                    break;
                }
                end = i + d.len_utf8();
                chars.next();
            }
            toks.push((Tok::Ident(src[at..end].to_string()), at));
            continue;
        }
        return Err(error_at(src, at, ParseErrorKind::BadChar(c)));
    }
    toks.push((Tok::End, src.len()));
    Ok(toks)
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Parser<'a>, ParseError> {
        Ok(Parser { src, toks: lex(src)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(error_at(
            self.src,
            self.offset(),
            ParseErrorKind::Expected { expected: expected.into(), found: self.peek().describe() },
        ))
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(&tok.describe())
        }
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.fail("end of input")
        }
    }

    fn ty(&mut self) -> Result<Type, ParseError> {
        let dom = match self.peek().clone() {
            Tok::Ident(s) if s == "N" => {
                self.bump();
                Type::N
            }
            Tok::LParen => {
                self.bump();
                let t = self.ty()?;
                self.expect(Tok::RParen)?;
                t
            }
            _ => return self.fail("a type"),
        };
        if *self.peek() == Tok::Arrow {
            self.bump();
            let cod = self.ty()?;
            Ok(Type::arrow(dom, cod))
        } else {
            Ok(dom)
        }
    }

    fn term(&mut self, prelude: &Prelude, scope: &mut Vec<String>) -> Result<Term, ParseError> {
        if *self.peek() == Tok::Lambda {
            self.bump();
            let name = match self.peek().clone() {
                Tok::Ident(s) if !is_reserved(&s) => {
                    self.bump();
                    s
                }
                _ => return self.fail("a binder name"),
            };
            self.expect(Tok::Colon)?;
            let ty = self.ty()?;
            self.expect(Tok::Dot)?;
            scope.push(name.clone());
            let body = self.term(prelude, scope);
            scope.pop();
            return Ok(Term::Lam(Name::new(&name), ty, Arc::new(body?)));
        }
        let mut head = self.atom(prelude, scope)?;
        loop {
            match self.peek() {
                Tok::Lambda => {
                    let arg = self.term(prelude, scope)?;
                    return Ok(Term::app(head, arg));
                }
                Tok::Ident(_) | Tok::Zero | Tok::Numeral(_) | Tok::LParen => {
                    let arg = self.atom(prelude, scope)?;
                    head = Term::app(head, arg);
                }
                _ => return Ok(head),
            }
        }
    }

    fn atom(&mut self, prelude: &Prelude, scope: &mut Vec<String>) -> Result<Term, ParseError> {
        let at = self.offset();
        if matches!(self.peek(), Tok::End | Tok::Colon | Tok::Dot | Tok::RParen | Tok::LBrack | Tok::RBrack | Tok::Arrow | Tok::Lambda) {
            return self.fail("a term");
        }
        match self.bump() {
            Tok::Zero => Ok(Term::Zero),
            Tok::Numeral(n) => Ok(Term::numeral(n)),
            Tok::LParen => {
                let t = self.term(prelude, scope)?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Ident(s) if s == "S" => Ok(Term::Succ),
            Tok::Ident(s) if s == "R" => {
                self.expect(Tok::LBrack)?;
                let ty = self.ty()?;
                self.expect(Tok::RBrack)?;
                Ok(Term::Rec(ty))
            }
            Tok::Ident(s) => {
                if let Some(k) = scope.iter().rev().position(|n| *n == s) {
                    return Ok(Term::Var(k));
                }
                match prelude.get(&s) {
                    Some(t) => Ok((**t).clone()),
                    None => Err(error_at(self.src, at, ParseErrorKind::Unbound(s))),
                }
            }
            _ => unreachable!("non-atom tokens are rejected above"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn types() {
        assert_eq!(parse_type("N").unwrap(), Type::N);
        assert_eq!(parse_type("N → N").unwrap(), Type::arrow(Type::N, Type::N));
        let t = parse_type("((N -> N) -> N) -> N").unwrap();
        let (dom, cod) = t.as_arrow().unwrap();
        assert_eq!(*cod, Type::N);
        assert_eq!(dom.to_string(), "(N -> N) -> N");
    }

    #[test]
    fn terms() {
        let t = parse_term(r"\x:N. S x").unwrap();
        assert_eq!(t, Term::lam("x", Type::N, Term::app(Term::Succ, Term::Var(0))));
        assert_eq!(parse_term("#3").unwrap(), Term::numeral(3));
        assert_eq!(parse_term("0").unwrap(), Term::Zero);
        let pred = parse_term(r"R[N] #0 (\a:N. \b:N. b)").unwrap();
        let expected = Term::apps(
            Term::Rec(Type::N),
            [
                Term::Zero,
                Term::lam("a", Type::N, Term::lam("b", Type::N, Term::Var(0))),
            ],
        );
        assert_eq!(pred, expected);
    }

    #[test]
    fn unicode_and_comments() {
        let t = parse_term("λf:N → N. -- apply twice\n  f (f #0)").unwrap();
        assert_eq!(t.to_string(), r"\f:N -> N. f (f #0)");
    }

    #[test]
    fn trailing_lambda_argument() {
        let t = parse_term(r"\f:(N -> N) -> N. f \x:N. x").unwrap();
        assert_eq!(t.to_string(), r"\f:(N -> N) -> N. f (\x:N. x)");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_term(r"\x:N. y").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Unbound("y".into()));
        assert_eq!((e.line, e.column), (1, 7));
        let e = parse_term("(S").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Expected { .. }));
        let e = parse_type("N -> ").unwrap_err();
        assert_eq!(e.offset, 5);
        assert!(matches!(parse_term("12").unwrap_err().kind, ParseErrorKind::BareNumber(_)));
        assert!(matches!(
            parse_term("#99999999999").unwrap_err().kind,
            ParseErrorKind::NumeralTooLarge(_)
        ));
        let e = parse_term("\n  ?").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
    }

    #[test]
    fn prelude_and_context() {
        let mut p = Prelude::new();
        p.define_src("Id", r"\x:N. x").unwrap();
        let t = parse_term_with(&p, &Context::new(), "Id #2").unwrap();
        assert_eq!(t.to_string(), r"(\x:N. x) #2");
        // bound names take precedence over prelude definitions
        let t = parse_term_with(&p, &Context::new(), r"\Id:N. Id").unwrap();
        assert_eq!(t, Term::lam("Id", Type::N, Term::Var(0)));
        let ctx = Context::from_bindings([("y", Type::N)]);
        assert_eq!(parse_term_with(&p, &ctx, "S y").unwrap(), Term::app(Term::Succ, Term::Var(0)));
    }
}
