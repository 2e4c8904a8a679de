//! Concrete syntax for terms and constraints.
//!
//! ```text
//! constraint := literal ('&' literal)*  |  'true'
//! literal    := term ('=' | '!=' | 'in' | 'nin') term
//! term       := Var | const | f '(' term (',' term)* ')' | aggregate
//! aggregate  := '[' elems ']' | '{[' elems ']}' | '[[' elems ']]' | '{' elems '}'
//! elems      := (term (',' term)* ('|' term)?)?
//! ```
//!
//! Only the aggregate bracket of the selected theory is accepted. Lines
//! starting with `%` are comments.

use std::fmt;

use crate::constraint::{Constraint, Literal};
use crate::error::Error;
use crate::term::{Term, Theory, Var};

const KEYWORDS: [&str; 3] = ["in", "nin", "true"];

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Accept variables in the generated namespace (`F_`, `M_`, `N_`, `Z_`).
    pub allow_reserved: bool,
}

pub fn parse_constraint(theory: Theory, text: &str) -> Result<Constraint, Error> {
    parse_constraint_with(theory, text, ParseOptions::default())
}

pub fn parse_constraint_with(theory: Theory, text: &str, opts: ParseOptions) -> Result<Constraint, Error> {
    let mut p = Parser::new(theory, text, opts);
    let c = p.constraint()?;
    p.expect_end()?;
    Ok(c)
}

pub fn parse_term(theory: Theory, text: &str) -> Result<Term, Error> {
    parse_term_with(theory, text, ParseOptions::default())
}

pub fn parse_term_with(theory: Theory, text: &str, opts: ParseOptions) -> Result<Term, Error> {
    let mut p = Parser::new(theory, text, opts);
    let t = p.term()?;
    p.expect_end()?;
    Ok(t)
}

struct Parser<'a> {
    theory: Theory,
    src: &'a [u8],
    pos: usize,
    opts: ParseOptions,
}

impl<'a> Parser<'a> {
    fn new(theory: Theory, text: &'a str, opts: ParseOptions) -> Self {
        Parser { theory, src: text.as_bytes(), pos: 0, opts }
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        let before = &self.src[..pos.min(self.src.len())];
        let line = 1 + before.iter().filter(|&&b| b == b'\n').count();
        let line_start = before.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
        let column = 1 + String::from_utf8_lossy(&before[line_start..]).chars().count();
        Error::Syntax { line, column, message: message.into() }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() {
            let b = self.src[self.pos];
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'%' {
                while self.pos < self.src.len() && self.src[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn peek2(&mut self) -> Option<u8> {
        self.skip_ws();
        let mut i = self.pos + 1;
        while i < self.src.len() && self.src[i].is_ascii_whitespace() {
            i += 1;
        }
        self.src.get(i).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), Error> {
        if self.eat(b) {
            Ok(())
        } else {
            {
            let found = self.found();
            Err(self.error(format!("expected `{}`{found}", b as char)))
        }
        }
    }

    fn found(&mut self) -> String {
        match self.peek() {
            None => ", found end of input".to_string(),
            Some(_) => {
                let rest = String::from_utf8_lossy(&self.src[self.pos..]);
                let tok: String = rest.chars().take_while(|c| !c.is_whitespace()).take(12).collect();
                format!(", found `{tok}`")
            }
        }
    }

    fn expect_end(&mut self) -> Result<(), Error> {
        match self.peek() {
            None => Ok(()),
            Some(_) => {
                let found = self.found();
                Err(self.error(format!("unexpected input{found}")))
            }
        }
    }

    fn ident(&mut self) -> Option<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            Some((start, String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()))
        }
    }

    fn constraint(&mut self) -> Result<Constraint, Error> {
        let mut lits = Vec::new();
        if self.peek().is_none() {
            return Ok(Constraint::truth());
        }
        let save = self.pos;
        if let Some((_, w)) = self.ident() {
            if w == "true" && self.peek().is_none() {
                return Ok(Constraint::truth());
            }
        }
        self.pos = save;
        loop {
            lits.push(self.literal()?);
            if !self.eat(b'&') {
                break;
            }
        }
        Ok(Constraint::new(lits))
    }

    fn literal(&mut self) -> Result<Literal, Error> {
        let lhs = self.term()?;
        let at = {
            self.skip_ws();
            self.pos
        };
        let lit = if self.eat(b'=') {
            Literal::eq(lhs, self.term()?)
        } else if self.peek() == Some(b'!') {
            self.pos += 1;
            if !self.eat(b'=') {
                return Err(self.error_at(at, "expected `!=`"));
            }
            Literal::neq(lhs, self.term()?)
        } else {
            match self.ident() {
                Some((_, w)) if w == "in" => Literal::member(lhs, self.term()?),
                Some((_, w)) if w == "nin" => Literal::non_member(lhs, self.term()?),
                Some((p, w)) => return Err(self.error_at(p, format!("expected a relation (=, !=, in, nin), found `{w}`"))),
                None => {
                    let found = self.found();
                    return Err(self.error_at(at, format!("expected a relation (=, !=, in, nin){found}")));
                }
            }
        };
        Ok(lit)
    }

    fn term(&mut self) -> Result<Term, Error> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(b'[') => {
                if self.peek2() == Some(b'[') && self.theory == Theory::CList {
                    self.pos += 1;
                    self.expect(b'[')?;
                    self.aggregate(start, Theory::CList, b"]]")
                } else {
                    self.pos += 1;
                    self.aggregate(start, Theory::List, b"]")
                }
            }
            Some(b'{') => {
                if self.peek2() == Some(b'[') && self.theory == Theory::MSet {
                    self.pos += 1;
                    self.expect(b'[')?;
                    self.aggregate(start, Theory::MSet, b"]}")
                } else {
                    self.pos += 1;
                    self.aggregate(start, Theory::Set, b"}")
                }
            }
            Some(c) if c.is_ascii_alphanumeric() || c == b'_' => {
                let (p, name) = self.ident().expect("identifier start");
                let first = name.chars().next().unwrap_or('_');
                if first.is_ascii_uppercase() {
                    let v = Var::new(&name);
                    if v.is_reserved() && !self.opts.allow_reserved {
                        return Err(self.error_at(p, format!("variable `{name}` uses a reserved prefix (F_, M_, N_, Z_)")));
                    }
                    return Ok(Term::Var(v));
                }
                if first == '_' {
                    return Err(self.error_at(p, format!("identifier `{name}` must start with a letter or digit")));
                }
                if KEYWORDS.contains(&name.as_str()) {
                    return Err(self.error_at(p, format!("keyword `{name}` cannot be used as a term")));
                }
                if self.peek() == Some(b'(') {
                    self.pos += 1;
                    let mut args = vec![self.term()?];
                    while self.eat(b',') {
                        args.push(self.term()?);
                    }
                    self.expect(b')')?;
                    Ok(Term::app(name, args))
                } else {
                    Ok(Term::constant(name))
                }
            }
            _ => {
                let found = self.found();
                Err(self.error(format!("expected a term{found}")))
            }
        }
    }

    fn aggregate(&mut self, start: usize, kind: Theory, close: &[u8]) -> Result<Term, Error> {
        if kind != self.theory {
            return Err(self.error_at(
                start,
                format!("{} constructor is not available in theory {}", kind.name(), self.theory.name()),
            ));
        }
        let mut elems = Vec::new();
        let mut rest = Term::nil();
        if self.peek() != Some(close[0]) {
            elems.push(self.term()?);
            while self.eat(b',') {
                elems.push(self.term()?);
            }
            if self.eat(b'|') {
                rest = self.term()?;
            }
        }
        for &b in close {
            self.expect(b)?;
        }
        Ok(kind.aggregate(elems, rest))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::App(name, args) if args.is_empty() => f.write_str(name),
            Term::App(name, args) => {
                if let Some(th) = Theory::of_constructor(name).filter(|_| args.len() == 2) {
                    let (open, close) = match th {
                        Theory::List => ("[", "]"),
                        Theory::MSet => ("{[", "]}"),
                        Theory::CList => ("[[", "]]"),
                        Theory::Set => ("{", "}"),
                    };
                    let (elems, rest) = th.split(self);
                    f.write_str(open)?;
                    for (i, e) in elems.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{e}")?;
                    }
                    if !rest.is_nil() {
                        write!(f, "|{rest}")?;
                    }
                    f.write_str(close)
                } else {
                    write!(f, "{name}(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{a}")?;
                    }
                    f.write_str(")")
                }
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraint::Kind;

    #[test]
    fn parses_two_literals() {
        let c = parse_constraint(Theory::Set, "X in {a} & Y != nil").unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.literals()[0].kind(), Kind::In);
        assert_eq!(c.literals()[1].kind(), Kind::Neq);
    }

    #[test]
    fn parses_mset_equality() {
        let c = parse_constraint(Theory::MSet, "{[a,b|X]} = {[b|Y]}").unwrap();
        assert_eq!(c.len(), 1);
        let m = Theory::MSet;
        assert_eq!(c.literals()[0].lhs, m.aggregate([Term::constant("a"), Term::constant("b")], Term::var("X")));
    }

    #[test]
    fn rejects_bad_relation() {
        match parse_constraint(Theory::Set, "X inn Y") {
            Err(Error::Syntax { line: 1, column: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_wrong_theory_constructor() {
        assert!(parse_constraint(Theory::List, "X = {a}").is_err());
        assert!(parse_constraint(Theory::Set, "X = [a]").is_err());
        assert!(parse_constraint(Theory::MSet, "X = {a}").is_err());
    }

    #[test]
    fn rejects_reserved_variables() {
        assert!(parse_constraint(Theory::Set, "N_0 = a").is_err());
        let opts = ParseOptions { allow_reserved: true };
        assert!(parse_constraint_with(Theory::Set, "N_0 = a", opts).is_ok());
    }

    #[test]
    fn reports_line_and_column() {
        match parse_constraint(Theory::List, "X = a &\n  Y = ]") {
            Err(Error::Syntax { line: 2, column: 7, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn prints_sugar() {
        let l = Theory::List;
        let t = l.aggregate([Term::constant("a"), Term::var("X")], Term::var("Y"));
        assert_eq!(t.to_string(), "[a,X|Y]");
        let nested = l.aggregate([l.aggregate([Term::nil()], Term::nil())], Term::nil());
        assert_eq!(nested.to_string(), "[[nil]]");
        assert_eq!(parse_term(l, &nested.to_string()).unwrap(), nested);
        let c = Theory::CList;
        let t = c.aggregate([c.aggregate([Term::constant("a")], Term::nil())], Term::nil());
        assert_eq!(parse_term(c, &t.to_string()).unwrap(), t);
    }

    #[test]
    fn nested_clist_and_mset_parse() {
        let c = Theory::CList;
        let t = parse_term(c, "[[[[a]],b]]").unwrap();
        assert_eq!(c.split(&t).0.len(), 2);
        let m = Theory::MSet;
        let t = parse_term(m, "{[{[a]}]}").unwrap();
        assert_eq!(m.rank(&t), 2);
    }
}
