//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary ('*' unary)*
//! unary    := '-' unary | factor
//! factor   := base ('^' natural)?
//! base     := rational | ident | '(' expr ')'
//! rational := integer ('/' positive-integer)?
//! ident    := letter (letter | digit)*
//! ```

use num::{BigInt, ToPrimitive, Zero};

use crate::exactalg::{MPoly, Rat, Vars};
use crate::{Error, Result};

/// Largest total degree an expression may reach.
pub const MAX_DEGREE: u32 = 64;
/// Largest nesting depth of parentheses and unary minus.
pub const MAX_DEPTH: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

fn syntax(pos: Pos, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let mut pos = Pos { line: 1, column: 1 };
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let start = pos;
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                pos.line += 1;
                pos.column = 1;
            } else {
                pos.column += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut s = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                s.push(bump(&mut chars));
            }
            Tok::Int(s.parse().expect("digits form an integer"))
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
                s.push(bump(&mut chars));
            }
            Tok::Ident(s)
        } else {
            bump(&mut chars);
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => return Err(syntax(start, format!("unexpected character {c:?}"))),
            }
        };
        out.push((tok, start));
    }
    out.push((Tok::End, pos));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    vars: &'a Vars,
    depth: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(syntax(self.pos(), format!("nesting deeper than {MAX_DEPTH}")));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = self.term()?;
        loop {
            let sub = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(acc),
            };
            self.next();
            let rhs = self.term()?;
            acc = if sub { &acc - &rhs } else { &acc + &rhs };
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            let (_, at) = self.next();
            let rhs = self.unary()?;
            if acc.total_degree() + rhs.total_degree() > MAX_DEGREE {
                return Err(syntax(at, format!("product exceeds degree {MAX_DEGREE}")));
            }
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MPoly> {
        if *self.peek() == Tok::Minus {
            self.next();
            self.enter()?;
            let inner = self.unary()?;
            self.depth -= 1;
            return Ok(inner.scale(&Rat::from_integer((-1).into())));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<MPoly> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let (_, at) = self.next();
        let (tok, p) = self.next();
        let Tok::Int(e) = tok else {
            return Err(syntax(p, format!("expected exponent after `^`, found {}", tok.describe())));
        };
        let e = e.to_u32().filter(|&e| e <= MAX_DEGREE).ok_or_else(|| {
            syntax(p, format!("exponent exceeds {MAX_DEGREE}"))
        })?;
        if base.total_degree() * e > MAX_DEGREE {
            return Err(syntax(at, format!("power exceeds degree {MAX_DEGREE}")));
        }
        Ok(base.pow(e))
    }

    fn base(&mut self) -> Result<MPoly> {
        let (tok, p) = self.next();
        match tok {
            Tok::Int(n) => {
                if *self.peek() != Tok::Slash {
                    return Ok(MPoly::constant(self.vars, Rat::from_integer(n)));
                }
                self.next();
                let (tok, q) = self.next();
                match tok {
                    Tok::Int(d) if !d.is_zero() => Ok(MPoly::constant(self.vars, Rat::new(n, d))),
                    Tok::Int(_) => Err(syntax(q, "zero denominator")),
                    other => Err(syntax(q, format!("expected denominator, found {}", other.describe()))),
                }
            }
            Tok::Ident(name) => match self.vars.index_of(&name) {
                Some(i) => Ok(MPoly::var(self.vars, i)),
                None => Err(syntax(p, format!("unknown variable `{name}`"))),
            },
            Tok::LParen => {
                self.enter()?;
                let inner = self.expr()?;
                self.depth -= 1;
                let (tok, q) = self.next();
                if tok != Tok::RParen {
                    return Err(syntax(q, format!("expected `)`, found {}", tok.describe())));
                }
                Ok(inner)
            }
            other => Err(syntax(p, format!("expected a number, variable or `(`, found {}", other.describe()))),
        }
    }
}

/// Parses `text` as a polynomial in `vars`.
pub fn parse_poly(text: &str, vars: &Vars) -> Result<MPoly> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, vars, depth: 0 };
    let out = p.expr()?;
    match p.peek() {
        Tok::End => Ok(out),
        Tok::Slash => Err(syntax(p.pos(), "`/` may only separate two integer literals")),
        t => Err(syntax(p.pos(), format!("expected an operator, found {}", t.describe()))),
    }
}

/// Whether `name` is a valid identifier of the expression language.
pub fn is_identifier(name: &str) -> bool {
    let mut cs = name.chars();
    cs.next().is_some_and(|c| c.is_ascii_alphabetic()) && cs.all(|c| c.is_ascii_alphanumeric())
}

/// Renders a polynomial in the expression language; the result reparses
/// to the same polynomial.
pub fn render_poly(p: &MPoly) -> String {
    p.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::{rat, ratio};

    fn ts() -> Vars {
        Vars::new(&["t", "s"])
    }

    fn err_at(text: &str) -> (usize, usize) {
        match parse_poly(text, &ts()) {
            Err(Error::Syntax { line, column, .. }) => (line, column),
            other => panic!("expected a syntax error for {text:?}, got {other:?}"),
        }
    }

    #[test]
    fn precedence_and_signs() {
        let v = ts();
        let p = parse_poly("1 - 2*t^2 + 3/4*t*s - -s", &v).unwrap();
        let t = MPoly::var(&v, 0);
        let s = MPoly::var(&v, 1);
        let expect = &(&(&MPoly::one(&v) - &t.pow(2).scale(&rat(2))) + &(&t * &s).scale(&ratio(3, 4))) + &s;
        assert_eq!(p, expect);
        assert_eq!(parse_poly("-t^2", &v).unwrap(), t.pow(2).scale(&rat(-1)));
        assert_eq!(parse_poly("(t+s)^2", &v).unwrap(), (&t + &s).pow(2));
    }

    #[test]
    fn dangling_exponent_is_located() {
        assert_eq!(err_at("x^"), (1, 1));
        assert_eq!(err_at("t^"), (1, 3));
        assert_eq!(err_at("t +\n  s^"), (2, 5));
    }

    #[test]
    fn rejected_inputs() {
        assert_eq!(err_at("t/2"), (1, 2));
        assert_eq!(err_at("1/0"), (1, 3));
        assert_eq!(err_at("2t"), (1, 2));
        assert_eq!(err_at("(t"), (1, 3));
        assert_eq!(err_at("t^100"), (1, 3));
        assert_eq!(err_at("t ? s"), (1, 3));
        assert_eq!(err_at(""), (1, 1));
    }

    #[test]
    fn rendering_reparses() {
        let v = ts();
        for text in ["0", "1", "-t", "3/2*t^2*s - 7", "(t - s)^3 + 1/5"] {
            let p = parse_poly(text, &v).unwrap();
            assert_eq!(parse_poly(&render_poly(&p), &v).unwrap(), p);
        }
    }

    #[test]
    fn identifiers() {
        assert!(is_identifier("t2"));
        assert!(!is_identifier("2t"));
        assert!(!is_identifier(""));
        assert!(!is_identifier("s_1"));
    }
}
