//! Hand-written parser for the formula language.
//!
//! ```text
//! formula := vars "|" body
//! vars    := var ":" vertex ("," var ":" vertex)*
//! body    := ["EX" vars "."] eq ("&" eq)*
//! eq      := side "=" side
//! side    := "0" | ["-"] term (("+" | "-") term)*
//! term    := [coef "*"] (arrow "*")* var        coef := int | int "/" int
//! ```
//! `b*a*x` applies `a` first.

use std::sync::Arc;

use num_traits::Zero;

use super::formula::{PpFormula, Var};
use crate::error::{Error, Result};
use crate::linalg::{parse_scalar, Scalar, ScalarRing};
use crate::quiver::{AlgebraElement, Path, Quiver, TypedMatrix, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else if c.is_ascii_alphanumeric() || c == '_' {
            let start = col;
            let mut w = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    w.push(d);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            out.push(Token {
                tok: Tok::Word(w),
                line,
                col: start,
            });
        } else if ":,|.&+-*=/".contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                line,
                col,
            });
            chars.next();
            col += 1;
        } else {
            return Err(Error::Parse {
                line,
                column: col,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push(Token { tok: Tok::End, line, col });
    Ok(out)
}

fn is_number(w: &str) -> bool {
    w.chars().all(|c| c.is_ascii_digit())
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    quiver: &'a Quiver,
    ring: ScalarRing,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, t: &Token, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: t.line,
            column: t.col,
            message: message.into(),
        })
    }

    fn describe(t: &Token) -> String {
        match &t.tok {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of input".into(),
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<Token> {
        let t = self.next();
        if t.tok == Tok::Sym(c) {
            Ok(t)
        } else {
            self.err(&t, format!("expected `{c}`, found {}", Self::describe(&t)))
        }
    }

    fn word(&mut self, what: &str) -> Result<(String, Token)> {
        let t = self.next();
        match &t.tok {
            Tok::Word(w) => Ok((w.clone(), t.clone())),
            _ => self.err(&t, format!("expected {what}, found {}", Self::describe(&t))),
        }
    }

    fn vars(&mut self) -> Result<Vec<Var>> {
        let mut out = Vec::new();
        loop {
            let (name, t) = self.word("a variable")?;
            if name == "EX" || is_number(&name) {
                return self.err(&t, format!("`{name}` cannot name a variable"));
            }
            self.expect_sym(':')?;
            let (vertex, _) = self.word("a vertex")?;
            let sort = self.quiver.vertex(&vertex)?;
            out.push(Var::new(name, sort));
            if self.peek().tok == Tok::Sym(',') {
                self.next();
            } else {
                return Ok(out);
            }
        }
    }

    fn coefficient(&mut self, first: &str) -> Result<Scalar> {
        let mut text = first.to_string();
        if self.peek().tok == Tok::Sym('/') {
            self.next();
            let (d, t) = self.word("a denominator")?;
            if !is_number(&d) {
                return self.err(&t, "expected a denominator");
            }
            text = format!("{text}/{d}");
        }
        parse_scalar(self.ring, &text)
    }

    /// One term: `(coefficient, path, variable index)`, or `None` for a literal zero.
    fn term(&mut self, vars: &[Var]) -> Result<Option<(Scalar, Path, usize, Token)>> {
        let start = self.peek().clone();
        let mut coef = self.ring.one();
        let mut atoms: Vec<(String, Token)> = Vec::new();
        let (w, t) = self.word("a term")?;
        if is_number(&w) {
            let c = self.coefficient(&w)?;
            if self.peek().tok != Tok::Sym('*') {
                if c.is_zero() {
                    return Ok(None);
                }
                return self.err(&t, "constant terms are not allowed");
            }
            coef = c;
            self.next();
            atoms.push(self.word("an arrow or variable")?);
        } else {
            atoms.push((w, t));
        }
        while self.peek().tok == Tok::Sym('*') {
            self.next();
            atoms.push(self.word("an arrow or variable")?);
        }
        let (var_name, var_tok) = atoms.pop().expect("at least one atom");
        let Some(vi) = vars.iter().position(|v| v.name == var_name) else {
            return self.err(&var_tok, format!("undeclared variable `{var_name}`"));
        };
        let mut arrows = Vec::new();
        for (name, _) in atoms.iter().rev() {
            arrows.push(self.quiver.arrow_by_name(name)?);
        }
        let path = Path::from_arrows(self.quiver, vars[vi].sort, &arrows).map_err(|_| {
            Error::SortMismatch(format!(
                "path `{}` does not start at the sort of `{var_name}` ({}:{})",
                atoms.iter().map(|a| a.0.as_str()).collect::<Vec<_>>().join("*"),
                start.line,
                start.col
            ))
        })?;
        Ok(Some((coef, path, vi, start)))
    }

    fn side(&mut self, vars: &[Var], sign: i64, out: &mut Vec<(Scalar, Path, usize, Token)>) -> Result<()> {
        let mut s = sign;
        if self.peek().tok == Tok::Sym('-') {
            self.next();
            s = -s;
        }
        loop {
            if let Some((c, p, v, t)) = self.term(vars)? {
                out.push((self.ring.mul(&c, &self.ring.from_i64(s)), p, v, t));
            }
            match self.peek().tok {
                Tok::Sym('+') => {
                    self.next();
                    s = sign;
                }
                Tok::Sym('-') => {
                    self.next();
                    s = -sign;
                }
                _ => return Ok(()),
            }
        }
    }

    fn equation(&mut self, vars: &[Var]) -> Result<Option<(VertexId, Vec<AlgebraElement>)>> {
        let mut terms = Vec::new();
        self.side(vars, 1, &mut terms)?;
        self.expect_sym('=')?;
        self.side(vars, -1, &mut terms)?;
        let Some(sort) = terms.first().map(|t| t.1.tgt()) else {
            return Ok(None);
        };
        let mut row: Vec<AlgebraElement> = vars.iter().map(|v| AlgebraElement::zero(self.ring, v.sort, sort)).collect();
        for (c, p, v, t) in terms {
            if p.tgt() != sort {
                return Err(Error::SortMismatch(format!(
                    "term at {}:{} lands in `{}`, equation is in `{}`",
                    t.line,
                    t.col,
                    self.quiver.vertex_name(p.tgt()),
                    self.quiver.vertex_name(sort)
                )));
            }
            row[v] = row[v].add(&AlgebraElement::term(self.ring, p, c))?;
        }
        Ok(Some((sort, row)))
    }
}

/// Parse a formula over `quiver` with coefficients in `ring`.
pub fn parse_formula(quiver: &Arc<Quiver>, ring: ScalarRing, text: &str) -> Result<PpFormula> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        quiver,
        ring,
    };
    let context = p.vars()?;
    p.expect_sym('|')?;
    let mut bound = Vec::new();
    if p.peek().tok == Tok::Word("EX".into()) {
        p.next();
        bound = p.vars()?;
        p.expect_sym('.')?;
    }
    let mut all = context.clone();
    all.extend(bound.iter().cloned());
    let mut sorts = Vec::new();
    let mut rows = Vec::new();
    loop {
        if let Some((s, row)) = p.equation(&all)? {
            sorts.push(s);
            rows.push(row);
        }
        let t = p.next();
        match t.tok {
            Tok::Sym('&') => continue,
            Tok::End => break,
            _ => return p.err(&t, format!("expected `&` or end of input, found {}", Parser::describe(&t))),
        }
    }
    let ctx_sorts: Vec<VertexId> = context.iter().map(|v| v.sort).collect();
    let bound_sorts: Vec<VertexId> = bound.iter().map(|v| v.sort).collect();
    let n = context.len();
    let (arows, brows): (Vec<_>, Vec<_>) = rows
        .into_iter()
        .map(|mut r| {
            let b = r.split_off(n);
            (r, b)
        })
        .unzip();
    let a = TypedMatrix::from_rows(ring, sorts.clone(), ctx_sorts, arows)?;
    let b = TypedMatrix::from_rows(ring, sorts, bound_sorts, brows)?;
    PpFormula::new(quiver.clone(), context, bound, a, b)
}
