//! Polynomial expressions: `3*x^2*y - z^2/2 + (x+y)^3`, plus an optional
//! hook for `t^k` names in semigroup rings.

use crate::error::{Error, Result};
use crate::field::{El, Field};
use crate::monomial::MonoCtx;
use crate::vector::{self, poly_times, Vector};

pub type TPow<'a, E> = &'a dyn Fn(u32) -> Option<Vector<E>>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let b: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = b[st..i].iter().collect();
            let n = t.parse::<i64>().map_err(|_| perr(st, "integer literal too large"))?;
            out.push((Tok::Num(n), st));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < b.len() && (b[i].is_alphanumeric() || b[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(b[st..i].iter().collect()), st));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else {
            return Err(perr(i, &format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

fn perr(col0: usize, msg: &str) -> Error {
    Error::Parse { line: 0, col: col0 + 1, msg: msg.to_string() }
}

struct P<'a, F: Field> {
    f: &'a F,
    names: &'a [String],
    ctx: &'a MonoCtx,
    tpow: Option<TPow<'a, El<F>>>,
    toks: Vec<(Tok, usize)>,
    k: usize,
    end: usize,
}

impl<'a, F: Field> P<'a, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.k).map(|t| &t.0)
    }
    fn col(&self) -> usize {
        self.toks.get(self.k).map(|t| t.1).unwrap_or(self.end)
    }
    fn expr(&mut self) -> Result<Vector<El<F>>> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c)) = self.peek() {
            let c = *c;
            if c != '+' && c != '-' {
                break;
            }
            self.k += 1;
            let t = self.term()?;
            acc = if c == '+' { vector::add(self.f, &acc, &t) } else { vector::sub(self.f, &acc, &t) };
        }
        Ok(acc)
    }
    fn term(&mut self) -> Result<Vector<El<F>>> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.k += 1;
                    let u = self.unary()?;
                    acc = poly_times(self.f, &acc, &u);
                }
                Some(Tok::Op('/')) => {
                    self.k += 1;
                    let col = self.col();
                    match self.peek() {
                        Some(Tok::Num(n)) if *n != 0 => {
                            let n = *n;
                            self.k += 1;
                            let nv = self.f.from_i64(n);
                            if self.f.is_zero(&nv) {
                                return Err(perr(col, "division by zero in the coefficient field"));
                            }
                            let inv = self.f.inv(&nv);
                            acc = vector::scale(self.f, &inv, &acc);
                        }
                        _ => return Err(perr(col, "only division by a nonzero integer is allowed")),
                    }
                }
                Some(Tok::Ident(_)) | Some(Tok::Op('(')) | Some(Tok::Num(_)) => {
                    // juxtaposition, as in 2x or x(y+z)
                    let u = self.unary()?;
                    acc = poly_times(self.f, &acc, &u);
                }
                _ => break,
            }
        }
        Ok(acc)
    }
    fn unary(&mut self) -> Result<Vector<El<F>>> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.k += 1;
            let u = self.unary()?;
            return Ok(vector::scale(self.f, &self.f.neg(&self.f.one()), &u));
        }
        if let Some(Tok::Op('+')) = self.peek() {
            self.k += 1;
            return self.unary();
        }
        self.power()
    }
    fn exponent(&mut self) -> Result<Option<u32>> {
        if let Some(Tok::Op('^')) = self.peek() {
            self.k += 1;
            let col = self.col();
            match self.peek() {
                Some(Tok::Num(n)) if *n >= 0 && *n < 10_000 => {
                    let n = *n as u32;
                    self.k += 1;
                    Ok(Some(n))
                }
                _ => Err(perr(col, "expected a non-negative integer exponent")),
            }
        } else {
            Ok(None)
        }
    }
    fn power(&mut self) -> Result<Vector<El<F>>> {
        let col = self.col();
        let tok = self.peek().cloned();
        let base = match tok {
            Some(Tok::Num(n)) => {
                self.k += 1;
                Vector::constant(self.f, self.f.from_i64(n))
            }
            Some(Tok::Ident(name)) => {
                self.k += 1;
                if let Some(i) = self.names.iter().position(|x| *x == name) {
                    Vector::monomial(self.f, 0, self.ctx.var(i), self.f.one())
                } else if name == "t" && self.tpow.is_some() {
                    let e = self.exponent()?.unwrap_or(1);
                    let h = self.tpow.unwrap();
                    let v = h(e).ok_or_else(|| perr(col, &format!("t^{e} is not in the semigroup")))?;
                    return Ok(v);
                } else {
                    return Err(perr(col, &format!("unknown variable '{name}'")));
                }
            }
            Some(Tok::Op('(')) => {
                self.k += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => self.k += 1,
                    _ => return Err(perr(self.col(), "expected ')'")),
                }
                e
            }
            _ => return Err(perr(col, "expected a number, variable or '('")),
        };
        match self.exponent()? {
            None => Ok(base),
            Some(n) => {
                let mut r = Vector::constant(self.f, self.f.one());
                for _ in 0..n {
                    r = poly_times(self.f, &r, &base);
                }
                Ok(r)
            }
        }
    }
}

/// Parses an expression; the result is not reduced modulo any relations.
pub fn parse_poly_with<F: Field>(
    f: &F,
    names: &[String],
    ctx: &MonoCtx,
    s: &str,
    tpow: Option<TPow<'_, El<F>>>,
) -> Result<Vector<El<F>>> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(perr(0, "empty expression"));
    }
    let mut p = P { f, names, ctx, tpow, toks, k: 0, end: s.chars().count() };
    let v = p.expr()?;
    if p.k < p.toks.len() {
        return Err(perr(p.col(), "unexpected trailing input"));
    }
    Ok(v)
}

pub fn parse_poly<F: Field>(f: &F, names: &[String], ctx: &MonoCtx, s: &str) -> Result<Vector<El<F>>> {
    parse_poly_with(f, names, ctx, s, None)
}

/// Splits a comma separated list, respecting parentheses. Returns (text, column offset).
pub fn split_list(s: &str) -> Vec<(String, usize)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut start = 0;
    for (i, c) in s.chars().enumerate() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if c == ',' && depth == 0 {
            out.push((cur.clone(), start));
            cur.clear();
            start = i + 1;
        } else {
            cur.push(c);
        }
    }
    out.push((cur, start));
    out.into_iter().filter(|(t, _)| !t.trim().is_empty()).collect()
}
