//! Text format: a sum of terms `c * z0^e0*z1^e1*...`, where `c` is `p` or
//! `p/q` and may be omitted. Whitespace is ignored. The serializer is
//! `MPoly`'s `Display`, which emits the same grammar in canonical order.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use super::mpoly::MPoly;
use super::rat::Rat;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            _ if c.is_whitespace() => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                out.push(Tok::Num(lit.parse().expect("digits")));
            }
            _ if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            _ => return Err(Error::Parse(format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

/// Coefficient and sparse `(variable index, exponent)` list.
type Term = (Rat, Vec<(usize, u32)>);

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    vars: Vec<String>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn var_index(&mut self, name: &str) -> usize {
        match self.vars.iter().position(|v| v == name) {
            Some(i) => i,
            None => {
                self.vars.push(name.to_string());
                self.vars.len() - 1
            }
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(1);
        }
        self.next();
        match self.next() {
            Some(Tok::Num(n)) => {
                u32::try_from(n).map_err(|_| Error::Parse("exponent out of range".into()))
            }
            Some(Tok::Minus) => Err(Error::Parse("negative exponent".into())),
            _ => Err(Error::Parse("expected exponent after `^`".into())),
        }
    }

    /// One term without its sign: `[coeff [*]] factor (* factor)*` or `coeff`.
    fn term(&mut self) -> Result<Term> {
        let mut coeff = Rat::one();
        let mut factors = Vec::new();
        let mut first = true;
        loop {
            match self.next() {
                Some(Tok::Num(n)) => {
                    let mut c = Rat::from_integer(n);
                    if self.peek() == Some(&Tok::Slash) {
                        self.next();
                        match self.next() {
                            Some(Tok::Num(d)) if d != BigInt::from(0) => {
                                c /= Rat::from_integer(d);
                            }
                            Some(Tok::Num(_)) => {
                                return Err(Error::Parse("zero denominator".into()))
                            }
                            _ => return Err(Error::Parse("expected denominator".into())),
                        }
                    }
                    if self.peek() == Some(&Tok::Caret) {
                        let e = self.exponent()?;
                        c = num_traits::pow::pow(c, e as usize);
                    }
                    coeff *= c;
                }
                Some(Tok::Ident(name)) => {
                    let idx = self.var_index(&name);
                    let e = self.exponent()?;
                    factors.push((idx, e));
                }
                other => {
                    let what = if first { "term" } else { "factor after `*`" };
                    return Err(Error::Parse(format!("expected {what}, found {other:?}")));
                }
            }
            first = false;
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                }
                // Juxtaposition such as `3z0` or `2 a` is accepted.
                Some(Tok::Ident(_)) | Some(Tok::Num(_)) => {}
                _ => break,
            }
        }
        Ok((coeff, factors))
    }

    fn poly(&mut self) -> Result<Vec<Term>> {
        let mut terms = Vec::new();
        if self.peek().is_none() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut sign = Rat::one();
        let mut expect_term = true;
        while let Some(t) = self.peek().cloned() {
            match t {
                Tok::Plus if expect_term && terms.is_empty() => {
                    self.next();
                }
                Tok::Minus if expect_term => {
                    self.next();
                    sign = -sign;
                }
                Tok::Plus | Tok::Minus if !expect_term => {
                    self.next();
                    if t == Tok::Minus {
                        sign = -sign;
                    }
                    expect_term = true;
                }
                _ if expect_term => {
                    let (c, f) = self.term()?;
                    terms.push((sign * c, f));
                    sign = Rat::one();
                    expect_term = false;
                }
                other => return Err(Error::Parse(format!("unexpected token {other:?}"))),
            }
        }
        if expect_term {
            return Err(Error::Parse("dangling operator".into()));
        }
        Ok(terms)
    }
}

/// Parses over a declared variable list; names not in `vars` are appended.
pub fn parse_mpoly<S: AsRef<str>>(s: &str, vars: &[S]) -> Result<MPoly> {
    let mut p = Parser {
        toks: tokenize(s)?,
        pos: 0,
        vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
    };
    let terms = p.poly()?;
    let n = p.vars.len();
    Ok(MPoly::from_terms(
        &p.vars,
        terms.into_iter().map(|(c, fs)| {
            let mut e = vec![0u32; n];
            for (i, x) in fs {
                e[i] += x;
            }
            (e, c)
        }),
    ))
}

impl FromStr for MPoly {
    type Err = Error;

    /// Variables are declared in order of first appearance.
    fn from_str(s: &str) -> Result<Self> {
        parse_mpoly::<&str>(s, &[])
    }
}
