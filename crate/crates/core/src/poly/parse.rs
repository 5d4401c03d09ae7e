//! Text grammar for integer polynomials.
//!
//! `poly := ["-"] term (("+" | "-") term)*`, `term := factor ("*"? factor)*`,
//! `factor := integer | var ["^" integer]`. Whitespace is ignored. Default
//! variable names are `X1..Xr`, `x1..xr` and `z1..zq` (index `i -> i-1`);
//! a bare `X`, `x`, `z`, `Y` or `y` denotes the first variable.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use super::{Monomial, ZPoly};

#[derive(Debug, Error, PartialEq)]
pub enum ParsePolyError {
    #[error("unexpected character {0:?} at offset {1}")]
    Unexpected(char, usize),
    #[error("unexpected end of input")]
    Eof,
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("variable {name} is outside the {nvars}-variable ring")]
    OutOfRange { name: String, nvars: usize },
}

pub fn parse_poly(text: &str, nvars: usize) -> Result<ZPoly, ParsePolyError> {
    parse_impl(text, nvars, &|name: &str| default_index(name))
}

/// Parses with an explicit variable list; `names[i]` is variable `i`.
pub fn parse_poly_with(text: &str, names: &[&str]) -> Result<ZPoly, ParsePolyError> {
    parse_impl(text, names.len(), &|name: &str| names.iter().position(|n| *n == name))
}

fn default_index(name: &str) -> Option<usize> {
    match name {
        "X" | "x" | "z" | "Y" | "y" => return Some(0),
        _ => {}
    }
    let (head, tail) = name.split_at(1);
    if !matches!(head, "X" | "x" | "z") || tail.is_empty() {
        return None;
    }
    let i: usize = tail.parse().ok()?;
    i.checked_sub(1)
}

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { chars: src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(), pos: 0, _src: src }
    }
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }
    fn offset(&self) -> usize {
        self.chars.get(self.pos).map(|&(o, _)| o).unwrap_or(usize::MAX)
    }
    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }
    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        s
    }
}

fn parse_impl(text: &str, nvars: usize, lookup: &dyn Fn(&str) -> Option<usize>) -> Result<ZPoly, ParsePolyError> {
    let mut cur = Cursor::new(text);
    let mut out = ZPoly::zero(nvars);
    let mut sign = BigInt::one();
    match cur.peek() {
        None => return Err(ParsePolyError::Eof),
        Some('-') => {
            cur.bump();
            sign = -sign;
        }
        Some('+') => {
            cur.bump();
        }
        _ => {}
    }
    loop {
        let (m, c) = parse_term(&mut cur, nvars, lookup)?;
        out.add_term(m, c * &sign);
        match cur.bump() {
            None => break,
            Some('+') => sign = BigInt::one(),
            Some('-') => sign = -BigInt::one(),
            Some(ch) => return Err(ParsePolyError::Unexpected(ch, cur.chars[cur.pos - 1].0)),
        }
    }
    Ok(out)
}

fn parse_term(
    cur: &mut Cursor<'_>,
    nvars: usize,
    lookup: &dyn Fn(&str) -> Option<usize>,
) -> Result<(Monomial, BigInt), ParsePolyError> {
    let mut coeff = BigInt::one();
    let mut exps = vec![0u32; nvars];
    let mut first = true;
    loop {
        match cur.peek() {
            None if first => return Err(ParsePolyError::Eof),
            Some('*') if !first => {
                cur.bump();
            }
            _ => {}
        }
        match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let d = cur.digits();
                let mut v: BigInt = d.parse().expect("digits");
                if cur.peek() == Some('^') {
                    cur.bump();
                    let e: u32 = cur.digits().parse().map_err(|_| ParsePolyError::Eof)?;
                    v = num_traits::pow(v, e as usize);
                }
                coeff *= v;
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let mut name = String::new();
                name.push(c);
                cur.bump();
                name.push_str(&cur.digits());
                let idx = lookup(&name).ok_or_else(|| ParsePolyError::UnknownVariable(name.clone()))?;
                if idx >= nvars {
                    return Err(ParsePolyError::OutOfRange { name, nvars });
                }
                let mut e = 1u32;
                if cur.peek() == Some('^') {
                    cur.bump();
                    let ds = cur.digits();
                    if ds.is_empty() {
                        return match cur.peek() {
                            Some(ch) => Err(ParsePolyError::Unexpected(ch, cur.offset())),
                            None => Err(ParsePolyError::Eof),
                        };
                    }
                    e = ds.parse().expect("digits");
                }
                exps[idx] += e;
            }
            Some(ch) => return Err(ParsePolyError::Unexpected(ch, cur.offset())),
            None => return Err(ParsePolyError::Eof),
        }
        first = false;
        match cur.peek() {
            Some('+') | Some('-') | None => break,
            _ => {}
        }
    }
    Ok((Monomial(exps), coeff))
}
