//! Tokenizer and a small recursive-descent parser shared by every expression
//! grammar in the crate (polynomials, free-ring elements, e-expressions and
//! divided-power monomials).

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

pub(crate) struct Lexer {
    toks: Vec<(usize, Tok)>,
    end: usize,
    cursor: usize,
}

impl Lexer {
    pub(crate) fn new(src: &str) -> Result<Self> {
        let bytes = src.as_bytes();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_ascii_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("ascii digits");
                toks.push((start, Tok::Int(n)));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((start, Tok::Ident(src[start..i].to_string())));
            } else if "+-*^()[],".contains(c) {
                toks.push((i, Tok::Sym(c)));
                i += 1;
            } else {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character `{c}`"),
                });
            }
        }
        Ok(Lexer {
            toks,
            end: src.len(),
            cursor: 0,
        })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.cursor).map(|(_, t)| t)
    }

    pub(crate) fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.toks.get(self.cursor + offset).map(|(_, t)| t)
    }

    pub(crate) fn position(&self) -> usize {
        self.toks.get(self.cursor).map_or(self.end, |(p, _)| *p)
    }

    pub(crate) fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.cursor).map(|(_, t)| t.clone());
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    pub(crate) fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.position(),
            msg: msg.into(),
        })
    }

    pub(crate) fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.cursor += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.error(format!("expected `{c}`"))
        }
    }

    pub(crate) fn expect_ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.cursor += 1;
                Ok(s)
            }
            _ => self.error("expected an identifier"),
        }
    }

    pub(crate) fn expect_int(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.cursor += 1;
                Ok(n)
            }
            _ => self.error("expected an integer"),
        }
    }

    pub(crate) fn expect_small(&mut self) -> Result<u32> {
        let pos = self.position();
        let n = self.expect_int()?;
        u32::try_from(n).map_err(|_| Error::Parse {
            pos,
            msg: "integer out of range".into(),
        })
    }

    pub(crate) fn finish(&self) -> Result<()> {
        if self.cursor == self.toks.len() {
            Ok(())
        } else {
            self.error("unexpected trailing input")
        }
    }
}

/// Values an integer-coefficient expression can evaluate into.
pub(crate) trait ExprValue:
    Sized + Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_int(n: BigInt) -> Self;
}

/// `sum := [+|-] product ((+|-) product)*`, `product := power (* power)*`,
/// `power := primary [^ int]`, `primary := int | ( sum ) | atom`.
///
/// `atom` is invoked when the next token is an identifier and must consume the
/// whole atom. Multiplication keeps operand order, so the parser also serves
/// noncommutative targets.
pub(crate) fn parse_expr<T, F>(lx: &mut Lexer, atom: &mut F) -> Result<T>
where
    T: ExprValue,
    F: FnMut(&mut Lexer) -> Result<T>,
{
    let mut acc = if lx.eat_sym('-') {
        -parse_product(lx, atom)?
    } else {
        lx.eat_sym('+');
        parse_product(lx, atom)?
    };
    loop {
        if lx.eat_sym('+') {
            acc = acc + parse_product(lx, atom)?;
        } else if lx.eat_sym('-') {
            acc = acc - parse_product(lx, atom)?;
        } else {
            return Ok(acc);
        }
    }
}

fn parse_product<T, F>(lx: &mut Lexer, atom: &mut F) -> Result<T>
where
    T: ExprValue,
    F: FnMut(&mut Lexer) -> Result<T>,
{
    let mut acc = parse_power(lx, atom)?;
    while lx.eat_sym('*') {
        acc = acc * parse_power(lx, atom)?;
    }
    Ok(acc)
}

fn parse_power<T, F>(lx: &mut Lexer, atom: &mut F) -> Result<T>
where
    T: ExprValue,
    F: FnMut(&mut Lexer) -> Result<T>,
{
    let base = match lx.peek() {
        Some(Tok::Int(_)) => T::from_int(lx.expect_int()?),
        Some(Tok::Sym('(')) => {
            lx.next();
            let inner = parse_expr(lx, atom)?;
            lx.expect_sym(')')?;
            inner
        }
        Some(Tok::Ident(_)) => atom(lx)?,
        _ => return lx.error("expected a term"),
    };
    if lx.eat_sym('^') {
        let e = lx.expect_small()?;
        let mut acc = T::from_int(BigInt::from(1));
        for _ in 0..e {
            acc = acc * base.clone();
        }
        Ok(acc)
    } else {
        Ok(base)
    }
}

/// Parses a whole string with [`parse_expr`].
pub(crate) fn parse_full<T, F>(src: &str, mut atom: F) -> Result<T>
where
    T: ExprValue,
    F: FnMut(&mut Lexer) -> Result<T>,
{
    let mut lx = Lexer::new(src)?;
    if lx.peek().is_none() {
        return lx.error("empty expression");
    }
    let v = parse_expr(&mut lx, &mut atom)?;
    lx.finish()?;
    Ok(v)
}
