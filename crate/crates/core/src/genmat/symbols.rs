use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactalg::{Coeff, Monomial, Poly};
use crate::freering::{parse_word, MultiDegree, Word};
use crate::text::{parse_full, ExprValue, Lexer};

/// The abstract generator `e_i(w)` standing for `e_i(j_n(w))`.
///
/// The word is stored as the least of its cyclic rotations, since `ab` and
/// `ba` have the same characteristic polynomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ESymbol {
    i: u32,
    w: Word,
}

impl ESymbol {
    pub fn new(i: u32, w: &Word) -> Result<Self> {
        if i == 0 {
            return Err(Error::Invalid("e[0] is the constant 1, not a generator".into()));
        }
        if w.is_empty() {
            return Err(Error::Invalid(format!("e[{i}](1) is a constant, not a generator")));
        }
        Ok(ESymbol {
            i,
            w: w.canonical_rotation(),
        })
    }

    pub fn index(&self) -> u32 {
        self.i
    }

    pub fn word(&self) -> &Word {
        &self.w
    }

    pub fn multidegree(&self) -> MultiDegree {
        self.w.multidegree().scaled(self.i)
    }
}

impl fmt::Display for ESymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e[{}]({})", self.i, self.w)
    }
}

impl fmt::Debug for ESymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Integer polynomial in the symbols `e_i(w)`.
pub type EExpression = Poly<ESymbol, BigInt>;

impl ExprValue for EExpression {
    fn from_int(n: BigInt) -> Self {
        EExpression::constant(n)
    }
}

fn parse_symbol(lx: &mut Lexer) -> Result<ESymbol> {
    let pos = lx.position();
    let name = lx.expect_ident()?;
    if name != "e" {
        return Err(Error::Parse {
            pos,
            msg: format!("expected `e[i](word)`, found `{name}`"),
        });
    }
    lx.expect_sym('[')?;
    let i = lx.expect_small()?;
    lx.expect_sym(']')?;
    lx.expect_sym('(')?;
    let w = parse_word(lx)?;
    lx.expect_sym(')')?;
    ESymbol::new(i, &w).map_err(|e| Error::Parse {
        pos,
        msg: e.to_string(),
    })
}

impl FromStr for ESymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lx = Lexer::new(s)?;
        let sym = parse_symbol(&mut lx)?;
        lx.finish()?;
        Ok(sym)
    }
}

impl FromStr for EExpression {
    type Err = Error;

    /// Parses e.g. `e[1](x)^2 - e[1](x*x) - 2*e[2](x)`.
    fn from_str(s: &str) -> Result<Self> {
        parse_full(s, |lx| parse_symbol(lx).map(EExpression::var))
    }
}

/// Multidegree of a homogeneous expression, `None` for zero or mixed ones.
pub fn expression_multidegree(e: &EExpression) -> Option<MultiDegree> {
    let mut degrees = e.terms().map(|(m, _)| monomial_multidegree(m));
    let first = degrees.next()?;
    degrees.all(|d| d == first).then_some(first)
}

pub(crate) fn monomial_multidegree(m: &Monomial<ESymbol>) -> MultiDegree {
    let mut d = MultiDegree::zero();
    for (s, k) in m.powers() {
        d = &d + &s.multidegree().scaled(*k);
    }
    d
}

/// Ring-homomorphic evaluation of an expression into `R`, given the images
/// of the symbols and of the integers.
pub fn evaluate_expression<R: Coeff>(
    e: &EExpression,
    embed: impl Fn(&BigInt) -> R,
    mut value: impl FnMut(&ESymbol) -> Result<R>,
) -> Result<R> {
    let mut memo: HashMap<&ESymbol, R> = HashMap::new();
    let mut total = R::zero();
    for (m, c) in e.terms() {
        let mut t = embed(c);
        for (s, k) in m.powers() {
            if !memo.contains_key(s) {
                let v = value(s)?;
                memo.insert(s, v);
            }
            let v = &memo[s];
            for _ in 0..*k {
                t = t * v.clone();
            }
        }
        total = total + t;
    }
    Ok(total)
}

/// All products `∏ e_{i_k}(w_k)` with `1 ≤ i_k ≤ n`, words of length at most
/// `cap`, and total multidegree `Σ i_k · md(w_k) = d`, sorted.
pub fn e_monomials(n: u32, gens: &[crate::Label], d: &MultiDegree, cap: usize) -> Vec<Monomial<ESymbol>> {
    let mut symbols: Vec<ESymbol> = Vec::new();
    for w in crate::freering::words_below(gens, d) {
        if w.is_empty() || w.len() > cap || w.canonical_rotation() != w {
            continue;
        }
        let wd = w.multidegree();
        for i in 1..=n {
            if wd.scaled(i).le(d) {
                symbols.push(ESymbol { i, w: w.clone() });
            }
        }
    }
    symbols.sort();
    let degrees: Vec<MultiDegree> = symbols.iter().map(ESymbol::multidegree).collect();
    let mut out = Vec::new();
    let mut chosen: Vec<(ESymbol, u32)> = Vec::new();
    fn go(
        k: usize,
        acc: &MultiDegree,
        target: &MultiDegree,
        symbols: &[ESymbol],
        degrees: &[MultiDegree],
        chosen: &mut Vec<(ESymbol, u32)>,
        out: &mut Vec<Monomial<ESymbol>>,
    ) {
        if acc == target {
            out.push(Monomial::from_powers(chosen.iter().cloned()));
            return;
        }
        if k == symbols.len() {
            return;
        }
        go(k + 1, acc, target, symbols, degrees, chosen, out);
        let mut cur = acc.clone();
        let mut e = 0;
        loop {
            cur = &cur + &degrees[k];
            e += 1;
            if !cur.le(target) {
                break;
            }
            chosen.push((symbols[k].clone(), e));
            go(k + 1, &cur, target, symbols, degrees, chosen, out);
            chosen.pop();
        }
    }
    go(0, &MultiDegree::zero(), d, &symbols, &degrees, &mut chosen, &mut out);
    out.sort();
    out
}
