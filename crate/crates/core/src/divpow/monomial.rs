use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::freering::{parse_word, FreeElem, MultiDegree, Word};
use crate::text::{Lexer, Tok};

/// Normal-form generator `1^(n−|α|) ∏ w^(α_w)` of `Γ_n(F_S)`.
///
/// Only non-empty words are stored; the exponent of the unit word is the
/// implicit padding `n − Σ α_w`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DPMonomial {
    n: u32,
    factors: BTreeMap<Word, u32>,
}

impl DPMonomial {
    /// The unit `1^(n)`.
    pub fn unit(n: u32) -> Self {
        DPMonomial {
            n,
            factors: BTreeMap::new(),
        }
    }

    /// Builds a normal-form monomial. Empty words and zero exponents are
    /// dropped; repeated words are rejected because merging them produces a
    /// binomial coefficient (use [`normalize`](super::normalize) for that).
    pub fn new<I: IntoIterator<Item = (Word, u32)>>(n: u32, factors: I) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (w, k) in factors {
            if w.is_empty() || k == 0 {
                continue;
            }
            if map.insert(w.clone(), k).is_some() {
                return Err(Error::Invalid(format!("word `{w}` repeated in a normal-form monomial")));
            }
        }
        let total: u32 = map.values().sum();
        if total > n {
            return Err(Error::DegreeMismatch {
                expected: n,
                found: total as i64,
            });
        }
        Ok(DPMonomial { n, factors: map })
    }

    /// `1^(n−i) w^(i)`.
    pub fn power(n: u32, w: Word, i: u32) -> Result<Self> {
        Self::new(n, [(w, i)])
    }

    pub(crate) fn from_raw(n: u32, factors: BTreeMap<Word, u32>) -> Self {
        debug_assert!(factors.keys().all(|w| !w.is_empty()));
        debug_assert!(factors.values().sum::<u32>() <= n);
        DPMonomial { n, factors }
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn padding(&self) -> u32 {
        self.n - self.weight()
    }

    /// `|α|`, the total exponent on non-empty words.
    pub fn weight(&self) -> u32 {
        self.factors.values().sum()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Word, u32)> {
        self.factors.iter().map(|(w, k)| (w, *k))
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn multidegree(&self) -> MultiDegree {
        let mut d = MultiDegree::zero();
        for (w, k) in &self.factors {
            d = &d + &w.multidegree().scaled(*k);
        }
        d
    }

    /// Words including the unit word (first, when padded) with their
    /// exponents: the index sets of the table product.
    pub fn slots(&self) -> Vec<(Word, u32)> {
        let mut out = Vec::with_capacity(self.factors.len() + 1);
        if self.padding() > 0 {
            out.push((Word::empty(), self.padding()));
        }
        out.extend(self.factors.iter().map(|(w, k)| (w.clone(), *k)));
        out
    }

    pub(crate) fn with_degree(&self, n: u32) -> Option<Self> {
        (self.weight() <= n).then(|| DPMonomial {
            n,
            factors: self.factors.clone(),
        })
    }

    pub(crate) fn without(&self, w: &Word) -> Self {
        let mut factors = self.factors.clone();
        factors.remove(w);
        DPMonomial { n: self.n, factors }
    }
}

impl fmt::Display for DPMonomial {
    /// `d(1,k)*d(w,e)*…`, padding first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !std::mem::take(&mut first) {
                f.write_str("*")?;
            }
            Ok(())
        };
        if self.padding() > 0 {
            sep(f)?;
            write!(f, "d(1,{})", self.padding())?;
        }
        for (w, k) in &self.factors {
            sep(f)?;
            write!(f, "d({w},{k})")?;
        }
        if first {
            // Only the degree-0 unit has neither padding nor factors.
            f.write_str("d(1,0)")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DPMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.n, self)
    }
}

/// Element of `Γ_n(F_S)`: integer combination of normal-form monomials of a
/// common degree `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DPElem {
    n: u32,
    terms: BTreeMap<DPMonomial, BigInt>,
}

impl DPElem {
    pub fn zero(n: u32) -> Self {
        DPElem {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(n: u32) -> Self {
        DPMonomial::unit(n).into()
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DPMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &DPMonomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: DPMonomial, c: BigInt) {
        assert_eq!(m.n, self.n, "mixed divided-power degrees");
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&m) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    pub fn add(&self, other: &DPElem) -> DPElem {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &DPElem) -> DPElem {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> DPElem {
        let mut out = DPElem::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    /// The common multidegree when the element is homogeneous.
    pub fn multidegree(&self) -> Option<MultiDegree> {
        let mut it = self.terms.keys().map(DPMonomial::multidegree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// The single monomial when the element is exactly one monomial with
    /// coefficient one.
    pub fn as_monomial(&self) -> Option<&DPMonomial> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && c.is_one() => Some(m),
            _ => None,
        }
    }
}

impl From<DPMonomial> for DPElem {
    fn from(m: DPMonomial) -> Self {
        let n = m.n;
        let mut e = DPElem::zero(n);
        e.add_term(m, BigInt::one());
        e
    }
}

impl fmt::Display for DPElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num_traits::Signed;
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DPElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.n, self)
    }
}

/// Parses `d(w,k)` factors joined by `*` into raw `(element, exponent)`
/// pairs. Returns whether an explicit `d(1,k)` factor was present.
pub(crate) fn parse_raw_factors(src: &str) -> Result<(Vec<(FreeElem, i64)>, bool)> {
    let mut lx = Lexer::new(src)?;
    let out = parse_product(&mut lx)?;
    lx.finish()?;
    Ok(out)
}

fn parse_product(lx: &mut Lexer) -> Result<(Vec<(FreeElem, i64)>, bool)> {
    let mut out = Vec::new();
    let mut explicit_unit = false;
    loop {
        let pos = lx.position();
        match lx.next() {
            Some(Tok::Ident(d)) if d == "d" => {}
            _ => {
                return Err(Error::Parse {
                    pos,
                    msg: "expected a factor `d(word,k)`".into(),
                })
            }
        }
        lx.expect_sym('(')?;
        let w = parse_word(lx)?;
        lx.expect_sym(',')?;
        let neg = lx.eat_sym('-');
        let k = lx.expect_small()? as i64;
        lx.expect_sym(')')?;
        explicit_unit |= w.is_empty();
        out.push((FreeElem::word(w), if neg { -k } else { k }));
        if !lx.eat_sym('*') {
            break;
        }
    }
    Ok((out, explicit_unit))
}

/// Normalizes one parsed product in `Γ_n`, adding the implicit padding.
fn product_in_degree(parsed: (Vec<(FreeElem, i64)>, bool), n: u32) -> Result<DPElem> {
    let (mut raw, explicit_unit) = parsed;
    if !explicit_unit {
        let weight: i64 = raw.iter().map(|(_, k)| *k).sum();
        if raw.iter().all(|(_, k)| *k >= 0) && weight < n as i64 {
            raw.push((FreeElem::one(), n as i64 - weight));
        }
    }
    super::normalize(&raw, n)
}

impl DPElem {
    /// Parses an integer combination of products of `d(w,k)` factors into
    /// `Γ_n`, e.g. `2*d(x,2) - d(x,1)*d(y,1)`, or `0`. Without an explicit
    /// `d(1,k)` factor the unit padding of a product is implicit; with one,
    /// its exponents must add up to `n`.
    pub fn parse(src: &str, n: u32) -> Result<DPElem> {
        let mut lx = Lexer::new(src)?;
        let mut out = DPElem::zero(n);
        let mut first = true;
        loop {
            let neg = if first {
                lx.eat_sym('-')
            } else if lx.eat_sym('+') {
                false
            } else if lx.eat_sym('-') {
                true
            } else {
                break;
            };
            first = false;
            let mut c = BigInt::one();
            if let Some(Tok::Int(_)) = lx.peek() {
                c = lx.expect_int()?;
                if !lx.eat_sym('*') {
                    if c.is_zero() {
                        continue;
                    }
                    return lx.error("a nonzero integer must multiply a product of `d(word,k)`");
                }
            }
            if neg {
                c = -c;
            }
            let term = product_in_degree(parse_product(&mut lx)?, n)?;
            out = out.add(&term.scale(&c));
        }
        lx.finish()?;
        Ok(out)
    }
}

impl DPMonomial {
    /// Parses a single normal-form monomial of degree `n` (see
    /// [`DPElem::parse`]).
    pub fn parse(src: &str, n: u32) -> Result<DPMonomial> {
        let e = DPElem::parse(src, n)?;
        e.as_monomial()
            .cloned()
            .ok_or_else(|| Error::Invalid(format!("`{src}` is not a normal-form monomial (it normalizes to {e})")))
    }
}

impl FromStr for DPMonomial {
    type Err = Error;

    /// Parses a monomial whose degree is read off its factors; the padding
    /// factor `d(1,k)` must then be explicit.
    fn from_str(s: &str) -> Result<Self> {
        let (raw, _) = parse_raw_factors(s)?;
        let n: i64 = raw.iter().map(|(_, k)| *k).sum();
        let n = u32::try_from(n).map_err(|_| Error::Invalid(format!("negative degree in `{s}`")))?;
        DPMonomial::parse(s, n)
    }
}
