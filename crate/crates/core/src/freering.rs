//! The free ring `F_S = ℤ⟨x_s⟩`: words, elements, multidegrees and word
//! enumeration.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactalg::Coeff;
use crate::label::Label;
use crate::text::{parse_full, ExprValue};

/// A word in the generators; the empty word is the unit `1`.
///
/// Words are ordered length-first, then lexicographically by label.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Label>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn letter(l: Label) -> Self {
        Word { letters: vec![l] }
    }

    pub fn from_letters(letters: Vec<Label>) -> Self {
        Word { letters }
    }

    /// Word from label names, e.g. `Word::from_names(&["x", "y", "x"])`.
    pub fn from_names(names: &[&str]) -> Self {
        Word {
            letters: names.iter().map(|s| Label::new(s)).collect(),
        }
    }

    pub fn letters(&self) -> &[Label] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn multidegree(&self) -> MultiDegree {
        let mut d = MultiDegree::zero();
        for l in &self.letters {
            d.bump(l, 1);
        }
        d
    }

    /// The least word among the cyclic rotations of `self`.
    pub fn canonical_rotation(&self) -> Word {
        (0..self.len().max(1))
            .map(|k| {
                let mut letters = self.letters[k..].to_vec();
                letters.extend_from_slice(&self.letters[..k]);
                Word { letters }
            })
            .min()
            .unwrap_or_default()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses `1` or `x*y*x`.
    fn from_str(s: &str) -> Result<Self> {
        let mut lx = crate::text::Lexer::new(s)?;
        let w = parse_word(&mut lx)?;
        lx.finish()?;
        Ok(w)
    }
}

pub(crate) fn parse_word(lx: &mut crate::text::Lexer) -> Result<Word> {
    use crate::text::Tok;
    if let Some(Tok::Int(n)) = lx.peek() {
        if n.is_one() {
            lx.next();
            return Ok(Word::empty());
        }
        return lx.error("a word is `1` or generators joined by `*`");
    }
    let mut letters = vec![Label::new(&lx.expect_ident()?)];
    while lx.peek() == Some(&Tok::Sym('*')) && matches!(lx.peek_at(1), Some(Tok::Ident(_))) {
        lx.next();
        letters.push(Label::new(&lx.expect_ident()?));
    }
    Ok(Word { letters })
}

/// Finitely supported map from generator labels to ℕ.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultiDegree {
    degrees: BTreeMap<Label, u32>,
}

impl MultiDegree {
    pub fn zero() -> Self {
        MultiDegree::default()
    }

    /// Degree vector over `gens`, e.g. `from_vec(&[x, y], &[2, 1])`.
    pub fn from_vec(gens: &[Label], degrees: &[u32]) -> Self {
        assert_eq!(gens.len(), degrees.len());
        let mut d = MultiDegree::zero();
        for (g, k) in gens.iter().zip(degrees) {
            d.bump(g, *k);
        }
        d
    }

    pub fn bump(&mut self, l: &Label, k: u32) {
        if k > 0 {
            *self.degrees.entry(l.clone()).or_insert(0) += k;
        }
    }

    pub fn get(&self, l: &Label) -> u32 {
        self.degrees.get(l).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u32 {
        self.degrees.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Label, u32)> {
        self.degrees.iter().map(|(l, k)| (l, *k))
    }

    pub fn scaled(&self, k: u32) -> Self {
        MultiDegree {
            degrees: self
                .degrees
                .iter()
                .filter(|_| k > 0)
                .map(|(l, d)| (l.clone(), d * k))
                .collect(),
        }
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &Self) -> bool {
        self.degrees.iter().all(|(l, k)| *k <= other.get(l))
    }

    /// Componentwise difference, `None` unless `other ≤ self`.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        if !other.le(self) {
            return None;
        }
        let mut d = MultiDegree::zero();
        for (l, k) in &self.degrees {
            d.bump(l, k - other.get(l));
        }
        Some(d)
    }

    pub fn to_vec(&self, gens: &[Label]) -> Vec<u32> {
        gens.iter().map(|g| self.get(g)).collect()
    }

    /// All degrees `d ≤ bound` componentwise over `gens`, in graded order.
    pub fn all_below(gens: &[Label], bound: &MultiDegree) -> Vec<MultiDegree> {
        let mut out = vec![MultiDegree::zero()];
        for g in gens {
            let mut next = Vec::new();
            for d in &out {
                for k in 0..=bound.get(g) {
                    let mut e = d.clone();
                    e.bump(g, k);
                    next.push(e);
                }
            }
            out = next;
        }
        out.sort_by_key(|d| (d.total(), std::cmp::Reverse(d.to_vec(gens))));
        out
    }

    /// All degrees over `gens` with total at most `max_total`, graded order.
    pub fn all_with_total_at_most(gens: &[Label], max_total: u32) -> Vec<MultiDegree> {
        let bound = MultiDegree::from_vec(gens, &vec![max_total; gens.len()]);
        Self::all_below(gens, &bound)
            .into_iter()
            .filter(|d| d.total() <= max_total)
            .collect()
    }
}

impl Add for &MultiDegree {
    type Output = MultiDegree;
    fn add(self, rhs: &MultiDegree) -> MultiDegree {
        let mut d = self.clone();
        for (l, k) in &rhs.degrees {
            d.bump(l, *k);
        }
        d
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, (l, d)) in self.degrees.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}:{d}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Element `Σ c_w w` of the free algebra over the coefficient ring `C`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeAlg<C> {
    terms: BTreeMap<Word, C>,
}

/// Element of the free ring `F_S`.
pub type FreeElem = FreeAlg<BigInt>;

impl<C: Coeff> FreeAlg<C> {
    pub fn zero() -> Self {
        FreeAlg { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), Word::empty())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, Word::empty())
    }

    pub fn word(w: Word) -> Self {
        Self::monomial(C::one(), w)
    }

    pub fn generator(l: Label) -> Self {
        Self::word(Word::letter(l))
    }

    pub fn monomial(c: C, w: Word) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, C)>>(it: I) -> Self {
        let mut e = Self::zero();
        for (w, c) in it {
            e.add_term(w, c);
        }
        e
    }

    pub fn add_term(&mut self, w: Word, c: C) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&w) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(w, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing word order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn support(&self) -> Vec<Word> {
        self.terms.keys().cloned().collect()
    }

    /// Membership in the augmentation ideal `F_S^+`.
    pub fn is_augmented(&self) -> bool {
        !self.terms.contains_key(&Word::empty())
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, k)| (w.clone(), k.clone() * c.clone())))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn labels(&self) -> Vec<Label> {
        let mut ls: Vec<Label> = self.terms.keys().flat_map(|w| w.letters().iter().cloned()).collect();
        ls.sort();
        ls.dedup();
        ls
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> FreeAlg<D> {
        FreeAlg::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }
}

/// Free-ring product: bilinear extension of word concatenation.
pub fn free_mul<C: Coeff>(a: &FreeAlg<C>, b: &FreeAlg<C>) -> FreeAlg<C> {
    let mut out = FreeAlg::zero();
    for (u, cu) in &a.terms {
        for (v, cv) in &b.terms {
            out.add_term(u.concat(v), cu.clone() * cv.clone());
        }
    }
    out
}

impl<'a, C: Coeff> Mul<&'a FreeAlg<C>> for &'a FreeAlg<C> {
    type Output = FreeAlg<C>;
    fn mul(self, rhs: &'a FreeAlg<C>) -> FreeAlg<C> {
        free_mul(self, rhs)
    }
}

impl<'a, C: Coeff> Add<&'a FreeAlg<C>> for &'a FreeAlg<C> {
    type Output = FreeAlg<C>;
    fn add(self, rhs: &'a FreeAlg<C>) -> FreeAlg<C> {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl<'a, C: Coeff> Sub<&'a FreeAlg<C>> for &'a FreeAlg<C> {
    type Output = FreeAlg<C>;
    fn sub(self, rhs: &'a FreeAlg<C>) -> FreeAlg<C> {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
}

impl<C: Coeff> Add for FreeAlg<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<C: Coeff> Sub for FreeAlg<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<C: Coeff> Mul for FreeAlg<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        free_mul(&self, &rhs)
    }
}

impl<C: Coeff> Neg for FreeAlg<C> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(&-C::one())
    }
}

impl ExprValue for FreeElem {
    fn from_int(n: BigInt) -> Self {
        FreeElem::constant(n)
    }
}

impl FromStr for FreeElem {
    type Err = Error;

    /// Integer-coefficient expressions in the generators, e.g. `2*x*y - 3`
    /// or `(1+x)^2`.
    fn from_str(s: &str) -> Result<Self> {
        parse_full(s, |lx| Ok(FreeElem::generator(Label::new(&lx.expect_ident()?))))
    }
}

impl fmt::Display for FreeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num_traits::Signed;
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}

impl<C: fmt::Debug> fmt::Debug for FreeAlg<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// All words over `gens` of length at most `max_len`, in length-lex order
/// with respect to the order of `gens`.
pub fn enumerate_words(gens: &[Label], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * gens.len());
        for w in &layer {
            for g in gens {
                next.push(w.concat(&Word::letter(g.clone())));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Words of exactly length `len`.
pub fn words_of_length(gens: &[Label], len: usize) -> Vec<Word> {
    enumerate_words(gens, len)
        .into_iter()
        .filter(|w| w.len() == len)
        .collect()
}

/// All words whose multidegree is componentwise at most `bound`, length-lex.
pub fn words_below(gens: &[Label], bound: &MultiDegree) -> Vec<Word> {
    let max_len = bound.total() as usize;
    let mut out = vec![Word::empty()];
    let mut layer = vec![(Word::empty(), MultiDegree::zero())];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (w, d) in &layer {
            for g in gens {
                if d.get(g) < bound.get(g) {
                    let mut e = d.clone();
                    e.bump(g, 1);
                    next.push((w.concat(&Word::letter(g.clone())), e));
                }
            }
        }
        out.extend(next.iter().map(|(w, _)| w.clone()));
        layer = next;
    }
    out
}

/// All words of multidegree exactly `d`.
pub fn words_with_multidegree(gens: &[Label], d: &MultiDegree) -> Vec<Word> {
    words_below(gens, d)
        .into_iter()
        .filter(|w| w.multidegree() == *d)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::labels;

    fn g(s: &str) -> FreeElem {
        s.parse().unwrap()
    }

    #[test]
    fn product_is_noncommutative() {
        let (x, y) = (g("x"), g("y"));
        assert_eq!(&x * &y, FreeElem::word(Word::from_names(&["x", "y"])));
        assert_ne!(&x * &y, &y * &x);
    }

    #[test]
    fn unit_and_collection() {
        let f = g("2*x*y - 3");
        assert_eq!(&FreeElem::one() * &f, f);
        assert_eq!(&g("x+1") * &g("x-1"), g("x*x - 1"));
    }

    #[test]
    fn display_round_trip() {
        for s in ["2*x*y - 3", "1", "-x + y*x", "0"] {
            let e = g(s);
            assert_eq!(g(&e.to_string()), e, "{s}");
        }
        assert_eq!(g("3 - 2*x*y").to_string(), "3 - 2*x*y");
        assert_eq!(Word::empty().to_string(), "1");
    }

    #[test]
    fn multidegrees() {
        assert!(Word::empty().multidegree().is_zero());
        let w = Word::from_names(&["x", "y", "x"]);
        let ls = labels(&["x", "y"]);
        assert_eq!(w.multidegree().to_vec(&ls), vec![2, 1]);
        let (u, v) = (Word::from_names(&["x"]), Word::from_names(&["y"]));
        assert_eq!(u.concat(&v).multidegree(), &u.multidegree() + &v.multidegree());
    }

    #[test]
    fn enumeration_examples() {
        let x = labels(&["x"]);
        let ws: Vec<String> = enumerate_words(&x, 2).iter().map(|w| w.to_string()).collect();
        assert_eq!(ws, ["1", "x", "x*x"]);
        let xy = labels(&["x", "y"]);
        let ws: Vec<String> = words_of_length(&xy, 2).iter().map(|w| w.to_string()).collect();
        assert_eq!(ws, ["x*x", "x*y", "y*x", "y*y"]);
        assert_eq!(enumerate_words(&xy, 3).len(), 15);
    }

    #[test]
    fn enumeration_follows_declared_order() {
        let yx = labels(&["y", "x"]);
        let ws: Vec<String> = words_of_length(&yx, 2).iter().map(|w| w.to_string()).collect();
        assert_eq!(ws, ["y*y", "y*x", "x*y", "x*x"]);
    }

    #[test]
    fn bounded_enumeration() {
        let xy = labels(&["x", "y"]);
        let d = MultiDegree::from_vec(&xy, &[2, 1]);
        assert_eq!(words_with_multidegree(&xy, &d).len(), 3);
        // 1 + 2 (x,y) + 3 (xx,xy,yx) + 3 (xxy,xyx,yxx)
        assert_eq!(words_below(&xy, &d).len(), 9);
    }

    #[test]
    fn canonical_rotation_is_least() {
        let w = Word::from_names(&["y", "x", "x"]);
        assert_eq!(w.canonical_rotation(), Word::from_names(&["x", "x", "y"]));
        assert_eq!(Word::empty().canonical_rotation(), Word::empty());
    }

    #[test]
    fn augmentation() {
        assert!(g("x*y - y").is_augmented());
        assert!(!g("x + 2").is_augmented());
    }

    #[test]
    fn parse_error_position() {
        match "x + * y".parse::<FreeElem>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
    }
}
