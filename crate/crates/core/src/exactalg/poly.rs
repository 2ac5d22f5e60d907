//! Sparse commutative polynomials, generic over the variable type and the
//! coefficient ring.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficient ring of a [`Poly`]: any commutative ring expressed through the
/// `num-traits` operator bounds.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
        + Send
        + Sync
{
}

/// Variable types usable in a [`Poly`].
pub trait Var: Clone + Ord + Hash + fmt::Debug + Send + Sync {}

impl<T> Var for T where T: Clone + Ord + Hash + fmt::Debug + Send + Sync {}

/// A power product `∏ v^e`, stored sorted by variable with positive exponents.
///
/// The ordering is lexicographic with smaller variables taking priority, so
/// the greatest monomial is the one with the largest power of the smallest
/// variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial<V> {
    powers: Vec<(V, u32)>,
}

impl<V: Var> Monomial<V> {
    pub fn one() -> Self {
        Monomial { powers: Vec::new() }
    }

    pub fn var(v: V) -> Self {
        Monomial { powers: vec![(v, 1)] }
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs, merging
    /// repeats and dropping zero exponents.
    pub fn from_powers<I: IntoIterator<Item = (V, u32)>>(powers: I) -> Self {
        let mut map: BTreeMap<V, u32> = BTreeMap::new();
        for (v, e) in powers {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial {
            powers: map.into_iter().filter(|(_, e)| *e > 0).collect(),
        }
    }

    pub fn powers(&self) -> &[(V, u32)] {
        &self.powers
    }

    pub fn is_one(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.powers.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: &V) -> u32 {
        self.powers
            .binary_search_by(|(w, _)| w.cmp(v))
            .map_or(0, |k| self.powers[k].1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.powers.len() + other.powers.len());
        let (mut a, mut b) = (0, 0);
        while a < self.powers.len() && b < other.powers.len() {
            let (va, ea) = &self.powers[a];
            let (vb, eb) = &other.powers[b];
            match va.cmp(vb) {
                Ordering::Less => {
                    out.push((va.clone(), *ea));
                    a += 1;
                }
                Ordering::Greater => {
                    out.push((vb.clone(), *eb));
                    b += 1;
                }
                Ordering::Equal => {
                    out.push((va.clone(), ea + eb));
                    a += 1;
                    b += 1;
                }
            }
        }
        out.extend_from_slice(&self.powers[a..]);
        out.extend_from_slice(&other.powers[b..]);
        Monomial { powers: out }
    }

    /// Splits into the part over variables accepted by `pred` and the rest.
    pub fn partition(&self, pred: impl Fn(&V) -> bool) -> (Self, Self) {
        let (yes, no): (Vec<_>, Vec<_>) = self.powers.iter().cloned().partition(|(v, _)| pred(v));
        (Monomial { powers: yes }, Monomial { powers: no })
    }
}

impl<V: Var> Ord for Monomial<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.powers.iter();
        let mut b = other.powers.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => continue,
                        o => return o,
                    },
                },
            }
        }
    }
}

impl<V: Var> PartialOrd for Monomial<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial `Σ c_m · m` with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<V: Var, C> {
    terms: BTreeMap<Monomial<V>, C>,
}

impl<V: Var, C: Coeff> Poly<V, C> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: V) -> Self {
        Self::term(C::one(), Monomial::var(v))
    }

    pub fn term(c: C, m: Monomial<V>) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial<V>, C)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending monomial order (the printing order).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial<V>, &C)> {
        self.terms.iter().rev()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial<V>, C)> {
        self.terms.into_iter().rev()
    }

    pub fn coeff(&self, m: &Monomial<V>) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn variables(&self) -> Vec<V> {
        let mut vs: Vec<V> = self
            .terms
            .keys()
            .flat_map(|m| m.powers().iter().map(|(v, _)| v.clone()))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn add_term(&mut self, m: Monomial<V>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms.iter().map(|(m, k)| (m.clone(), k.clone() * c.clone())))
    }

    pub fn mul_monomial(&self, c: &C, m: &Monomial<V>) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (k.mul(m), v.clone() * c.clone())))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<V, D> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Ring-homomorphic substitution: every variable accepted by `sigma` is
    /// replaced by its image, the rest stay put.
    pub fn substitute(&self, sigma: impl Fn(&V) -> Option<Self>) -> Self {
        let mut cache: HashMap<(V, u32), Self> = HashMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut acc = Self::constant(c.clone());
            for (v, e) in m.powers() {
                match sigma(v) {
                    Some(img) => {
                        let pw = cache.entry((v.clone(), *e)).or_insert_with(|| img.pow(*e)).clone();
                        acc = &acc * &pw;
                    }
                    None => kept.push((v.clone(), *e)),
                }
            }
            if !kept.is_empty() {
                acc = acc.mul_monomial(&C::one(), &Monomial::from_powers(kept));
            }
            out = out + acc;
        }
        out
    }

    /// Evaluates every variable into the coefficient ring.
    pub fn evaluate(&self, value: impl Fn(&V) -> C) -> C {
        let mut total = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.powers() {
                let x = value(v);
                for _ in 0..*e {
                    t = t * x.clone();
                }
            }
            total = total + t;
        }
        total
    }

    /// Coefficient of `∏ v^spec[v]` viewed as a polynomial in the variables of
    /// `spec`, with coefficients in the remaining variables. Variables absent
    /// from the map are treated as unconstrained; a variable mapped to `0`
    /// must not occur.
    pub fn coefficient_of(&self, spec: &BTreeMap<V, u32>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let matches = spec.iter().all(|(v, e)| m.exponent(v) == *e);
            if matches {
                let (_, rest) = m.partition(|v| spec.contains_key(v));
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    /// Rewrites `self` as a polynomial in the variables accepted by `outer`
    /// whose coefficients are polynomials in the other variables.
    pub fn split(&self, outer: impl Fn(&V) -> bool) -> Poly<V, Poly<V, C>> {
        let mut groups: BTreeMap<Monomial<V>, Poly<V, C>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (o, i) = m.partition(&outer);
            groups.entry(o).or_insert_with(Self::zero).add_term(i, c.clone());
        }
        Poly::from_terms(groups)
    }
}

impl<V: Var, C: Coeff> Poly<V, Poly<V, C>> {
    /// Inverse of [`Poly::split`].
    pub fn flatten(&self) -> Poly<V, C> {
        let mut out = Poly::zero();
        for (m, inner) in self.terms() {
            for (k, c) in inner.terms() {
                out.add_term(m.mul(k), c.clone());
            }
        }
        out
    }
}

impl<'a, V: Var, C: Coeff> Add<&'a Poly<V, C>> for &'a Poly<V, C> {
    type Output = Poly<V, C>;
    fn add(self, rhs: &'a Poly<V, C>) -> Poly<V, C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a, V: Var, C: Coeff> AddAssign<&'a Poly<V, C>> for Poly<V, C> {
    fn add_assign(&mut self, rhs: &'a Poly<V, C>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<'a, V: Var, C: Coeff> Sub<&'a Poly<V, C>> for &'a Poly<V, C> {
    type Output = Poly<V, C>;
    fn sub(self, rhs: &'a Poly<V, C>) -> Poly<V, C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a, V: Var, C: Coeff> Mul<&'a Poly<V, C>> for &'a Poly<V, C> {
    type Output = Poly<V, C>;
    fn mul(self, rhs: &'a Poly<V, C>) -> Poly<V, C> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut acc: HashMap<Monomial<V>, C> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                accumulate(&mut acc, ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Poly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

fn accumulate<K: Hash + Eq, C: Coeff>(acc: &mut HashMap<K, C>, key: K, c: C) {
    match acc.entry(key) {
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::hash_map::Entry::Occupied(mut e) => {
            let cur = std::mem::replace(e.get_mut(), C::zero());
            *e.get_mut() = cur + c;
        }
    }
}

impl<V: Var, C: Coeff> Neg for &Poly<V, C> {
    type Output = Poly<V, C>;
    fn neg(self) -> Poly<V, C> {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl<V: Var, C: Coeff> Add for Poly<V, C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        if self.terms.len() < rhs.terms.len() {
            let mut r = rhs;
            r += &self;
            return r;
        }
        self += &rhs;
        self
    }
}

impl<V: Var, C: Coeff> Sub for Poly<V, C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<V: Var, C: Coeff> Mul for Poly<V, C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<V: Var, C: Coeff> Neg for Poly<V, C> {
    type Output = Self;
    fn neg(mut self) -> Self {
        for c in self.terms.values_mut() {
            *c = -std::mem::replace(c, C::zero());
        }
        self
    }
}

impl<V: Var, C: Coeff> Zero for Poly<V, C> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<V: Var, C: Coeff> One for Poly<V, C> {
    fn one() -> Self {
        Poly::one()
    }
}

impl<V: Var, C: Coeff> Default for Poly<V, C> {
    fn default() -> Self {
        Poly::zero()
    }
}

impl<V: Var> Poly<V, BigInt> {
    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::constant(n.into())
    }

    /// Divides out the gcd of the coefficients and makes the leading
    /// coefficient positive.
    pub fn primitive(&self) -> Self {
        use num_integer::Integer;
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
        }
        if g.is_zero() {
            return self.clone();
        }
        if self.terms().next().is_some_and(|(_, c)| c.is_negative()) {
            g = -g;
        }
        self.map_coeffs(|c| c / &g)
    }
}

/// How a coefficient renders inside a sum.
pub trait CoeffDisplay {
    /// Sign and magnitude text; the magnitude is `None` when it equals one.
    fn render(&self) -> (bool, Option<String>);
}

impl CoeffDisplay for BigInt {
    fn render(&self) -> (bool, Option<String>) {
        let mag = self.abs();
        (self.is_negative(), (!mag.is_one()).then(|| mag.to_string()))
    }
}

impl CoeffDisplay for BigRational {
    fn render(&self) -> (bool, Option<String>) {
        let mag = self.abs();
        (self.is_negative(), (!mag.is_one()).then(|| mag.to_string()))
    }
}

impl<V: Var + fmt::Display, C: Coeff + CoeffDisplay> CoeffDisplay for Poly<V, C> {
    fn render(&self) -> (bool, Option<String>) {
        if self.len() == 1 {
            let (neg, mag) = self
                .terms()
                .next()
                .map(|(m, c)| (m, c.render()))
                .map(|(m, (neg, mag))| {
                    if m.is_one() {
                        (neg, mag)
                    } else {
                        let mono = render_monomial(m);
                        (neg, Some(mag.map_or(mono.clone(), |k| format!("{k}*{mono}"))))
                    }
                })
                .expect("single term");
            return (neg, mag);
        }
        (false, Some(format!("({self})")))
    }
}

fn render_monomial<V: Var + fmt::Display>(m: &Monomial<V>) -> String {
    m.powers()
        .iter()
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

impl<V: Var + fmt::Display, C: Coeff + CoeffDisplay> fmt::Display for Poly<V, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let (neg, mag) = c.render();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let body = if m.is_one() {
                mag.unwrap_or_else(|| "1".to_string())
            } else {
                let mono = render_monomial(m);
                match mag {
                    Some(mag) => format!("{mag}*{mono}"),
                    None => mono,
                }
            };
            f.write_str(&body)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Poly<&'static str, BigInt>;

    fn v(name: &'static str) -> P {
        P::var(name)
    }

    #[test]
    fn cancellation_and_absorption() {
        let (x, y) = (v("x"), v("y"));
        let sum = &(&x + &y) + &(&x - &y);
        assert_eq!(sum, x.scale(&BigInt::from(2)));
        assert!((&P::zero() * &x).is_zero());
    }

    #[test]
    fn monomial_order_prefers_small_variables() {
        let a = Monomial::from_powers([("a", 1)]);
        let b2 = Monomial::from_powers([("b", 2)]);
        let ab = Monomial::from_powers([("a", 1), ("b", 1)]);
        assert!(a > b2);
        assert!(ab > a);
        assert!(Monomial::<&str>::one() < b2);
    }

    #[test]
    fn display_orders_terms_and_signs() {
        let p = &(&v("a").pow(2) - &v("b").scale(&BigInt::from(3))) - &P::one();
        assert_eq!(p.to_string(), "a^2 - 3*b - 1");
        assert_eq!((-&v("a")).to_string(), "-a");
        assert_eq!(P::zero().to_string(), "0");
    }

    #[test]
    fn split_then_flatten_round_trips() {
        let p = (&(&v("l") * &v("x")) + &v("x").pow(2)) + P::from_int(3);
        let s = p.split(|name| *name == "l");
        assert_eq!(s.len(), 2);
        assert_eq!(s.flatten(), p);
    }

    #[test]
    fn coefficient_of_picks_exact_powers() {
        let l0 = v("l0");
        let l1 = v("l1");
        let p = (&l0 + &l1).pow(2);
        let spec = BTreeMap::from([("l0", 1), ("l1", 1)]);
        assert_eq!(p.coefficient_of(&spec), P::from_int(2));
        let spec = BTreeMap::from([("l0", 0)]);
        assert_eq!(p.coefficient_of(&spec), l1.pow(2));
    }
}
