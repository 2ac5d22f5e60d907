//! Divided powers of the free ring: the normal form of `Γ_n(F_S)`, its table
//! product `τ_n`, the coefficients of the universal law `γ_n`, ranks of the
//! abelianization in a fixed multidegree, and the transition map `ρ_n`.

mod monomial;
mod tables;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{int_rank, Matrix};
use crate::freering::{words_below, FreeElem, MultiDegree, Word};
use crate::label::Label;

pub use monomial::{DPElem, DPMonomial};
pub use tables::{contingency_tables, for_each_table, ContingencyTable};

/// Monomial of `Γ(F_S)` that still carries the unit word explicitly.
type RawMonomial = BTreeMap<Word, u32>;

pub(crate) fn binomial(n: u32, k: u32) -> BigInt {
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Multiplies `w^(k)` into `m` in `Γ(F_S)`, returning the factor
/// `C(j+k, k)` picked up when `w^(j)` was already present.
fn absorb(m: &mut RawMonomial, w: Word, k: u32) -> BigInt {
    let cur = m.entry(w).or_insert(0);
    let c = if *cur == 0 {
        BigInt::one()
    } else {
        binomial(*cur + k, k)
    };
    *cur += k;
    c
}

/// `a^(e)` expanded over the words of `a`:
/// `Σ_{|α|=e} ∏ c_w^{α_w} ∏ w^(α_w)`.
fn expand_power(a: &FreeElem, e: u32) -> Vec<(RawMonomial, BigInt)> {
    let support: Vec<(&Word, &BigInt)> = a.terms().collect();
    let mut out = Vec::new();
    let mut alpha = vec![0u32; support.len()];
    fn go(k: usize, left: u32, support: &[(&Word, &BigInt)], alpha: &mut [u32], out: &mut Vec<(RawMonomial, BigInt)>) {
        if k == support.len() {
            if left == 0 {
                let mut m = RawMonomial::new();
                let mut c = BigInt::one();
                for ((w, coef), &ak) in support.iter().zip(alpha.iter()) {
                    if ak > 0 {
                        m.insert((*w).clone(), ak);
                        c *= num_traits::pow(coef.to_owned().clone(), ak as usize);
                    }
                }
                out.push((m, c));
            }
            return;
        }
        let range = if k + 1 == support.len() { left..=left } else { 0..=left };
        for v in range {
            alpha[k] = v;
            go(k + 1, left - v, support, alpha, out);
        }
        alpha[k] = 0;
    }
    if e == 0 {
        return vec![(RawMonomial::new(), BigInt::one())];
    }
    go(0, e, &support, &mut alpha, &mut out);
    out
}

fn finish(n: u32, acc: BTreeMap<RawMonomial, BigInt>) -> DPElem {
    let mut out = DPElem::zero(n);
    for (mut m, c) in acc {
        m.remove(&Word::empty());
        out.add_term(DPMonomial::from_raw(n, m), c);
    }
    out
}

/// Normal form in `Γ_n(F_S)` of the formal product `∏ a_k^(e_k)`.
///
/// Sums are expanded by `(m+n)^(k) = Σ m^(i) n^(j)`, integer scalars come out
/// as `r^i`, repeated words merge by `m^(i) m^(j) = C(i+j, i) m^(i+j)`, and any
/// negative exponent makes the product vanish. The exponents must add up to
/// `n`; the unit word counts towards the total.
pub fn normalize(raw: &[(FreeElem, i64)], n: u32) -> Result<DPElem> {
    if raw.iter().any(|(_, k)| *k < 0) {
        return Ok(DPElem::zero(n));
    }
    let total: i64 = raw.iter().map(|(_, k)| *k).sum();
    if total != n as i64 {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: total,
        });
    }
    let mut acc: BTreeMap<RawMonomial, BigInt> = BTreeMap::from([(RawMonomial::new(), BigInt::one())]);
    for (a, e) in raw {
        let expansion = expand_power(a, *e as u32);
        let mut next: BTreeMap<RawMonomial, BigInt> = BTreeMap::new();
        for (m, c) in &acc {
            for (f, d) in &expansion {
                let mut prod = m.clone();
                let mut coef = c * d;
                for (w, k) in f {
                    coef *= absorb(&mut prod, w.clone(), *k);
                }
                if !coef.is_zero() {
                    *next.entry(prod).or_insert_with(BigInt::zero) += coef;
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    Ok(finish(n, acc))
}

/// `τ_n` product of two normal-form monomials:
/// `Σ_{λ ∈ M(α,β)} ∏ (a_i b_j)^(λ_ij)`, with the unit word among the `a_i` and
/// `b_j` carrying the padding exponents.
pub fn tau_monomials(u: &DPMonomial, v: &DPMonomial) -> Result<DPElem> {
    if u.degree() != v.degree() {
        return Err(Error::DegreeMismatch {
            expected: u.degree(),
            found: v.degree() as i64,
        });
    }
    let n = u.degree();
    let rows = u.slots();
    let cols = v.slots();
    let alpha: Vec<u32> = rows.iter().map(|(_, k)| *k).collect();
    let beta: Vec<u32> = cols.iter().map(|(_, k)| *k).collect();
    let products: Vec<Vec<Word>> = rows
        .iter()
        .map(|(a, _)| cols.iter().map(|(b, _)| a.concat(b)).collect())
        .collect();
    let mut acc: BTreeMap<RawMonomial, BigInt> = BTreeMap::new();
    let c = cols.len();
    for_each_table(&alpha, &beta, |entries| {
        let mut m = RawMonomial::new();
        let mut coef = BigInt::one();
        for (cell, &k) in entries.iter().enumerate() {
            if k > 0 {
                coef *= absorb(&mut m, products[cell / c][cell % c].clone(), k);
            }
        }
        *acc.entry(m).or_insert_with(BigInt::zero) += coef;
    });
    acc.retain(|_, c| !c.is_zero());
    Ok(finish(n, acc))
}

/// Bilinear `τ_n` product on `Γ_n(F_S)`.
pub fn tau_mul(u: &DPElem, v: &DPElem) -> Result<DPElem> {
    TauCache::default().mul(u, v)
}

/// Memo table for monomial `τ_n` products, for bulk computations.
#[derive(Default)]
pub struct TauCache {
    table: HashMap<(DPMonomial, DPMonomial), Arc<DPElem>>,
}

impl TauCache {
    pub fn monomials(&mut self, u: &DPMonomial, v: &DPMonomial) -> Result<Arc<DPElem>> {
        if let Some(hit) = self.table.get(&(u.clone(), v.clone())) {
            return Ok(hit.clone());
        }
        let prod = Arc::new(tau_monomials(u, v)?);
        self.table.insert((u.clone(), v.clone()), prod.clone());
        Ok(prod)
    }

    pub fn mul(&mut self, u: &DPElem, v: &DPElem) -> Result<DPElem> {
        if u.degree() != v.degree() {
            return Err(Error::DegreeMismatch {
                expected: u.degree(),
                found: v.degree() as i64,
            });
        }
        let mut out = DPElem::zero(u.degree());
        for (a, ca) in u.terms() {
            for (b, cb) in v.terms() {
                let k = ca * cb;
                for (m, c) in self.monomials(a, b)?.terms() {
                    out.add_term(m.clone(), c * &k);
                }
            }
        }
        Ok(out)
    }
}

/// Coefficient of `x^ξ` in `γ_n(Σ x_i ⊗ a_i)`: the normal form of
/// `∏ a_i^(ξ_i)` when `|ξ| = n`, zero otherwise.
pub fn gamma_coeff(elements: &[FreeElem], xi: &[u32], n: u32) -> Result<DPElem> {
    if elements.len() != xi.len() {
        return Err(Error::Invalid(format!(
            "{} elements but a multi-index of length {}",
            elements.len(),
            xi.len()
        )));
    }
    if xi.iter().sum::<u32>() != n {
        return Ok(DPElem::zero(n));
    }
    let raw: Vec<(FreeElem, i64)> = elements.iter().cloned().zip(xi.iter().map(|k| *k as i64)).collect();
    normalize(&raw, n)
}

/// Normal-form monomials of `Γ_n(F_S)` whose multidegree is componentwise at
/// most `bound`, sorted.
pub fn basis_below(n: u32, gens: &[Label], bound: &MultiDegree) -> Vec<DPMonomial> {
    let words: Vec<(Word, MultiDegree)> = words_below(gens, bound)
        .into_iter()
        .filter(|w| !w.is_empty())
        .map(|w| {
            let d = w.multidegree();
            (w, d)
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<(Word, u32)> = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn go(
        k: usize,
        room: u32,
        deg: &MultiDegree,
        words: &[(Word, MultiDegree)],
        bound: &MultiDegree,
        n: u32,
        chosen: &mut Vec<(Word, u32)>,
        out: &mut Vec<DPMonomial>,
    ) {
        if k == words.len() {
            out.push(DPMonomial::from_raw(n, chosen.iter().cloned().collect()));
            return;
        }
        go(k + 1, room, deg, words, bound, n, chosen, out);
        let (w, wd) = &words[k];
        let mut d = deg.clone();
        for e in 1..=room {
            d = &d + wd;
            if !d.le(bound) {
                break;
            }
            chosen.push((w.clone(), e));
            go(k + 1, room - e, &d, words, bound, n, chosen, out);
            chosen.pop();
        }
    }
    go(0, n, &MultiDegree::zero(), &words, bound, n, &mut chosen, &mut out);
    out.sort();
    out
}

/// Normal-form monomials of `Γ_n(F_S)` of multidegree exactly `d`.
pub fn basis_with_multidegree(n: u32, gens: &[Label], d: &MultiDegree) -> Vec<DPMonomial> {
    basis_below(n, gens, d)
        .into_iter()
        .filter(|m| m.multidegree() == *d)
        .collect()
}

/// ℚ-rank of the multidegree-`d` component of `Γ_n(F_S)^ab`.
///
/// The commutator ideal is spanned by the `z τ (u τ v − v τ u)` over basis
/// monomials, so the component is the span of the degree-`d` basis modulo
/// those products that land in degree `d`.
pub fn ab_component_rank(n: u32, d: &MultiDegree, gens: &[Label]) -> usize {
    let below = basis_below(n, gens, d);
    let basis: Vec<&DPMonomial> = below.iter().filter(|m| m.multidegree() == *d).collect();
    if basis.is_empty() {
        return 0;
    }
    let index: HashMap<&DPMonomial, usize> = basis.iter().enumerate().map(|(k, m)| (*m, k)).collect();
    let degrees: Vec<MultiDegree> = below.iter().map(DPMonomial::multidegree).collect();
    let mut cache = TauCache::default();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (a, u) in below.iter().enumerate() {
        if u.is_unit() {
            continue;
        }
        for (b, v) in below.iter().enumerate().skip(a + 1) {
            if v.is_unit() {
                continue;
            }
            let Some(rest) = d.checked_sub(&(&degrees[a] + &degrees[b])) else {
                continue;
            };
            let uv = cache.monomials(u, v).expect("same degree");
            let vu = cache.monomials(v, u).expect("same degree");
            let comm = uv.sub(&vu);
            if comm.is_zero() {
                continue;
            }
            for (c, z) in below.iter().enumerate() {
                if degrees[c] != rest {
                    continue;
                }
                let prod = cache.mul(&z.clone().into(), &comm).expect("same degree");
                if prod.is_zero() {
                    continue;
                }
                let mut row = vec![BigInt::zero(); basis.len()];
                for (m, coef) in prod.terms() {
                    row[index[m]] = coef.clone();
                }
                rows.push(row);
            }
        }
    }
    let rank = if rows.is_empty() {
        0
    } else {
        int_rank(&Matrix::from_rows(rows))
    };
    basis.len() - rank
}

/// `ρ_n : Γ_n → Γ_{n−1}`, lowering the unit padding by one; monomials with no
/// padding map to zero.
pub fn rho(u: &DPElem) -> Result<DPElem> {
    let n = u.degree();
    if n == 0 {
        return Err(Error::Invalid("rho is defined for degree at least 1".into()));
    }
    let mut out = DPElem::zero(n - 1);
    for (m, c) in u.terms() {
        if let Some(lower) = m.with_degree(n - 1) {
            out.add_term(lower, c.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
