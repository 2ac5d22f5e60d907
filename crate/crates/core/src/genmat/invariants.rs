use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{conjugate, e_monomials, EExpression, GenericContext, GenericEvaluator};
use crate::divpow::basis_with_multidegree;
use crate::error::Result;
use crate::exactalg::{int_nullspace, int_rank, Matrix, Monomial, MultiPoly, PolyMatrix, VarId};
use crate::freering::MultiDegree;
use crate::label::Label;

/// A basis of the conjugation invariants in one multidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSpace {
    pub dim: usize,
    /// Primitive integer polynomials spanning the space over ℚ.
    pub basis: Vec<MultiPoly>,
}

/// Monomials of degree `k` in the entries of `ζ_s`.
fn entry_monomials(n: usize, s: &Label, k: u32) -> Vec<Monomial<VarId>> {
    let vars: Vec<VarId> = (1..=n)
        .flat_map(|i| (1..=n).map(move |j| (i, j)))
        .map(|(i, j)| VarId::entry(s, i, j))
        .collect();
    let mut out = Vec::new();
    let mut exps = vec![0u32; vars.len()];
    fn go(k: usize, left: u32, vars: &[VarId], exps: &mut [u32], out: &mut Vec<Monomial<VarId>>) {
        if k + 1 == vars.len() {
            exps[k] = left;
            out.push(Monomial::from_powers(
                vars.iter().cloned().zip(exps.iter().copied()).filter(|(_, e)| *e > 0),
            ));
            exps[k] = 0;
            return;
        }
        for e in 0..=left {
            exps[k] = e;
            go(k + 1, left - e, vars, exps, out);
        }
        exps[k] = 0;
    }
    go(0, k, &vars, &mut exps, &mut out);
    out
}

/// All monomials of `A_S(n)` of multidegree `d`.
fn multidegree_monomials(n: usize, gens: &[Label], d: &MultiDegree) -> Vec<Monomial<VarId>> {
    let mut out = vec![Monomial::one()];
    for s in gens {
        let parts = entry_monomials(n, s, d.get(s));
        out = out.iter().flat_map(|a| parts.iter().map(move |b| a.mul(b))).collect();
    }
    out.sort();
    out
}

/// Pairs `(g, g⁻¹)` generating `GL_n(ℤ)` up to the formal parameter `t`:
/// `I + tE_ij` for `i ≠ j`, transpositions and single sign flips.
fn group_generators(n: usize) -> Vec<(PolyMatrix, PolyMatrix)> {
    let t = MultiPoly::var(VarId::formal("t", 0));
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut g = PolyMatrix::identity(n);
                let mut h = PolyMatrix::identity(n);
                g[(i, j)] = t.clone();
                h[(i, j)] = -t.clone();
                out.push((g, h));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut g = PolyMatrix::identity(n);
            g.swap_rows(i, j);
            out.push((g.clone(), g));
        }
    }
    for i in 0..n {
        let mut g = PolyMatrix::identity(n);
        g[(i, i)] = -MultiPoly::one();
        out.push((g.clone(), g));
    }
    out
}

/// The polynomials of multidegree `d` fixed by simultaneous conjugation.
///
/// Each group generator `g` contributes the linear conditions
/// `Σ c_m (m∘g − m) = 0` on the unknown coefficients `c_m`, one per monomial
/// in the entries and `t`; the invariants are the nullspace.
pub fn invariant_space(ctx: &GenericContext, d: &MultiDegree) -> Result<InvariantSpace> {
    if d.entries().any(|(s, k)| k > 0 && !ctx.gens().contains(s)) {
        return Ok(InvariantSpace {
            dim: 0,
            basis: Vec::new(),
        });
    }
    let n = ctx.n();
    let unknowns = multidegree_monomials(n, ctx.gens(), d);
    let mut rows: BTreeMap<(usize, Monomial<VarId>), BTreeMap<usize, BigInt>> = BTreeMap::new();
    for (k, (g, h)) in group_generators(n).iter().enumerate() {
        for (col, m) in unknowns.iter().enumerate() {
            let p = MultiPoly::term(BigInt::one(), m.clone());
            let moved = &conjugate(&p, g, h, n)? - &p;
            for (mono, c) in moved.terms() {
                let entry = rows.entry((k, mono.clone())).or_default();
                *entry.entry(col).or_insert_with(BigInt::zero) += c;
            }
        }
    }
    let dense: Vec<Vec<BigInt>> = rows
        .values()
        .map(|r| {
            let mut v = vec![BigInt::zero(); unknowns.len()];
            for (c, x) in r {
                v[*c] = x.clone();
            }
            v
        })
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    let null = if dense.is_empty() {
        (0..unknowns.len())
            .map(|k| (0..unknowns.len()).map(|c| BigInt::from((c == k) as u8)).collect())
            .collect()
    } else {
        int_nullspace(&Matrix::from_rows_with_cols(dense, unknowns.len()))
    };
    let basis: Vec<MultiPoly> = null
        .iter()
        .map(|v| MultiPoly::from_terms(unknowns.iter().cloned().zip(v.iter().cloned())).primitive())
        .collect();
    Ok(InvariantSpace {
        dim: basis.len(),
        basis,
    })
}

/// ℚ-rank of a list of polynomials.
pub(crate) fn span_rank(polys: &[MultiPoly]) -> usize {
    let monos: BTreeSet<&Monomial<VarId>> = polys.iter().flat_map(|p| p.terms().map(|(m, _)| m)).collect();
    if monos.is_empty() {
        return 0;
    }
    let index: BTreeMap<&Monomial<VarId>, usize> = monos.iter().enumerate().map(|(k, m)| (*m, k)).collect();
    let rows: Vec<Vec<BigInt>> = polys
        .iter()
        .map(|p| {
            let mut v = vec![BigInt::zero(); index.len()];
            for (m, c) in p.terms() {
                v[index[m]] = c.clone();
            }
            v
        })
        .collect();
    int_rank(&Matrix::from_rows(rows))
}

/// ℚ-rank of the span of the products `∏ e_{i_k}(j_n(w_k))` of total
/// multidegree `d`, words of length at most `cap`.
pub fn e_span_rank(ctx: &GenericContext, d: &MultiDegree, cap: usize) -> Result<usize> {
    let mut ev = GenericEvaluator::new(ctx);
    let mut values = Vec::new();
    for m in e_monomials(ctx.n() as u32, ctx.gens(), d, cap) {
        values.push(ev.evaluate(&EExpression::term(BigInt::one(), m))?);
    }
    Ok(span_rank(&values))
}

/// ℚ-rank of `π_n` applied to the basis monomials of multidegree `d`.
pub fn pi_span_rank(ctx: &GenericContext, d: &MultiDegree) -> Result<usize> {
    let mut ev = GenericEvaluator::new(ctx);
    let mut values = Vec::new();
    for u in basis_with_multidegree(ctx.n() as u32, ctx.gens(), d) {
        values.push(ev.pi(&u)?);
    }
    Ok(span_rank(&values))
}
