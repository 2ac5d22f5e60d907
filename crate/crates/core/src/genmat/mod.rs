//! Generic matrices and their characteristic coefficients: the embedding
//! `j_n : F_S → M_n(A_S(n))`, the coefficients `e_i`, the map
//! `π_n : Γ_n(F_S) → A_S(n)`, the conjugation action, invariant spaces and the
//! projection `δ_n`.

mod invariants;
mod symbols;

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::divpow::{normalize, DPElem, DPMonomial, TauCache};
use crate::error::{Error, Result};
use crate::exactalg::{coeff_extract, Matrix, Monomial, MultiPoly, PolyMatrix, VarId};
use crate::freering::{FreeAlg, FreeElem, Word};
use crate::label::Label;

pub use invariants::{e_span_rank, invariant_space, pi_span_rank, InvariantSpace};
pub use symbols::{e_monomials, evaluate_expression, expression_multidegree, EExpression, ESymbol};

/// Matrix size `n` and generator labels `S` for computations in `A_S(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericContext {
    n: usize,
    gens: Vec<Label>,
}

impl GenericContext {
    pub fn new(n: usize, gens: &[Label]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("matrix size must be at least 1".into()));
        }
        let distinct: BTreeSet<&Label> = gens.iter().collect();
        if distinct.len() != gens.len() {
            return Err(Error::Invalid("generator labels must be distinct".into()));
        }
        Ok(GenericContext { n, gens: gens.to_vec() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Label] {
        &self.gens
    }

    /// The same generators with matrix size `n − 1`.
    pub fn smaller(&self) -> Result<Self> {
        Self::new(self.n - 1, &self.gens)
    }

    fn check_label(&self, s: &Label) -> Result<()> {
        if self.gens.contains(s) {
            Ok(())
        } else {
            Err(Error::UnknownLabel(s.to_string()))
        }
    }

    /// `ζ_s = Σ x_{ij}^s e_{ij}`.
    pub fn generic(&self, s: &Label) -> Result<PolyMatrix> {
        self.check_label(s)?;
        Ok(generic_matrix(self.n, s))
    }
}

fn generic_matrix(n: usize, s: &Label) -> PolyMatrix {
    Matrix::from_fn(n, n, |i, j| MultiPoly::var(VarId::entry(s, i + 1, j + 1)))
}

/// Memoized word matrices and characteristic coefficients for bulk
/// computations in one context.
pub struct GenericEvaluator<'c> {
    ctx: &'c GenericContext,
    words: HashMap<Word, Arc<PolyMatrix>>,
    symbols: HashMap<ESymbol, Arc<MultiPoly>>,
    images: HashMap<DPMonomial, Arc<MultiPoly>>,
}

impl<'c> GenericEvaluator<'c> {
    pub fn new(ctx: &'c GenericContext) -> Self {
        GenericEvaluator {
            ctx,
            words: HashMap::new(),
            symbols: HashMap::new(),
            images: HashMap::new(),
        }
    }

    pub fn context(&self) -> &GenericContext {
        self.ctx
    }

    /// `j_n(w)`, the product of the generic matrices along `w`.
    pub fn word_matrix(&mut self, w: &Word) -> Result<Arc<PolyMatrix>> {
        if let Some(m) = self.words.get(w) {
            return Ok(m.clone());
        }
        let m = match w.letters().split_last() {
            None => PolyMatrix::identity(self.ctx.n),
            Some((last, prefix)) => {
                let head = self.word_matrix(&Word::from_letters(prefix.to_vec()))?;
                self.ctx.check_label(last)?;
                // Entries of a generic matrix are single variables, so each
                // product term is a monomial shift of a prefix entry.
                let one = BigInt::one();
                Matrix::from_fn(self.ctx.n, self.ctx.n, |i, j| {
                    let mut e = MultiPoly::zero();
                    for k in 0..self.ctx.n {
                        let x = Monomial::var(VarId::entry(last, k + 1, j + 1));
                        e += &head[(i, k)].mul_monomial(&one, &x);
                    }
                    e
                })
            }
        };
        let m = Arc::new(m);
        self.words.insert(w.clone(), m.clone());
        Ok(m)
    }

    /// `j_n(f)` for `f` with polynomial coefficients.
    pub fn embed(&mut self, f: &FreeAlg<MultiPoly>) -> Result<PolyMatrix> {
        let mut out = PolyMatrix::zeros(self.ctx.n, self.ctx.n);
        for (w, c) in f.terms() {
            out = &out + &self.word_matrix(w)?.scale(c);
        }
        Ok(out)
    }

    /// Value of `e_i(j_n(w))` in `A_S(n)`; zero when `i > n`.
    pub fn symbol_value(&mut self, s: &ESymbol) -> Result<Arc<MultiPoly>> {
        if let Some(v) = self.symbols.get(s) {
            return Ok(v.clone());
        }
        let m = self.word_matrix(s.word())?;
        let v = Arc::new(char_coeff(&m, s.index() as usize));
        self.symbols.insert(s.clone(), v.clone());
        Ok(v)
    }

    /// Evaluates an expression in the symbols `e_i(w)` inside `A_S(n)`.
    pub fn evaluate(&mut self, e: &EExpression) -> Result<MultiPoly> {
        evaluate_expression(
            e,
            |c| MultiPoly::constant(c.clone()),
            |s| self.symbol_value(s).map(|v| (*v).clone()),
        )
    }

    /// `π_n(u)`: the coefficient of `∏ λ_w^{α_w}` in `det(Σ λ_w j_n(w))`.
    ///
    /// The determinant is multilinear in the columns, so the coefficient is
    /// the sum over all ways of drawing `α_w` columns from each `j_n(w)` of
    /// the determinant of the resulting mixed matrix.
    pub fn pi(&mut self, u: &DPMonomial) -> Result<MultiPoly> {
        self.pi_shared(u).map(|v| (*v).clone())
    }

    fn pi_shared(&mut self, u: &DPMonomial) -> Result<Arc<MultiPoly>> {
        if let Some(v) = self.images.get(u) {
            return Ok(v.clone());
        }
        let n = self.ctx.n;
        if u.degree() as usize != n {
            return Err(Error::DegreeMismatch {
                expected: n as u32,
                found: u.degree() as i64,
            });
        }
        let mut mats = Vec::new();
        let mut counts = Vec::new();
        for (w, k) in u.slots() {
            mats.push(self.word_matrix(&w)?);
            counts.push(k);
        }
        // Expand column by column. A state records the rows already used and
        // how many columns each matrix still has to supply; placing row `r`
        // contributes one sign flip per used row below it.
        let mut layer: BTreeMap<(u64, Vec<u32>), MultiPoly> = BTreeMap::from([((0, counts), MultiPoly::one())]);
        for col in 0..n {
            let mut next: BTreeMap<(u64, Vec<u32>), MultiPoly> = BTreeMap::new();
            for ((used, left), acc) in &layer {
                for (k, mat) in mats.iter().enumerate() {
                    if left[k] == 0 {
                        continue;
                    }
                    let mut rest = left.clone();
                    rest[k] -= 1;
                    for row in (0..n).filter(|r| used & (1 << r) == 0) {
                        let entry = &mat[(row, col)];
                        if entry.is_zero() {
                            continue;
                        }
                        let flip = (used >> (row + 1)).count_ones() % 2 == 1;
                        let term = signed_product(acc, entry, flip);
                        match next.entry((used | (1 << row), rest.clone())) {
                            Entry::Vacant(slot) => {
                                slot.insert(term);
                            }
                            Entry::Occupied(mut slot) => *slot.get_mut() += &term,
                        }
                    }
                }
            }
            layer = next;
        }
        let mut total = MultiPoly::zero();
        for v in layer.values() {
            total += v;
        }
        let total = Arc::new(total);
        self.images.insert(u.clone(), total.clone());
        Ok(total)
    }

    /// Linear extension of [`pi`](Self::pi) to `Γ_n(F_S)`.
    pub fn pi_elem(&mut self, u: &DPElem) -> Result<MultiPoly> {
        let mut total = MultiPoly::zero();
        for (m, c) in u.terms() {
            total += &self.pi_shared(m)?.scale(c);
        }
        Ok(total)
    }
}

/// `±a·b`, skipping the full product when either side is a constant.
fn signed_product(a: &MultiPoly, b: &MultiPoly, negate: bool) -> MultiPoly {
    let (poly, c) = if b.is_constant() {
        (a, b.constant_term())
    } else if a.is_constant() {
        (b, a.constant_term())
    } else {
        let p = a * b;
        return if negate { -p } else { p };
    };
    let c = if negate { -c } else { c };
    if c.is_one() {
        poly.clone()
    } else {
        poly.scale(&c)
    }
}

/// `j_n(f)`: the ring homomorphism `F_S → M_n(A_S(n))` sending `x_s` to the
/// generic matrix `ζ_s`.
pub fn embed_generic(f: &FreeElem, ctx: &GenericContext) -> Result<PolyMatrix> {
    GenericEvaluator::new(ctx).embed(&f.map_coeffs(|c| MultiPoly::constant(c.clone())))
}

/// `e_i(b)`: the trace of the `i`-th exterior power of `b`, i.e. the
/// coefficient of `t^(n−i)` in `det(tI + b)`.
pub fn char_coeff(b: &PolyMatrix, i: usize) -> MultiPoly {
    b.principal_minor_sum(i)
}

/// `det(j_n(f))`.
pub fn det_law(f: &FreeElem, ctx: &GenericContext) -> Result<MultiPoly> {
    Ok(embed_generic(f, ctx)?.det())
}

/// `π_n(u)` for a normal-form monomial of degree `n`.
pub fn pi_image(u: &DPMonomial, ctx: &GenericContext) -> Result<MultiPoly> {
    GenericEvaluator::new(ctx).pi(u)
}

/// `π_n` on a general element of `Γ_n(F_S)`.
pub fn pi_image_elem(u: &DPElem, ctx: &GenericContext) -> Result<MultiPoly> {
    GenericEvaluator::new(ctx).pi_elem(u)
}

/// Reference route for [`pi_image`]: expands `det(Σ λ_k j_n(w_k))` with formal
/// scalars `λ_k` and extracts the coefficient of `λ^α`. Slow but direct.
pub fn pi_image_by_extraction(u: &DPMonomial, ctx: &GenericContext) -> Result<MultiPoly> {
    if u.degree() as usize != ctx.n {
        return Err(Error::DegreeMismatch {
            expected: ctx.n as u32,
            found: u.degree() as i64,
        });
    }
    let mut f = FreeAlg::<MultiPoly>::zero();
    let mut spec = BTreeMap::new();
    for (k, (w, e)) in u.slots().into_iter().enumerate() {
        let lam = VarId::formal("l", k as u32);
        f.add_term(w, MultiPoly::var(lam.clone()));
        spec.insert(lam, e);
    }
    let det = GenericEvaluator::new(ctx).embed(&f)?.det();
    coeff_extract(&det, &spec)
}

fn adjugate(g: &Matrix<BigInt>) -> Matrix<BigInt> {
    let n = g.rows();
    if n == 1 {
        return Matrix::identity(1);
    }
    Matrix::from_fn(n, n, |i, j| {
        let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
        let minor = g.select(&rows, &cols).det();
        if (i + j) % 2 == 0 {
            minor
        } else {
            -minor
        }
    })
}

fn conjugate(p: &MultiPoly, g: &PolyMatrix, g_inv: &PolyMatrix, n: usize) -> Result<MultiPoly> {
    let mut images: BTreeMap<Label, PolyMatrix> = BTreeMap::new();
    for v in p.variables() {
        if let VarId::MatrixEntry { s, i, j } = &v {
            if *i as usize > n || *j as usize > n {
                return Err(Error::Invalid(format!("{v} does not live in {n}x{n} matrices")));
            }
            if !images.contains_key(s) {
                let img = &(g * &generic_matrix(n, s)) * g_inv;
                images.insert(s.clone(), img);
            }
        }
    }
    Ok(p.substitute(|v| match v {
        VarId::MatrixEntry { s, i, j } => Some(images[s][(*i as usize - 1, *j as usize - 1)].clone()),
        VarId::Formal { .. } => None,
    }))
}

/// Simultaneous conjugation: replaces every `x_{ij}^s` by the `(i,j)` entry of
/// `g ζ_s g⁻¹`. `g` must be an integer matrix with determinant `±1`.
pub fn conjugation_action(p: &MultiPoly, g: &Matrix<BigInt>, ctx: &GenericContext) -> Result<MultiPoly> {
    if g.rows() != ctx.n || g.cols() != ctx.n {
        return Err(Error::Invalid(format!(
            "expected a {n}x{n} matrix, got {}x{}",
            g.rows(),
            g.cols(),
            n = ctx.n
        )));
    }
    let det = g.det();
    if !det.abs().is_one() {
        return Err(Error::NotUnimodular(det));
    }
    let inv = adjugate(g).scale(&det);
    let lift = |m: &Matrix<BigInt>| m.map(|c| MultiPoly::constant(c.clone()));
    conjugate(p, &lift(g), &lift(&inv), ctx.n)
}

/// `δ_n : A_S(n) → A_S(n−1)`, setting `x_{ij}^s = 0` whenever `i = n` or
/// `j = n`.
pub fn delta(p: &MultiPoly, ctx: &GenericContext) -> Result<MultiPoly> {
    let n = ctx.n;
    if n < 2 {
        return Err(Error::Invalid("delta needs matrix size at least 2".into()));
    }
    Ok(p.substitute(|v| match v {
        VarId::MatrixEntry { i, j, .. } if *i as usize == n || *j as usize == n => Some(MultiPoly::zero()),
        _ => None,
    }))
}

/// Writes `π_n(u)` as an integral expression in the `e_i(w)`.
///
/// For `u = 1^(·) w^(a) v` with `v` the remaining factors, the table product
/// `(1^(n−a) w^(a)) τ (1^(·) v)` is `u` plus terms of smaller weight, so
/// `π_n(u) = e_a(w) π_n(v) − π_n(rest)` recursively.
pub struct EPresenter {
    n: u32,
    tau: TauCache,
    memo: HashMap<DPMonomial, EExpression>,
}

impl EPresenter {
    pub fn new(n: u32) -> Self {
        EPresenter {
            n,
            tau: TauCache::default(),
            memo: HashMap::new(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn monomial(&mut self, u: &DPMonomial) -> Result<EExpression> {
        if u.degree() != self.n {
            return Err(Error::DegreeMismatch {
                expected: self.n,
                found: u.degree() as i64,
            });
        }
        if let Some(e) = self.memo.get(u) {
            return Ok(e.clone());
        }
        let mut factors = u.factors();
        let out = match (factors.next(), factors.next()) {
            (None, _) => EExpression::one(),
            (Some((w, a)), None) => EExpression::var(ESymbol::new(a, w)?),
            (Some((w, a)), Some(_)) => {
                let w = w.clone();
                let head = DPMonomial::power(self.n, w.clone(), a)?;
                let tail = u.without(&w);
                let prod = self.tau.monomials(&head, &tail)?;
                let mut acc = EExpression::var(ESymbol::new(a, &w)?) * self.monomial(&tail)?;
                for (m, c) in prod.terms() {
                    if m == u {
                        if !c.is_one() {
                            return Err(Error::Invalid(format!(
                                "unexpected coefficient {c} of {u} in its own expansion"
                            )));
                        }
                        continue;
                    }
                    acc = acc - self.monomial(m)?.scale(c);
                }
                acc
            }
        };
        self.memo.insert(u.clone(), out.clone());
        Ok(out)
    }

    pub fn elem(&mut self, u: &DPElem) -> Result<EExpression> {
        let mut out = EExpression::zero();
        for (m, c) in u.terms() {
            out = out + self.monomial(m)?.scale(c);
        }
        Ok(out)
    }

    /// `det(j_n(f))` as an expression: the image under `π_n` of `f^(n)`.
    pub fn det(&mut self, f: &FreeElem) -> Result<EExpression> {
        let g = normalize(&[(f.clone(), self.n as i64)], self.n)?;
        self.elem(&g)
    }
}
