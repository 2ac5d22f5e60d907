//! Polynomial laws given as evaluators: coefficient extraction, homogeneity
//! and multiplicativity checks, the correspondence with homomorphisms out of
//! `Γ_n`, and the factorization `p = φ ∘ det ∘ j_n` with its verification.

mod fixtures;
mod quad;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::divpow::{normalize, DPElem, DPMonomial};
use crate::error::{Error, Result};
use crate::exactalg::{int_nullspace, Coeff, Matrix, Monomial, MultiPoly, Poly, VarId};
use crate::freering::{enumerate_words, FreeAlg, FreeElem, MultiDegree, Word};
use crate::genmat::{
    det_law, e_monomials, evaluate_expression, EExpression, EPresenter, ESymbol, GenericContext, GenericEvaluator,
};
use crate::label::Label;
use crate::sampling;

pub use fixtures::{
    scaled_power, DeterminantLaw, Fixture, MixedDegreeLaw, NormLaw, PermanentLaw, PowerLaw, RepresentationDetLaw,
    Widened,
};
pub use quad::QuadInt;

/// Commutative ring of law values. Equality must be decidable.
pub trait TargetRing: Coeff + fmt::Display {
    fn from_integer(n: &BigInt) -> Self;
}

impl TargetRing for BigInt {
    fn from_integer(n: &BigInt) -> Self {
        n.clone()
    }
}

impl TargetRing for MultiPoly {
    fn from_integer(n: &BigInt) -> Self {
        MultiPoly::constant(n.clone())
    }
}

/// A polynomial law `p : F_S → B` of degree `n`, given by its values
/// `p_L(f)` for `L` a polynomial ring over `ℤ` in formal variables.
///
/// `eval` receives `f` with coefficients in `ℤ[formal variables]` and returns
/// `p_L(f)` as a polynomial in the same formal variables with coefficients in
/// `B`.
pub trait LawOracle<B: TargetRing>: Send + Sync {
    fn degree(&self) -> u32;
    fn gens(&self) -> &[Label];
    fn name(&self) -> String;
    fn eval(&self, f: &FreeAlg<MultiPoly>) -> Result<Poly<VarId, B>>;

    /// `p(f)` for an integer combination of words.
    fn value(&self, f: &FreeElem) -> Result<B> {
        let out = self.eval(&lift(f))?;
        if !out.is_constant() {
            return Err(Error::Invalid(format!(
                "{} returned a non-constant value on {f}",
                self.name()
            )));
        }
        Ok(out.constant_term())
    }
}

fn lift(f: &FreeElem) -> FreeAlg<MultiPoly> {
    f.map_coeffs(|c| MultiPoly::constant(c.clone()))
}

fn scalar(tag: &str, k: usize) -> VarId {
    VarId::formal(tag, k as u32)
}

/// `Σ_k λ_k a_k` with the scalars `λ_k = tag_k`.
fn combine(tag: &str, elements: &[FreeElem]) -> FreeAlg<MultiPoly> {
    let mut f = FreeAlg::zero();
    for (k, a) in elements.iter().enumerate() {
        let lam = MultiPoly::var(scalar(tag, k));
        for (w, c) in a.terms() {
            f.add_term(w.clone(), lam.scale(c));
        }
    }
    f
}

/// Renders an element with polynomial coefficients, e.g. `(l0)*x + (l1)*x*y`.
pub fn render_formal(f: &FreeAlg<MultiPoly>) -> String {
    if f.is_zero() {
        return "0".into();
    }
    f.terms()
        .map(|(w, c)| {
            if w.is_empty() {
                format!("({c})")
            } else {
                format!("({c})*{w}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// The coefficient of `λ^ξ` in `p_L(Σ λ_k a_k)`.
pub fn law_coefficient<B: TargetRing>(p: &dyn LawOracle<B>, elements: &[FreeElem], xi: &[u32]) -> Result<B> {
    if elements.len() != xi.len() {
        return Err(Error::Invalid(format!(
            "{} elements but a multi-index of length {}",
            elements.len(),
            xi.len()
        )));
    }
    let value = p.eval(&combine("l", elements))?;
    let m = Monomial::from_powers(
        xi.iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(k, e)| (scalar("l", k), *e)),
    );
    Ok(value.coeff(&m))
}

/// Outcome of a property check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Pass,
    Fail(W),
}

impl<W> Verdict<W> {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }
}

/// Word sets used by the sampled checks: the unit with all generators first,
/// then `budget − 1` seeded random sets of short words.
fn sample_word_sets(gens: &[Label], budget: usize, seed: u64, size: usize) -> Vec<Vec<Word>> {
    let mut first = vec![Word::empty()];
    first.extend(gens.iter().cloned().map(Word::letter));
    let mut out = vec![first];
    let mut rng = sampling::rng(seed);
    for k in 1..budget {
        out.push(sampling::word_set(&mut rng, gens, 2, 1 + k % size));
    }
    out.truncate(budget.max(1));
    out
}

fn formal_sum(tag: &str, words: &[Word]) -> FreeAlg<MultiPoly> {
    combine(tag, &words.iter().cloned().map(FreeElem::word).collect::<Vec<_>>())
}

/// Checks `p_L(a·u) = a^n p_L(u)` as a polynomial identity in a fresh scalar
/// `a` and the formal coefficients of `u`, for sampled word sets.
pub fn check_homogeneous<B: TargetRing>(
    p: &dyn LawOracle<B>,
    budget: usize,
    seed: u64,
) -> Result<Verdict<FreeAlg<MultiPoly>>> {
    let a = MultiPoly::var(scalar("a", 0));
    let an = Monomial::from_powers([(scalar("a", 0), p.degree())]);
    for words in sample_word_sets(p.gens(), budget, seed, 3) {
        let u = formal_sum("l", &words);
        let scaled = u.map_coeffs(|c| c * &a);
        let lhs = p.eval(&scaled)?;
        let rhs = p.eval(&u)?.mul_monomial(&B::one(), &an);
        if lhs != rhs {
            return Ok(Verdict::Fail(u));
        }
    }
    Ok(Verdict::Pass)
}

/// A failure of `p(fg) = p(f)p(g)`; `f` and `g` have integer coefficients
/// whenever a concrete witness was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicativityWitness {
    pub f: FreeAlg<MultiPoly>,
    pub g: FreeAlg<MultiPoly>,
}

impl MultiplicativityWitness {
    pub fn is_concrete(&self) -> bool {
        self.f.terms().chain(self.g.terms()).all(|(_, c)| c.is_constant())
    }
}

impl fmt::Display for MultiplicativityWitness {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |x: &FreeAlg<MultiPoly>| -> String {
            if x.terms().all(|(_, c)| c.is_constant()) {
                x.map_coeffs(|c| c.constant_term()).to_string()
            } else {
                render_formal(x)
            }
        };
        write!(fm, "f = {}, g = {}", show(&self.f), show(&self.g))
    }
}

/// Searches integer coefficients in `-1..=2` on the given word sets for
/// `p(fg) ≠ p(f)p(g)`.
fn concrete_witness<B: TargetRing>(
    p: &dyn LawOracle<B>,
    left: &[Word],
    right: &[Word],
) -> Result<Option<(FreeElem, FreeElem)>> {
    let k = left.len() + right.len();
    let mut digits = vec![0usize; k];
    const VALUES: [i64; 4] = [1, -1, 2, 0];
    loop {
        let build = |words: &[Word], ds: &[usize]| -> FreeElem {
            FreeElem::from_terms(words.iter().cloned().zip(ds.iter().map(|d| BigInt::from(VALUES[*d]))))
        };
        let f = build(left, &digits[..left.len()]);
        let g = build(right, &digits[left.len()..]);
        if !f.is_zero() && !g.is_zero() && p.value(&(&f * &g))? != p.value(&f)? * p.value(&g)? {
            return Ok(Some((f, g)));
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return Ok(None);
            }
            digits[pos] += 1;
            if digits[pos] < VALUES.len() {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

/// Checks `p_L(1) = 1` and `p_L(fg) = p_L(f) p_L(g)` for `f = Σ λ_i u_i`,
/// `g = Σ μ_j v_j` over sampled word sets, as polynomial identities in the
/// `λ`, `μ`. A failure is reported with concrete integer `f`, `g` when a
/// small one exists.
pub fn check_multiplicative<B: TargetRing>(
    p: &dyn LawOracle<B>,
    budget: usize,
    seed: u64,
) -> Result<Verdict<MultiplicativityWitness>> {
    if p.eval(&FreeAlg::one())? != Poly::one() {
        return Ok(Verdict::Fail(MultiplicativityWitness {
            f: FreeAlg::one(),
            g: FreeAlg::one(),
        }));
    }
    let sets = sample_word_sets(p.gens(), budget + 1, seed, 2);
    for pair in sets.windows(2) {
        let (left, right) = (&pair[0], &pair[1]);
        let f = formal_sum("l", left);
        let g = formal_sum("m", right);
        if p.eval(&(&f * &g))? != &p.eval(&f)? * &p.eval(&g)? {
            let witness = match concrete_witness(p, left, right)? {
                Some((f, g)) => MultiplicativityWitness {
                    f: lift(&f),
                    g: lift(&g),
                },
                None => MultiplicativityWitness { f, g },
            };
            return Ok(Verdict::Fail(witness));
        }
    }
    Ok(Verdict::Pass)
}

/// The homomorphism `Γ_n(F_S) → B` attached to a homogeneous multiplicative
/// law of degree `n`, on a normal-form monomial: the coefficient of
/// `λ^α` in `p(Σ λ_w w)` over the words of `u`, the unit word included.
pub fn roby_hom<B: TargetRing>(p: &dyn LawOracle<B>, u: &DPMonomial) -> Result<B> {
    if u.degree() != p.degree() {
        return Err(Error::DegreeMismatch {
            expected: p.degree(),
            found: u.degree() as i64,
        });
    }
    let (words, exps): (Vec<FreeElem>, Vec<u32>) = u.slots().into_iter().map(|(w, k)| (FreeElem::word(w), k)).unzip();
    law_coefficient(p, &words, &exps)
}

/// Linear extension of [`roby_hom`].
pub fn roby_hom_elem<B: TargetRing>(p: &dyn LawOracle<B>, u: &DPElem) -> Result<B> {
    let mut total = B::zero();
    for (m, c) in u.terms() {
        total = total + B::from_integer(c) * roby_hom(p, m)?;
    }
    Ok(total)
}

/// Default bound on the word length of the tabulated `φ(e_i(w))`.
pub const DEFAULT_WORD_CAP: usize = 3;

/// A ring homomorphism from expressions in the `e_i(w)` to `B`, stored as a
/// table on the symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorHom<B> {
    n: u32,
    cap: usize,
    table: BTreeMap<ESymbol, B>,
}

impl<B: TargetRing> FactorHom<B> {
    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn table(&self) -> &BTreeMap<ESymbol, B> {
        &self.table
    }

    pub fn value(&self, s: &ESymbol) -> Option<&B> {
        self.table.get(s)
    }

    /// The same table with one value replaced.
    pub fn with_value(mut self, s: ESymbol, v: B) -> Self {
        self.table.insert(s, v);
        self
    }

    /// Evaluates using the table only.
    pub fn evaluate(&self, e: &EExpression) -> Result<B> {
        evaluate_expression(e, B::from_integer, |s| {
            self.table
                .get(s)
                .cloned()
                .ok_or_else(|| Error::Invalid(format!("no value tabulated for {s}")))
        })
    }

    /// Evaluates, first extending the table from `p` to any symbol not yet
    /// tabulated.
    pub fn evaluate_with(&mut self, p: &dyn LawOracle<B>, e: &EExpression) -> Result<B> {
        for (m, _) in e.terms() {
            for (s, _) in m.powers() {
                if !self.table.contains_key(s) {
                    let v = symbol_image(p, s)?;
                    self.table.insert(s.clone(), v);
                }
            }
        }
        self.evaluate(e)
    }
}

/// `φ(e_i(w)) = roby(p, 1^(n−i) w^(i))`, zero for `i > n`.
fn symbol_image<B: TargetRing>(p: &dyn LawOracle<B>, s: &ESymbol) -> Result<B> {
    if s.index() > p.degree() {
        return Ok(B::zero());
    }
    roby_hom(p, &DPMonomial::power(p.degree(), s.word().clone(), s.index())?)
}

const PROPERTY_BUDGET: usize = 6;
const PROPERTY_SEED: u64 = 0x5eed;

/// Factors a homogeneous multiplicative law of degree `n = ctx.n()` as
/// `φ ∘ det ∘ j_n`, tabulating `φ(e_i(w))` for `1 ≤ i ≤ n` and words up to
/// length `cap` (up to rotation).
pub fn factor_law<B: TargetRing>(p: &dyn LawOracle<B>, ctx: &GenericContext, cap: usize) -> Result<FactorHom<B>> {
    let n = p.degree();
    if ctx.n() as u32 != n {
        return Err(Error::DegreeMismatch {
            expected: ctx.n() as u32,
            found: n as i64,
        });
    }
    if let Verdict::Fail(u) = check_homogeneous(p, PROPERTY_BUDGET, PROPERTY_SEED)? {
        return Err(Error::NotHomogeneous {
            degree: n,
            witness: render_formal(&u),
        });
    }
    if let Verdict::Fail(w) = check_multiplicative(p, PROPERTY_BUDGET, PROPERTY_SEED)? {
        return Err(Error::NotMultiplicative { witness: w.to_string() });
    }
    let mut table = BTreeMap::new();
    for w in enumerate_words(ctx.gens(), cap) {
        if w.is_empty() || w.canonical_rotation() != w {
            continue;
        }
        for i in 1..=n {
            let s = ESymbol::new(i, &w)?;
            let v = symbol_image(p, &s)?;
            table.insert(s, v);
        }
    }
    Ok(FactorHom { n, cap, table })
}

/// The checks of the factorization diagram for one test element `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramCheck<B> {
    pub test: FreeElem,
    /// `p(f)`.
    pub value: B,
    /// `Σ_ξ c^ξ roby(p, ∏ w^(ξ_w))`.
    pub roby_sum: B,
    /// `φ` applied to `det(j_n(f))` written in the `e_i(w)`.
    pub factored: B,
    /// Whether `det(j_n(f)) = Σ_ξ c^ξ π_n(∏ w^(ξ_w))` holds in `A_S(n)`.
    pub symbolic: bool,
}

impl<B: TargetRing> DiagramCheck<B> {
    pub fn passes(&self) -> bool {
        self.symbolic && self.value == self.roby_sum && self.value == self.factored
    }
}

/// Per-test results in input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationReport<B> {
    pub checks: Vec<DiagramCheck<B>>,
}

impl<B: TargetRing> FactorizationReport<B> {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(DiagramCheck::passes)
    }
}

/// Verifies `p(f) = φ(det(j_n(f)))` on each test element.
///
/// `f^(n)` is expanded in `Γ_n(F_S)` as `Σ_ξ c^ξ ∏ w^(ξ_w)`; the symbolic
/// check compares `det(j_n(f))` with the `π_n` images of that expansion, the
/// scalar checks compare `p(f)` with its image under the homomorphism out of
/// `Γ_n` and with `φ` applied to the `e`-presentation of `det(j_n(f))`.
pub fn verify_factorization<B: TargetRing>(
    p: &dyn LawOracle<B>,
    phi: &mut FactorHom<B>,
    ctx: &GenericContext,
    tests: &[FreeElem],
) -> Result<FactorizationReport<B>> {
    let n = p.degree();
    let mut ev = GenericEvaluator::new(ctx);
    let mut presenter = EPresenter::new(n);
    let mut checks = Vec::with_capacity(tests.len());
    for f in tests {
        let expansion = normalize(&[(f.clone(), n as i64)], n)?;
        let symbolic = det_law(f, ctx)? == ev.pi_elem(&expansion)?;
        let value = p.value(f)?;
        let roby_sum = roby_hom_elem(p, &expansion)?;
        let factored = phi.evaluate_with(p, &presenter.elem(&expansion)?)?;
        checks.push(DiagramCheck {
            test: f.clone(),
            value,
            roby_sum,
            factored,
            symbolic,
        });
    }
    Ok(FactorizationReport { checks })
}

/// A basis of the integer linear relations among the values in `A_S(n)` of
/// the `e`-monomials of multidegree `d` (words up to length `|d|`).
pub fn relations_discover(ctx: &GenericContext, d: &MultiDegree) -> Result<Vec<EExpression>> {
    let monos = e_monomials(ctx.n() as u32, ctx.gens(), d, d.total() as usize);
    if monos.is_empty() {
        return Ok(Vec::new());
    }
    let mut ev = GenericEvaluator::new(ctx);
    let mut values = Vec::with_capacity(monos.len());
    for m in &monos {
        values.push(ev.evaluate(&EExpression::term(BigInt::one(), m.clone()))?);
    }
    let mut rows: BTreeMap<&Monomial<VarId>, Vec<BigInt>> = BTreeMap::new();
    for (k, v) in values.iter().enumerate() {
        for (m, c) in v.terms() {
            rows.entry(m).or_insert_with(|| vec![BigInt::zero(); monos.len()])[k] = c.clone();
        }
    }
    let kernel = if rows.is_empty() {
        (0..monos.len())
            .map(|k| (0..monos.len()).map(|j| BigInt::from((j == k) as u8)).collect())
            .collect()
    } else {
        int_nullspace(&Matrix::from_rows_with_cols(rows.into_values().collect(), monos.len()))
    };
    Ok(kernel
        .into_iter()
        .map(|v| EExpression::from_terms(monos.iter().cloned().zip(v)))
        .collect())
}

/// Checks that `φ` kills every relation.
pub fn check_welldefined<B: TargetRing>(
    p: &dyn LawOracle<B>,
    phi: &mut FactorHom<B>,
    relations: &[EExpression],
) -> Result<Verdict<EExpression>> {
    for r in relations {
        if !phi.evaluate_with(p, r)?.is_zero() {
            return Ok(Verdict::Fail(r.clone()));
        }
    }
    Ok(Verdict::Pass)
}
