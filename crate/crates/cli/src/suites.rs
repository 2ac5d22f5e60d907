//! The property suites behind `verify-all`.
//!
//! Each suite counts the cases it checked and the failures it saw, keeping
//! the first failure as a witness. Sampled inputs come from the configured
//! seed, so a fixed configuration always produces the same report.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use polylaw::divpow::{ab_component_rank, basis_with_multidegree, contingency_tables, normalize, rho, TauCache};
use polylaw::exactalg::{coeff_extract, int_nullspace, int_rank, Matrix, Monomial};
use polylaw::freering::enumerate_words;
use polylaw::genmat::{
    char_coeff, conjugation_action, delta, det_law, e_span_rank, embed_generic, invariant_space, pi_span_rank,
    EPresenter, GenericEvaluator,
};
use polylaw::lawkit::{
    check_homogeneous, check_multiplicative, check_welldefined, factor_law, roby_hom, verify_factorization, Fixture,
    LawOracle, Verdict,
};
use polylaw::sampling::{self, SampleRng};
use polylaw::{
    DPElem, DPMonomial, EExpression, ESymbol, Error, FreeElem, GenericContext, Label, MultiDegree, MultiPoly, Result,
    VarId, Word,
};
use rand::Rng;
use serde::Serialize;

use crate::commands::{default_tests, factor_report, relations_up_to};
use crate::render::{status, Report};
use crate::RunConfig;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    pub passed: bool,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub suites: usize,
    pub failed_suites: usize,
    pub cases: u64,
    pub failures: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub inject_fault: bool,
    pub suites: Vec<SuiteOutcome>,
    pub summary: Summary,
}

impl Report for VerifyReport {
    const COMMAND: &'static str = "verify-all";

    fn text(&self) -> String {
        let mut out = String::new();
        let width = self.suites.iter().map(|s| s.name.len()).max().unwrap_or(0);
        for s in &self.suites {
            write!(out, "{:<width$}  {}  {} cases", s.name, status(s.passed), s.cases).unwrap();
            if s.failures > 0 {
                write!(out, ", {} failed", s.failures).unwrap();
            }
            out.push('\n');
            if let Some(w) = &s.first_failure {
                writeln!(out, "    first failure: {w}").unwrap();
            }
        }
        let m = &self.summary;
        writeln!(
            out,
            "summary: {} suites, {} failed; {} cases, {} failed  {}",
            m.suites,
            m.failed_suites,
            m.cases,
            m.failures,
            status(self.passed())
        )
        .unwrap();
        out
    }

    fn passed(&self) -> bool {
        self.summary.failed_suites == 0
    }
}

#[derive(Default)]
struct Tally {
    cases: u64,
    failures: u64,
    first: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }
}

struct Bounds {
    n: u32,
    gens: Vec<Label>,
    maxdeg: u32,
    maxwordlen: usize,
    seed: u64,
    inject_fault: bool,
    config: RunConfig,
}

impl Bounds {
    fn rng(&self, salt: u64) -> SampleRng {
        sampling::rng(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    fn ctx(&self) -> Result<GenericContext> {
        GenericContext::new(self.n as usize, &self.gens)
    }

    fn multidegrees(&self) -> Vec<MultiDegree> {
        MultiDegree::all_with_total_at_most(&self.gens, self.maxdeg)
    }

    /// Normal-form monomials of `Γ_n` with total degree at most `maxdeg`.
    fn basis(&self) -> Vec<DPMonomial> {
        self.multidegrees()
            .iter()
            .flat_map(|d| basis_with_multidegree(self.n, &self.gens, d))
            .collect()
    }

    /// Nonempty words up to `maxwordlen`.
    fn words(&self) -> Vec<Word> {
        enumerate_words(&self.gens, self.maxwordlen)
            .into_iter()
            .filter(|w| !w.is_empty())
            .collect()
    }

    fn sample_elems(&self, rng: &mut SampleRng, count: usize) -> Vec<FreeElem> {
        (0..count)
            .map(|_| sampling::free_elem(rng, &self.gens, self.maxwordlen.min(2), 3, 2))
            .collect()
    }
}

type SuiteFn = fn(&Bounds, &mut Tally) -> Result<()>;

const SUITES: &[(&str, SuiteFn)] = &[
    ("exactalg.ring_axioms", exactalg_ring_axioms),
    ("exactalg.determinant", exactalg_determinant),
    ("exactalg.coefficient_extraction", exactalg_extraction),
    ("exactalg.rank_nullspace", exactalg_rank),
    ("freering.ring_laws", freering_ring_laws),
    ("freering.word_enumeration", freering_enumeration),
    ("divpow.contingency_tables", divpow_tables),
    ("divpow.tau_ring", divpow_tau_ring),
    ("divpow.grading_normal_form", divpow_grading),
    ("genmat.padded_powers", genmat_padded_powers),
    ("genmat.pi_multiplicative", genmat_pi_multiplicative),
    ("genmat.presentation", genmat_presentation),
    ("genmat.char_coeffs", genmat_char_coeffs),
    ("genmat.conjugation_invariance", genmat_conjugation),
    ("genmat.det_multiplicative", genmat_det_multiplicative),
    ("genmat.invariant_dimensions", genmat_invariant_dimensions),
    ("genmat.graded_isomorphism", genmat_graded_isomorphism),
    ("genmat.commuting_square", genmat_commuting_square),
    ("lawkit.fixtures", lawkit_fixtures),
    ("lawkit.negative_controls", lawkit_negative_controls),
];

/// Runs every suite in a fixed order.
pub fn verify_all(config: &RunConfig, inject_fault: bool) -> VerifyReport {
    let bounds = Bounds {
        n: config.n as u32,
        gens: config.labels(),
        maxdeg: config.maxdeg,
        maxwordlen: config.maxwordlen,
        seed: config.seed,
        inject_fault,
        config: config.clone(),
    };
    let mut suites = Vec::with_capacity(SUITES.len());
    for (name, run) in SUITES {
        let mut t = Tally::default();
        if let Err(e) = run(&bounds, &mut t) {
            t.check(false, || format!("error: {e}"));
        }
        suites.push(SuiteOutcome {
            name: name.to_string(),
            cases: t.cases,
            failures: t.failures,
            passed: t.failures == 0,
            first_failure: t.first,
        });
    }
    let summary = Summary {
        suites: suites.len(),
        failed_suites: suites.iter().filter(|s| !s.passed).count(),
        cases: suites.iter().map(|s| s.cases).sum(),
        failures: suites.iter().map(|s| s.failures).sum(),
    };
    VerifyReport {
        inject_fault,
        suites,
        summary,
    }
}

fn entry_vars(b: &Bounds) -> Vec<VarId> {
    let s = &b.gens[0];
    vec![
        VarId::entry(s, 1, 1),
        VarId::entry(s, 1, 2),
        VarId::formal("l", 0),
        VarId::formal("l", 1),
    ]
}

fn exactalg_ring_axioms(b: &Bounds, t: &mut Tally) -> Result<()> {
    let mut rng = b.rng(1);
    let vars = entry_vars(b);
    let zero = MultiPoly::zero();
    let one = MultiPoly::one();
    for _ in 0..24 {
        let [p, q, r] = [0; 3].map(|_| sampling::poly(&mut rng, &vars, 4, 2, 3));
        let show = || format!("p = {p}, q = {q}, r = {r}");
        t.check(&(&p + &q) + &r == &p + &(&q + &r), || {
            format!("addition not associative: {}", show())
        });
        t.check(&p * &q == &q * &p, || {
            format!("multiplication not commutative: {}", show())
        });
        t.check(&(&p * &q) * &r == &p * &(&q * &r), || {
            format!("multiplication not associative: {}", show())
        });
        t.check(&p * &(&q + &r) == &(&p * &q) + &(&p * &r), || {
            format!("not distributive: {}", show())
        });
        t.check(&p + &zero == p && &p * &one == p, || format!("units fail: {}", show()));
        t.check((&p + &(-&p)).is_zero(), || format!("p + (-p) nonzero: {}", show()));
    }
    Ok(())
}

fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    if k == 0 {
        return vec![(Vec::new(), true)];
    }
    let mut out = Vec::new();
    for (p, even) in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            // inserting the largest element before `len - pos` others adds that many inversions
            out.push((q, even == ((p.len() - pos) % 2 == 0)));
        }
    }
    out
}

fn leibniz(m: &Matrix<MultiPoly>) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    for (p, even) in permutations(m.rows()) {
        let mut term = MultiPoly::one();
        for (i, j) in p.iter().enumerate() {
            term = &term * &m[(i, *j)];
        }
        acc = if even { &acc + &term } else { &acc - &term };
    }
    acc
}

fn exactalg_determinant(b: &Bounds, t: &mut Tally) -> Result<()> {
    let mut rng = b.rng(2);
    let vars = entry_vars(b);
    for k in 1..=3usize {
        for _ in 0..5 {
            let x = sampling::poly_matrix(&mut rng, k, &vars, 2, 1, 2);
            let y = sampling::poly_matrix(&mut rng, k, &vars, 2, 1, 2);
            t.check(x.det() == leibniz(&x), || {
                format!("cofactor determinant differs from Leibniz on {x}")
            });
            t.check((&x * &y).det() == &x.det() * &y.det(), || {
                format!("det(XY) != det(X)det(Y) for X = {x}, Y = {y}")
            });
            if k >= 2 {
                let mut s = x.clone();
                s.swap_rows(0, 1);
                t.check(s.det() == -x.det(), || format!("row swap does not negate det of {x}"));
            }
        }
        t.check(Matrix::<MultiPoly>::identity(k).det() == MultiPoly::one(), || {
            format!("det(I_{k}) != 1")
        });
    }
    Ok(())
}

fn exactalg_extraction(b: &Bounds, t: &mut Tally) -> Result<()> {
    let mut rng = b.rng(3);
    let vars = entry_vars(b);
    let formal: Vec<VarId> = vars.iter().filter(|v| v.is_formal()).cloned().collect();
    for _ in 0..16 {
        let p = sampling::poly(&mut rng, &vars, 6, 3, 3);
        let specs: BTreeSet<Vec<u32>> = p
            .terms()
            .map(|(m, _)| formal.iter().map(|v| m.exponent(v)).collect())
            .collect();
        let mut rebuilt = MultiPoly::zero();
        for spec in &specs {
            let map: BTreeMap<VarId, u32> = formal.iter().cloned().zip(spec.iter().copied()).collect();
            let c = coeff_extract(&p, &map)?;
            let lam = Monomial::from_powers(map.into_iter().filter(|(_, e)| *e > 0));
            rebuilt = &rebuilt + &c.mul_monomial(&BigInt::from(1), &lam);
        }
        t.check(rebuilt == p, || format!("coefficients of {p} do not reassemble"));
    }
    let p = MultiPoly::var(vars[0].clone());
    let spec = BTreeMap::from([(vars[0].clone(), 1)]);
    t.check(
        matches!(coeff_extract(&p, &spec), Err(Error::NonFormalVariable(_))),
        || "extraction on a matrix entry was accepted".into(),
    );
    Ok(())
}

fn exactalg_rank(b: &Bounds, t: &mut Tally) -> Result<()> {
    let mut rng = b.rng(4);
    for k in 0..12 {
        let a = sampling::int_matrix(&mut rng, 4, 2);
        // every third sample is forced to be singular
        let a = if k % 3 == 0 {
            let mut c = sampling::int_matrix(&mut rng, 4, 2);
            for j in 0..4 {
                c[(3, j)] = BigInt::from(0);
            }
            &c * &a
        } else {
            a
        };
        let r = int_rank(&a);
        let mut p = a.clone();
        p.swap_rows(0, 3);
        p.swap_rows(1, 2);
        t.check(int_rank(&p) == r, || format!("rank changes under row permutation: {a}"));
        t.check(int_rank(&a.transpose()) == r, || {
            format!("row and column rank differ: {a}")
        });
        t.check((r == 4) == (a.det() != BigInt::from(0)), || {
            format!("rank {r} disagrees with det of {a}")
        });
        let kernel = int_nullspace(&a);
        t.check(r + kernel.len() == 4, || format!("rank + nullity != 4 for {a}"));
        for v in &kernel {
            t.check(a.mul_vec(v).iter().all(|x| *x == BigInt::from(0)), || {
                format!("{v:?} not in kernel of {a}")
            });
        }
    }
    Ok(())
}

fn freering_ring_laws(b: &Bounds, t: &mut Tally) -> Result<()> {
    let mut rng = b.rng(5);
    let one = FreeElem::one();
    for _ in 0..20 {
        let [f, g, h] = [0; 3].map(|_| sampling::free_elem(&mut rng, &b.gens, 3, 3, 3));
        let show = || format!("f = {f}, g = {g}, h = {h}");
        t.check(&(&f * &g) * &h == &f * &(&g * &h), || {
            format!("product not associative: {}", show())
        });
        t.check(&f * &(&g + &h) == &(&f * &g) + &(&f * &h), || {
            format!("not left distributive: {}", show())
        });
        t.check(&(&g + &h) * &f == &(&g * &f) + &(&h * &f), || {
            format!("not right distributive: {}", show())
        });
        t.check(&f * &one == f && &one * &f == f, || format!("unit fails: {}", show()));
    }
    let words = enumerate_words(&b.gens, b.maxwordlen.min(2));
    for u in &words {
        for v in &words {
            let uv = u.concat(v);
            t.check(uv.multidegree() == &u.multidegree() + &v.multidegree(), || {
                format!("multidegree not additive on {u} * {v}")
            });
        }
    }
    Ok(())
}

fn freering_enumeration(b: &Bounds, t: &mut Tally) -> Result<()> {
    let words = enumerate_words(&b.gens, b.maxwordlen);
    let expected: usize = (0..=b.maxwordlen).map(|k| b.gens.len().pow(k as u32)).sum();
    t.check(words.len() == expected, || {
        format!("{} words enumerated, expected {expected}", words.len())
    });
    t.check(words.windows(2).all(|p| p[0] < p[1]), || {
        "enumeration not strictly increasing".into()
    });
    let set: BTreeSet<&Word> = words.iter().collect();
    for w in &words {
        let prefix = Word::from_letters(w.letters()[..w.len().saturating_sub(1)].to_vec());
        t.check(set.contains(&prefix), || format!("prefix of {w} missing"));
        let c = w.canonical_rotation();
        let rotations: Vec<Word> = (0..w.len().max(1))
            .map(|k| Word::from_letters([&w.letters()[k..], &w.letters()[..k]].concat()))
            .collect();
        t.check(c.canonical_rotation() == c && rotations.contains(&c), || {
            format!("canonical rotation of {w} is {c}")
        });
    }
    Ok(())
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn divpow_tables(_b: &Bounds, t: &mut Tally) -> Result<()> {
    for total in 0..=4u32 {
        for rows in 1..=2 {
            for cols in 1..=2 {
                for alpha in compositions(total, rows) {
                    for beta in compositions(total, cols) {
                        let tables = contingency_tables(&alpha, &beta);
                        let sums_ok = tables.iter().all(|m| m.row_sums() == alpha && m.col_sums() == beta);
                        t.check(sums_ok, || format!("table with wrong margins for {alpha:?}, {beta:?}"));
                        // brute force: all matrices with entries up to `total`
                        let brute = compositions(total, rows * cols)
                            .into_iter()
                            .filter(|e| {
                                (0..rows).all(|i| (0..cols).map(|j| e[i * cols + j]).sum::<u32>() == alpha[i])
                                    && (0..cols).all(|j| (0..rows).map(|i| e[i * cols + j]).sum::<u32>() == beta[j])
                            })
                            .count();
                        t.check(tables.len() == brute, || {
                            format!("{} tables for {alpha:?}, {beta:?}, expected {brute}", tables.len())
                        });
                        let mut transposed: Vec<_> = tables.iter().map(|m| m.to_rows()).collect();
                        transposed.sort();
                        let mut back: Vec<_> = contingency_tables(&beta, &alpha)
                            .iter()
                            .map(|m| m.transpose().to_rows())
                            .collect();
                        back.sort();
                        t.check(transposed == back, || {
                            format!("transpose is not a bijection for {alpha:?}, {beta:?}")
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Pairs of basis monomials whose multidegrees add up to at most `maxdeg`.
fn pairs(b: &Bounds, basis: &[DPMonomial]) -> Vec<(usize, usize)> {
    let totals: Vec<u32> = basis.iter().map(|u| u.multidegree().total()).collect();
    let mut out = Vec::new();
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if totals[i] + totals[j] <= b.maxdeg {
                out.push((i, j));
            }
        }
    }
    out
}

fn divpow_tau_ring(b: &Bounds, t: &mut Tally) -> Result<()> {
    let basis = b.basis();
    let totals: Vec<u32> = basis.iter().map(|u| u.multidegree().total()).collect();
    let unit = DPElem::unit(b.n);
    let mut cache = TauCache::default();
    for u in &basis {
        let e: DPElem = u.clone().into();
        t.check(cache.mul(&unit, &e)? == e && cache.mul(&e, &unit)? == e, || {
            format!("unit fails on {u}")
        });
    }
    for (i, j) in pairs(b, &basis) {
        let uv = cache.monomials(&basis[i], &basis[j])?;
        for (k, w) in basis.iter().enumerate() {
            if totals[i] + totals[j] + totals[k] > b.maxdeg {
                continue;
            }
            let left = cache.mul(&uv, &w.clone().into())?;
            let vw = cache.monomials(&basis[j], w)?;
            let right = cache.mul(&basis[i].clone().into(), &vw)?;
            t.check(left == right, || {
                format!("not associative on {}, {}, {w}", basis[i], basis[j])
            });
        }
    }
    // on a single generator the algebra is commutative
    let first = &b.gens[0];
    let single: Vec<&DPMonomial> = basis
        .iter()
        .filter(|u| u.multidegree().total() == u.multidegree().get(first))
        .collect();
    for u in &single {
        for v in &single {
            if u.multidegree().total() + v.multidegree().total() <= b.maxdeg {
                t.check(*cache.monomials(u, v)? == *cache.monomials(v, u)?, || {
                    format!("{u} and {v} do not commute")
                });
            }
        }
    }
    Ok(())
}

fn divpow_grading(b: &Bounds, t: &mut Tally) -> Result<()> {
    let basis = b.basis();
    let mut cache = TauCache::default();
    for u in &basis {
        let text = u.to_string();
        t.check(DPMonomial::parse(&text, b.n).as_ref() == Ok(u), || {
            format!("{text} does not parse back")
        });
    }
    for (i, j) in pairs(b, &basis) {
        let (u, v) = (&basis[i], &basis[j]);
        let uv = cache.monomials(u, v)?;
        let md = &u.multidegree() + &v.multidegree();
        let ok = uv.terms().all(|(m, _)| m.multidegree() == md && m.degree() == b.n);
        t.check(ok, || format!("{u} * {v} leaves multidegree {md}"));
    }
    for w in b.words() {
        let f = FreeElem::word(w.clone());
        let expected: DPElem = DPMonomial::power(b.n, w.clone(), b.n)?.into();
        t.check(normalize(&[(f.clone(), b.n as i64)], b.n)? == expected, || {
            format!("({w})^(n) is not normal")
        });
        t.check(
            normalize(&[(f.clone(), -1), (FreeElem::one(), b.n as i64 + 1)], b.n)?.is_zero(),
            || format!("negative exponent on {w} is not zero"),
        );
        t.check(
            matches!(
                normalize(&[(f, b.n as i64 + 1)], b.n),
                Err(Error::DegreeMismatch { .. })
            ),
            || format!("wrong total degree on {w} accepted"),
        );
    }
    Ok(())
}

fn genmat_padded_powers(b: &Bounds, t: &mut Tally) -> Result<()> {
    let ctx = b.ctx()?;
    let mut ev = GenericEvaluator::new(&ctx);
    for w in b.words() {
        let mat = ev.word_matrix(&w)?;
        for i in 0..=b.n {
            let u = DPMonomial::power(b.n, w.clone(), i)?;
            t.check(ev.pi(&u)? == char_coeff(&mat, i as usize), || {
                format!("image of {u} is not e_{i}({w})")
            });
        }
    }
    Ok(())
}

fn genmat_pi_multiplicative(b: &Bounds, t: &mut Tally) -> Result<()> {
    let ctx = b.ctx()?;
    let mut ev = GenericEvaluator::new(&ctx);
    let basis = b.basis();
    let images = basis.iter().map(|u| ev.pi(u)).collect::<Result<Vec<_>>>()?;
    let mut cache = TauCache::default();
    for (i, j) in pairs(b, &basis) {
        let uv = cache.monomials(&basis[i], &basis[j])?;
        t.check(ev.pi_elem(&uv)? == &images[i] * &images[j], || {
            format!("image of {} * {} is not the product", basis[i], basis[j])
        });
    }
    Ok(())
}

fn genmat_presentation(b: &Bounds, t: &mut Tally) -> Result<()> {
    let ctx = b.ctx()?;
    let mut ev = GenericEvaluator::new(&ctx);
    let mut presenter = EPresenter::new(b.n);
    for u in b.basis() {
        let e = presenter.monomial(&u)?;
        t.check(ev.evaluate(&e)? == ev.pi(&u)?, || {
            format!("presentation {e} of {u} has the wrong value")
        });
    }
    Ok(())
}

fn genmat_char_coeffs(b: &Bounds, t: &mut Tally) -> Result<()> {
    let ctx = b.ctx()?;
    let n = b.n as usize;
    let tvar = MultiPoly::var(VarId::formal("t", 0));
    let mut rng = b.rng(6);
    let mut elems: Vec<FreeElem> = b.words().into_iter().map(FreeElem::word).collect();
    elems.extend(b.sample_elems(&mut rng, 4));
    for f in elems {
        let m = embed_generic(&f, &ctx)?;
        let shifted = Matrix::from_fn(n, n, |i, j| if i == j { &m[(i, j)] + &tvar } else { m[(i, j)].clone() });
        let mut poly = MultiPoly::zero();
        for i in 0..=n {
            poly = &poly + &(&char_coeff(&m, i) * &tvar.pow((n - i) as u32));
        }
        t.check(poly == shifted.det(), || {
            format!("characteristic coefficients of j({f}) do not give det(tI + b)")
        });
        t.check(char_coeff(&m, n) == m.det(), || format!("e_n(j({f})) != det"));
        t.check((1..=2).all(|k| char_coeff(&m, n + k).is_zero()), || {
            format!("e_i(j({f})) nonzero for i > n")
        });
    }
    Ok(())
}

/// Generators of the integer conjugation group used for invariance tests.
fn unimodular_generators(n: usize) -> Vec<Matrix<BigInt>> {
    let mut out = Vec::new();
    let mut flip = Matrix::identity(n);
    flip[(0, 0)] = BigInt::from(-1);
    out.push(flip);
    if n >= 2 {
        let mut shear = Matrix::identity(n);
        shear[(0, 1)] = BigInt::from(1);
        out.push(shear);
        let mut swap = Matrix::identity(n);
        swap.swap_rows(0, n - 1);
        out.push(swap);
    }
    out
}

fn genmat_conjugation(b: &Bounds, t: &mut Tally) -> Result<()> {
    let ctx = b.ctx()?;
    let n = b.n as usize;
    let mut rng = b.rng(7);
    let gs = unimodular_generators(n);
    for f in b.sample_elems(&mut rng, 4) {
        let m = embed_generic(&f, &ctx)?;
        for i in 1..=n {
            let e = char_coeff(&m, i);
            for g in &gs {
                t.check(conjugation_action(&e, g, &ctx)? == e, || {
                    format!("e_{i}(j({f})) moves under {g}")
                });
            }
        }
    }
    if n >= 2 {
        // the action is not trivial on entries
        let entry = MultiPoly::var(VarId::entry(&b.gens[0], 1, 2));
        t.check(conjugation_action(&entry, &gs[1], &ctx)? != entry, || {
            "the shear fixes an off-diagonal entry".into()
        });
    }
    let mut singular = Matrix::identity(n);
    singular[(0, 0)] = BigInt::from(2);
    t.check(
        matches!(
            conjugation_action(&MultiPoly::one(), &singular, &ctx),
            Err(Error::NotUnimodular(_))
        ),
        || "a non-unimodular matrix was accepted".into(),
    );
    Ok(())
}

fn genmat_det_multiplicative(b: &Bounds, t: &mut Tally) -> Result<()> {
    let ctx = b.ctx()?;
    let mut rng = b.rng(8);
    let elems = b.sample_elems(&mut rng, 8);
    for pair in elems.chunks(2) {
        let (f, g) = (&pair[0], &pair[1]);
        t.check(
            det_law(&(f * g), &ctx)? == &det_law(f, &ctx)? * &det_law(g, &ctx)?,
            || format!("det(j(fg)) != det(j(f))det(j(g)) for f = {f}, g = {g}"),
        );
    }
    t.check(det_law(&FreeElem::one(), &ctx)? == MultiPoly::one(), || {
        "det(j(1)) != 1".into()
    });
    Ok(())
}

fn genmat_invariant_dimensions(b: &Bounds, t: &mut Tally) -> Result<()> {
    let ctx = b.ctx()?;
    for d in b.multidegrees() {
        let dim = invariant_space(&ctx, &d)?.dim;
        let rank = e_span_rank(&ctx, &d, d.total() as usize)?;
        t.check(dim == rank, || {
            format!("degree {d}: invariant dimension {dim}, e-span rank {rank}")
        });
    }
    Ok(())
}

fn genmat_graded_isomorphism(b: &Bounds, t: &mut Tally) -> Result<()> {
    let ctx = b.ctx()?;
    for d in b.multidegrees() {
        let ab = ab_component_rank(b.n, &d, &b.gens);
        let image = pi_span_rank(&ctx, &d)?;
        t.check(ab == image, || {
            format!("degree {d}: abelianized rank {ab}, image rank {image}")
        });
    }
    Ok(())
}

fn genmat_commuting_square(b: &Bounds, t: &mut Tally) -> Result<()> {
    if b.n < 2 {
        return Ok(());
    }
    let ctx = b.ctx()?;
    let small = ctx.smaller()?;
    let mut ev = GenericEvaluator::new(&ctx);
    let mut ev_small = GenericEvaluator::new(&small);
    for u in b.basis() {
        let down = rho(&u.clone().into())?;
        t.check(delta(&ev.pi(&u)?, &ctx)? == ev_small.pi_elem(&down)?, || {
            format!("square fails on {u}")
        });
    }
    Ok(())
}

/// The fixture laws exercised by default, for degree `n` where it is free.
pub fn default_fixtures(n: u32, gens: &[Label]) -> Vec<Fixture> {
    let size = n as usize;
    // a companion-style matrix with characteristic polynomial t^n - 2
    let m = Matrix::from_fn(size, size, |i, j| {
        if i == j + 1 {
            BigInt::from(1)
        } else if i == 0 && j + 1 == size {
            BigInt::from(2)
        } else {
            BigInt::from(0)
        }
    });
    vec![
        Fixture::Det { n: size },
        Fixture::Norm { d: -1 },
        Fixture::Norm { d: 2 },
        Fixture::Norm { d: 5 },
        Fixture::Power { n, c: 2 },
        Fixture::Power { n, c: 3 },
        Fixture::RepDet {
            n: size,
            matrices: BTreeMap::from([(gens[0].clone(), m)]),
        },
    ]
}

fn lawkit_fixtures(b: &Bounds, t: &mut Tally) -> Result<()> {
    let tests = default_tests(&b.gens);
    let mut relations: BTreeMap<u32, Vec<EExpression>> = BTreeMap::new();
    for (k, fixture) in default_fixtures(b.n, &b.gens).into_iter().enumerate() {
        let law = fixture.law(&b.gens)?;
        let n = law.degree();
        let ctx = GenericContext::new(n as usize, law.gens())?;
        if let Entry::Vacant(slot) = relations.entry(n) {
            slot.insert(relations_up_to(&ctx, b.maxdeg)?);
        }
        let report = factor_report(
            &*law,
            fixture.to_string(),
            &b.config,
            &tests,
            Some(relations[&n].as_slice()),
        )?;
        t.check(report.homogeneous.passed, || format!("{fixture} not homogeneous"));
        t.check(report.multiplicative.passed, || format!("{fixture} not multiplicative"));
        for c in &report.tests {
            t.check(c.passed, || format!("{fixture}: diagram fails on {}", c.f));
        }
        if let Some(r) = &report.relations {
            t.check(r.passed, || {
                format!("{fixture}: phi does not kill {}", r.witness.clone().unwrap_or_default())
            });
        }
        let again = factor_report(
            &*law,
            fixture.to_string(),
            &b.config,
            &tests,
            Some(relations[&n].as_slice()),
        )?;
        t.check(
            serde_json::to_string(&again).ok() == serde_json::to_string(&report).ok(),
            || format!("{fixture}: factoring twice differs"),
        );
        if fixture == (Fixture::Norm { d: 2 }) {
            let x = Word::letter(b.gens[0].clone());
            let e2 = ESymbol::new(2, &x)?.to_string();
            let entry = report.table.iter().find(|e| e.symbol == e2).map(|e| e.value.clone());
            t.check(entry.as_deref() == Some("-2"), || {
                format!("norm:d=2 gives phi({e2}) = {entry:?}")
            });
            let one_plus = &FreeElem::one() + &FreeElem::word(x);
            let v = law.value(&one_plus)?;
            t.check(v == MultiPoly::from_int(-1), || {
                format!("norm:d=2 gives p({one_plus}) = {v}")
            });
        }
        roby_multiplicative(b, &*law, t)?;
        naturality(b, &*law, t)?;
        if b.inject_fault && k == 0 {
            // deliberately wrong table: the diagram must now be reported as failing
            let mut phi = factor_law(&*law, &ctx, b.maxwordlen)?;
            let s = ESymbol::new(n, &Word::letter(b.gens[0].clone()))?;
            let old = phi.value(&s).cloned().unwrap_or_else(MultiPoly::zero);
            phi = phi.with_value(s, &old + &MultiPoly::one());
            let checked = verify_factorization(&*law, &mut phi, &ctx, &tests)?;
            for c in &checked.checks {
                t.check(c.passes(), || {
                    format!("injected fault: {fixture} diagram fails on {}", c.test)
                });
            }
        }
    }
    Ok(())
}

/// The homomorphism attached to `law` respects the divided-power product.
fn roby_multiplicative(b: &Bounds, law: &dyn LawOracle<MultiPoly>, t: &mut Tally) -> Result<()> {
    let n = law.degree();
    let basis: Vec<DPMonomial> = MultiDegree::all_with_total_at_most(law.gens(), b.maxdeg.min(2))
        .iter()
        .flat_map(|d| basis_with_multidegree(n, law.gens(), d))
        .collect();
    let mut cache = TauCache::default();
    for u in &basis {
        for v in &basis {
            if u.multidegree().total() + v.multidegree().total() > b.maxdeg.min(2) {
                continue;
            }
            let uv = cache.monomials(u, v)?;
            let mut lhs = MultiPoly::zero();
            for (m, c) in uv.terms() {
                lhs = &lhs + &roby_hom(law, m)?.scale(c);
            }
            t.check(lhs == &roby_hom(law, u)? * &roby_hom(law, v)?, || {
                format!("{}: attached map not multiplicative on {u}, {v}", law.name())
            });
        }
    }
    Ok(())
}

/// Evaluating with formal scalars and then specializing agrees with
/// evaluating the specialized element.
fn naturality(b: &Bounds, law: &dyn LawOracle<MultiPoly>, t: &mut Tally) -> Result<()> {
    let mut rng = b.rng(9);
    for _ in 0..3 {
        let words = sampling::word_set(&mut rng, law.gens(), 2, 2);
        let values: Vec<i64> = words.iter().map(|_| rng.gen_range(-2..=2)).collect();
        let mut formal = polylaw::freering::FreeAlg::<MultiPoly>::zero();
        let mut concrete = FreeElem::zero();
        let mut sigma = BTreeMap::new();
        for (k, (w, c)) in words.iter().zip(&values).enumerate() {
            let lam = VarId::formal("l", k as u32);
            formal.add_term(w.clone(), MultiPoly::var(lam.clone()));
            concrete.add_term(w.clone(), BigInt::from(*c));
            sigma.insert(lam, MultiPoly::from_int(*c));
        }
        let specialized = law
            .eval(&formal)?
            .evaluate(|v| sigma.get(v).cloned().unwrap_or_else(MultiPoly::zero));
        t.check(specialized == law.value(&concrete)?, || {
            format!("{}: specializing scalars disagrees on {concrete}", law.name())
        });
    }
    Ok(())
}

fn lawkit_negative_controls(b: &Bounds, t: &mut Tally) -> Result<()> {
    let n = b.n.max(2) as usize;
    let perm = Fixture::Perm { n }.law(&b.gens)?;
    match check_multiplicative(&*perm, 6, b.seed)? {
        Verdict::Pass => t.check(false, || "the permanent law passed the multiplicativity check".into()),
        Verdict::Fail(w) => {
            t.check(w.is_concrete(), || format!("permanent witness is not concrete: {w}"));
            if w.is_concrete() {
                let f = w.f.map_coeffs(|c| c.constant_term());
                let g = w.g.map_coeffs(|c| c.constant_term());
                // recompute the permanents directly from the generic embedding
                let ctx = GenericContext::new(n, &b.gens)?;
                let per = |x: &FreeElem| embed_generic(x, &ctx).map(|m| m.permanent());
                t.check(per(&(&f * &g))? != &per(&f)? * &per(&g)?, || {
                    format!("witness {w} does not separate")
                });
            }
        }
    }
    let mixed = Fixture::Mixed { c: 3 }.law(&b.gens)?;
    t.check(!check_homogeneous(&*mixed, 6, b.seed)?.is_pass(), || {
        "the mixed-degree law passed homogeneity".into()
    });
    if b.maxdeg >= 2 {
        let det = Fixture::Det { n: b.n as usize }.law(&b.gens)?;
        let ctx = b.ctx()?;
        let phi = factor_law(&*det, &ctx, b.maxwordlen)?;
        let s = ESymbol::new(b.n, &Word::letter(b.gens[0].clone()))?;
        let old = phi.value(&s).cloned().unwrap_or_else(MultiPoly::zero);
        let mut bad = phi.with_value(s.clone(), &old + &MultiPoly::one());
        let relations = relations_up_to(&ctx, b.maxdeg)?;
        t.check(!check_welldefined(&*det, &mut bad, &relations)?.is_pass(), || {
            format!("perturbing phi({s}) went unnoticed by {} relations", relations.len())
        });
    }
    Ok(())
}
