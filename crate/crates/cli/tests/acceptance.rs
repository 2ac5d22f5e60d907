//! Acceptance run: one PASS/FAIL line per criterion, exact equality
//! throughout, wall-clock limits enforced. Exits nonzero if any criterion
//! fails.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use polylaw::divpow::{ab_component_rank, basis_below, normalize, rho, TauCache};
use polylaw::exactalg::Matrix;
use polylaw::freering::enumerate_words;
use polylaw::genmat::{delta, e_span_rank, invariant_space, pi_span_rank, GenericEvaluator};
use polylaw::lawkit::{
    check_multiplicative, check_welldefined, factor_law, relations_discover, verify_factorization, Fixture, Verdict,
};
use polylaw::{
    labels, DPElem, EExpression, ESymbol, FreeElem, GenericContext, Label, MultiDegree, MultiPoly, Result, VarId, Word,
};

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }
}

fn bound(gens: &[Label], degrees: &[u32]) -> MultiDegree {
    MultiDegree::from_vec(gens, degrees)
}

fn tau_axioms() -> Result<Outcome> {
    let gens = labels(&["x", "y"]);
    let mut notes = Vec::new();
    let mut passed = true;
    for n in [2u32, 3] {
        let basis = basis_below(n, &gens, &bound(&gens, &[2, 1]));
        let mut cache = TauCache::default();
        let unit = DPElem::unit(n);
        let mut unit_fail = 0;
        for u in &basis {
            let e: DPElem = u.clone().into();
            if cache.mul(&unit, &e)? != e || cache.mul(&e, &unit)? != e {
                unit_fail += 1;
            }
        }
        let mut assoc_fail = 0;
        let mut triples = 0;
        for u in &basis {
            for v in &basis {
                let uv = cache.monomials(u, v)?;
                for w in &basis {
                    let vw = cache.monomials(v, w)?;
                    triples += 1;
                    if cache.mul(&uv, &w.clone().into())? != cache.mul(&u.clone().into(), &vw)? {
                        assoc_fail += 1;
                    }
                }
            }
        }
        let ctx = GenericContext::new(n as usize, &gens)?;
        let mut ev = GenericEvaluator::new(&ctx);
        let mut comm_fail = 0;
        let mut pairs = 0;
        let mut image_asym = 0;
        let mut witness = None;
        for u in &basis {
            for v in &basis {
                pairs += 1;
                let uv = cache.monomials(u, v)?;
                let vu = cache.monomials(v, u)?;
                if uv != vu {
                    comm_fail += 1;
                    witness.get_or_insert_with(|| format!("{u} * {v}"));
                    if ev.pi_elem(&uv)? != ev.pi_elem(&vu)? {
                        image_asym += 1;
                    }
                }
            }
        }
        // on one generator the product is commutative
        let single = basis_below(n, &gens[..1], &bound(&gens[..1], &[2]));
        let mut single_fail = 0;
        for u in &single {
            for v in &single {
                if cache.monomials(u, v)? != cache.monomials(v, u)? {
                    single_fail += 1;
                }
            }
        }
        passed &= unit_fail == 0 && assoc_fail == 0 && comm_fail == 0;
        notes.push(format!(
            "n={n}: {} monomials, unit {} fail, associative {assoc_fail}/{triples} fail, commutative {comm_fail}/{pairs} fail{}, images of swapped products differ {image_asym}, commutative on S={{x}} {single_fail} fail",
            basis.len(),
            unit_fail,
            witness.map(|w| format!(" (first {w})")).unwrap_or_default(),
        ));
    }
    Ok(Outcome::new(passed, notes.join("; ")))
}

/// `e_i(b)` as the coefficient of `t^(n-i)` in `det(tI + b)`.
fn e_by_char_poly(b: &Matrix<MultiPoly>, i: usize) -> MultiPoly {
    let n = b.rows();
    let t = VarId::formal("t", 0);
    let tp = MultiPoly::var(t.clone());
    let shifted = Matrix::from_fn(n, n, |r, c| if r == c { &b[(r, c)] + &tp } else { b[(r, c)].clone() });
    shifted.det().coefficient_of(&BTreeMap::from([(t, (n - i) as u32)]))
}

fn padded_powers() -> Result<Outcome> {
    let gens = labels(&["x", "y"]);
    let mut cases = 0;
    let mut fails = Vec::new();
    for n in [2u32, 3] {
        let ctx = GenericContext::new(n as usize, &gens)?;
        let mut ev = GenericEvaluator::new(&ctx);
        for w in enumerate_words(&gens, 3) {
            let b = ev.word_matrix(&w)?;
            for i in 0..=n {
                let u = normalize(
                    &[(FreeElem::one(), (n - i) as i64), (FreeElem::word(w.clone()), i as i64)],
                    n,
                )?;
                cases += 1;
                if ev.pi_elem(&u)? != e_by_char_poly(&b, i as usize) {
                    fails.push(format!("n={n} i={i} w={w}"));
                }
            }
        }
    }
    Ok(Outcome::new(
        fails.is_empty(),
        format!("{cases} cases, {} fail {fails:?}", fails.len()),
    ))
}

fn pi_multiplicative() -> Result<Outcome> {
    let gens = labels(&["x", "y"]);
    let mut notes = Vec::new();
    let mut fails = 0;
    for n in [2u32, 3] {
        let ctx = GenericContext::new(n as usize, &gens)?;
        let mut ev = GenericEvaluator::new(&ctx);
        let basis = basis_below(n, &gens, &bound(&gens, &[2, 2]));
        let images = basis.iter().map(|u| ev.pi(u)).collect::<Result<Vec<_>>>()?;
        let mut cache = TauCache::default();
        let mut pairs = 0;
        for (i, u) in basis.iter().enumerate() {
            for (j, v) in basis.iter().enumerate() {
                pairs += 1;
                let uv = cache.monomials(u, v)?;
                if ev.pi_elem(&uv)? != &images[i] * &images[j] {
                    fails += 1;
                }
            }
        }
        notes.push(format!("n={n}: {pairs} pairs"));
    }
    Ok(Outcome::new(fails == 0, format!("{}, {fails} fail", notes.join(", "))))
}

fn rank_ranges() -> Vec<(Vec<Label>, MultiDegree)> {
    let mut out = Vec::new();
    for names in [&["x"][..], &["x", "y"][..]] {
        let gens = labels(names);
        for d in MultiDegree::all_with_total_at_most(&gens, 4) {
            out.push((gens.clone(), d));
        }
    }
    out
}

fn invariant_dimensions() -> Result<Outcome> {
    let mut fails = Vec::new();
    let mut dims = Vec::new();
    let ranges = rank_ranges();
    for (gens, d) in &ranges {
        let ctx = GenericContext::new(2, gens)?;
        let dim = invariant_space(&ctx, d)?.dim;
        let rank = e_span_rank(&ctx, d, d.total() as usize)?;
        dims.push(dim);
        if dim != rank {
            fails.push(format!("{d}: {dim} vs {rank}"));
        }
    }
    Ok(Outcome::new(
        fails.is_empty(),
        format!(
            "{} multidegrees, dims {dims:?}, {} fail {fails:?}",
            ranges.len(),
            fails.len()
        ),
    ))
}

fn graded_iso() -> Result<Outcome> {
    let mut fails = Vec::new();
    let mut ranks = Vec::new();
    let ranges = rank_ranges();
    for (gens, d) in &ranges {
        let ctx = GenericContext::new(2, gens)?;
        let ab = ab_component_rank(2, d, gens);
        let image = pi_span_rank(&ctx, d)?;
        ranks.push(ab);
        if ab != image {
            fails.push(format!("{d}: {ab} vs {image}"));
        }
    }
    Ok(Outcome::new(
        fails.is_empty(),
        format!(
            "{} multidegrees, ranks {ranks:?}, {} fail {fails:?}",
            ranges.len(),
            fails.len()
        ),
    ))
}

fn commuting_square() -> Result<Outcome> {
    let gens = labels(&["x", "y"]);
    let mut cases = 0;
    let mut fails = Vec::new();
    for n in [2u32, 3] {
        let ctx = GenericContext::new(n as usize, &gens)?;
        let small = ctx.smaller()?;
        let mut ev = GenericEvaluator::new(&ctx);
        let mut ev_small = GenericEvaluator::new(&small);
        for u in basis_below(n, &gens, &bound(&gens, &[2, 2])) {
            cases += 1;
            if delta(&ev.pi(&u)?, &ctx)? != ev_small.pi_elem(&rho(&u.clone().into())?)? {
                fails.push(format!("n={n} {u}"));
            }
        }
    }
    Ok(Outcome::new(
        fails.is_empty(),
        format!("{cases} monomials, {} fail {fails:?}", fails.len()),
    ))
}

fn test_set() -> Vec<FreeElem> {
    ["1", "x", "x*x", "1+x", "x+y", "x*y", "1+x+y"]
        .iter()
        .map(|s| s.parse().expect("test element"))
        .collect()
}

fn all_relations(ctx: &GenericContext) -> Result<Vec<EExpression>> {
    let mut out = Vec::new();
    for d in MultiDegree::all_with_total_at_most(ctx.gens(), 4) {
        out.extend(relations_discover(ctx, &d)?);
    }
    Ok(out)
}

fn main_diagram() -> Result<Outcome> {
    let gens = labels(&["x", "y"]);
    let fixtures = [
        "det:n=2",
        "norm:d=-1",
        "norm:d=2",
        "norm:d=5",
        "power:n=2,c=2",
        "power:n=2,c=3",
        "repdet:n=2,x=[[0,2],[1,0]]",
    ];
    let ctx = GenericContext::new(2, &gens)?;
    let relations = all_relations(&ctx)?;
    let tests = test_set();
    let mut fails = Vec::new();
    let mut spot = String::new();
    for spec in fixtures {
        let fixture: Fixture = spec.parse()?;
        let law = fixture.law(&gens)?;
        let mut phi = match factor_law(&*law, &ctx, 3) {
            Ok(phi) => phi,
            Err(e) => {
                fails.push(format!("{spec}: {e}"));
                continue;
            }
        };
        let report = verify_factorization(&*law, &mut phi, &ctx, &tests)?;
        for c in report.checks.iter().filter(|c| !c.passes()) {
            fails.push(format!("{spec}: diagram on {}", c.test));
        }
        if let Verdict::Fail(r) = check_welldefined(&*law, &mut phi, &relations)? {
            fails.push(format!("{spec}: relation {r}"));
        }
        if spec == "norm:d=2" {
            let e2 = phi.value(&ESymbol::new(2, &Word::from_names(&["x"]))?).cloned();
            let p = law.value(&"1+x".parse()?)?;
            let ok = e2 == Some(MultiPoly::from_int(-2)) && p == MultiPoly::from_int(-1);
            if !ok {
                fails.push(format!("norm:d=2 spot values phi(e[2](x)) = {e2:?}, p(1+x) = {p}"));
            }
            spot = format!(
                "norm:d=2 phi(e[2](x)) = {}, p(1+x) = {p}",
                e2.map(|v| v.to_string()).unwrap_or_default()
            );
        }
    }
    Ok(Outcome::new(
        fails.is_empty(),
        format!(
            "{} fixtures x {} tests, {} relations up to degree 4, {spot}, {} fail {fails:?}",
            fixtures.len(),
            tests.len(),
            relations.len(),
            fails.len()
        ),
    ))
}

fn negative_controls() -> Result<Outcome> {
    let gens = labels(&["x", "y"]);
    let ctx = GenericContext::new(2, &gens)?;
    let perm = Fixture::Perm { n: 2 }.law(&gens)?;
    let perm_ok = match check_multiplicative(&*perm, 6, 0)? {
        Verdict::Pass => None,
        Verdict::Fail(w) if w.is_concrete() => {
            let f = w.f.map_coeffs(|c| c.constant_term());
            let g = w.g.map_coeffs(|c| c.constant_term());
            // permanents recomputed from explicit generic matrices
            let per = |x: &FreeElem| polylaw::genmat::embed_generic(x, &ctx).map(|m| m.permanent());
            (per(&(&f * &g))? != &per(&f)? * &per(&g)?).then(|| w.to_string())
        }
        Verdict::Fail(_) => None,
    };
    let det = Fixture::Det { n: 2 }.law(&gens)?;
    let phi = factor_law(&*det, &ctx, 3)?;
    let s = ESymbol::new(2, &Word::from_names(&["x"]))?;
    let old = phi.value(&s).cloned().unwrap_or_else(MultiPoly::zero);
    let mut bad = phi.with_value(s, &old + &MultiPoly::one());
    let caught = check_welldefined(&*det, &mut bad, &all_relations(&ctx)?)?;
    let detail = format!(
        "permanent witness {}; perturbed phi caught by {}",
        perm_ok.as_deref().unwrap_or("MISSING"),
        caught
            .witness()
            .map(|r| r.to_string())
            .unwrap_or_else(|| "nothing".into())
    );
    Ok(Outcome::new(perm_ok.is_some() && !caught.is_pass(), detail))
}

fn determinism() -> Result<Outcome> {
    let bin = env!("CARGO_BIN_EXE_polylaw");
    let mut same = true;
    let mut sizes = Vec::new();
    for format in ["text", "json"] {
        let args = ["verify-all", "--seed", "11", "--format", format];
        let a = Command::new(bin).args(args).output().expect("run polylaw");
        let b = Command::new(bin).args(args).output().expect("run polylaw");
        same &= a.stdout == b.stdout && a.status.code() == b.status.code() && !a.stdout.is_empty();
        sizes.push(format!("{format} {} bytes exit {:?}", a.stdout.len(), a.status.code()));
    }
    Ok(Outcome::new(same, sizes.join(", ")))
}

type Criterion = (u32, &'static str, u64, fn() -> Result<Outcome>);

const CRITERIA: &[Criterion] = &[
    (
        1,
        "divided-power product is commutative, associative and unital",
        10,
        tau_axioms,
    ),
    (2, "padded powers map to characteristic coefficients", 10, padded_powers),
    (3, "image map is multiplicative", 60, pi_multiplicative),
    (4, "invariant dimensions equal e-span ranks", 120, invariant_dimensions),
    (5, "abelianized ranks equal image ranks", 120, graded_iso),
    (
        6,
        "row/column deletion commutes with padding removal",
        30,
        commuting_square,
    ),
    (7, "fixture laws factor through the determinant", 60, main_diagram),
    (8, "negative controls are rejected", 10, negative_controls),
    (9, "verify-all output is deterministic", u64::MAX, determinism),
];

fn main() -> ExitCode {
    let mut all = true;
    for (k, name, limit, run) in CRITERIA {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let (passed, detail) = match result {
            Ok(o) => (o.passed && in_time, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        all &= passed;
        let limit = if *limit == u64::MAX {
            String::new()
        } else {
            format!(" (limit {limit} s)")
        };
        println!(
            "criterion {k}: {} {name} [{:.2} s{limit}{}] {detail}",
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            if in_time { "" } else { ", over time" }
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
