//! The single-computation subcommands.

use std::fmt::Write as _;

use polylaw::divpow::ab_component_rank;
use polylaw::genmat::{char_coeff, e_span_rank, embed_generic, invariant_space, pi_image_elem, EPresenter};
use polylaw::lawkit::{
    check_homogeneous, check_multiplicative, check_welldefined, factor_law, relations_discover, render_formal,
    verify_factorization, Fixture, LawOracle, Verdict,
};
use polylaw::{DPElem, EExpression, Error, FreeElem, GenericContext, Label, MultiDegree, MultiPoly, Result};
use serde::Serialize;

use crate::render::{status, Report};
use crate::RunConfig;

/// Budget of sampled word sets for the precondition checks in `factor`.
const PRECONDITION_BUDGET: usize = 6;

#[derive(Clone, Debug, Serialize)]
pub struct ECoeffReport {
    pub f: String,
    pub i: usize,
    pub n: usize,
    pub value: String,
}

impl Report for ECoeffReport {
    const COMMAND: &'static str = "e-coeff";

    fn text(&self) -> String {
        format!("{}\n", self.value)
    }
}

pub fn e_coeff(config: &RunConfig, f: &str, i: usize) -> Result<ECoeffReport> {
    let elem: FreeElem = f.parse()?;
    let ctx = GenericContext::new(config.n, &config.labels())?;
    let b = embed_generic(&elem, &ctx)?;
    Ok(ECoeffReport {
        f: elem.to_string(),
        i,
        n: config.n,
        value: char_coeff(&b, i).to_string(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PiReport {
    /// The input in normal form.
    pub u: String,
    pub n: usize,
    pub value: String,
    /// The same value written in the characteristic coefficients `e[i](w)`.
    pub presentation: String,
}

impl Report for PiReport {
    const COMMAND: &'static str = "pi";

    fn text(&self) -> String {
        format!("{}\npresentation: {}\n", self.value, self.presentation)
    }
}

pub fn pi(config: &RunConfig, u: &str) -> Result<PiReport> {
    let n = config.n as u32;
    let elem = DPElem::parse(u, n)?;
    let ctx = GenericContext::new(config.n, &config.labels())?;
    let value = pi_image_elem(&elem, &ctx)?;
    let presentation = EPresenter::new(n).elem(&elem)?;
    Ok(PiReport {
        u: elem.to_string(),
        n: config.n,
        value: value.to_string(),
        presentation: presentation.to_string(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct InvdimRow {
    /// Degrees in the order of `--gens`.
    pub multidegree: Vec<u32>,
    pub invariant_dim: usize,
    pub e_span_rank: usize,
    pub ab_rank: usize,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvdimReport {
    pub gens: Vec<String>,
    pub rows: Vec<InvdimRow>,
}

impl Report for InvdimReport {
    const COMMAND: &'static str = "invdim";

    fn text(&self) -> String {
        let mut out = String::new();
        let head = format!("({})", self.gens.join(","));
        let width = self
            .rows
            .iter()
            .map(|r| md_text(&r.multidegree).len())
            .chain([head.len()])
            .max()
            .unwrap_or(0);
        writeln!(out, "{head:<width$}  invariant  e-span  ab").unwrap();
        for r in &self.rows {
            writeln!(
                out,
                "{:<width$}  {:>9}  {:>6}  {:>2}{}",
                md_text(&r.multidegree),
                r.invariant_dim,
                r.e_span_rank,
                r.ab_rank,
                if r.agree { "" } else { "  MISMATCH" }
            )
            .unwrap();
        }
        out
    }

    fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.agree)
    }
}

fn md_text(d: &[u32]) -> String {
    let parts: Vec<String> = d.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn invdim(config: &RunConfig) -> Result<InvdimReport> {
    let gens = config.labels();
    let ctx = GenericContext::new(config.n, &gens)?;
    let mut rows = Vec::new();
    for d in MultiDegree::all_with_total_at_most(&gens, config.maxdeg) {
        let invariant_dim = invariant_space(&ctx, &d)?.dim;
        let e_rank = e_span_rank(&ctx, &d, d.total() as usize)?;
        let ab_rank = ab_component_rank(config.n as u32, &d, &gens);
        rows.push(InvdimRow {
            multidegree: d.to_vec(&gens),
            invariant_dim,
            e_span_rank: e_rank,
            ab_rank,
            agree: invariant_dim == e_rank && e_rank == ab_rank,
        });
    }
    Ok(InvdimReport {
        gens: config.gens.clone(),
        rows,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub passed: bool,
    pub witness: Option<String>,
}

impl CheckOutcome {
    fn from_verdict<W>(v: &Verdict<W>, show: impl Fn(&W) -> String) -> Self {
        CheckOutcome {
            passed: v.is_pass(),
            witness: v.witness().map(show),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableEntry {
    pub symbol: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TestOutcome {
    pub f: String,
    /// `p(f)`.
    pub value: String,
    /// Image of the divided-power expansion of `f` under the attached homomorphism.
    pub roby_sum: String,
    /// `φ(det(j_n(f)))`.
    pub factored: String,
    /// Whether `det(j_n(f))` equals the image of its divided-power expansion.
    pub symbolic: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationsOutcome {
    pub maxdeg: u32,
    pub count: usize,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorReport {
    pub fixture: String,
    pub degree: u32,
    pub homogeneous: CheckOutcome,
    pub multiplicative: CheckOutcome,
    pub word_cap: usize,
    pub table: Vec<TableEntry>,
    pub tests: Vec<TestOutcome>,
    pub relations: Option<RelationsOutcome>,
}

impl Report for FactorReport {
    const COMMAND: &'static str = "factor";

    fn text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "fixture: {} (degree {})", self.fixture, self.degree).unwrap();
        for (name, c) in [
            ("homogeneous", &self.homogeneous),
            ("multiplicative", &self.multiplicative),
        ] {
            write!(out, "{name}: {}", status(c.passed)).unwrap();
            if let Some(w) = &c.witness {
                write!(out, " (witness: {w})").unwrap();
            }
            out.push('\n');
        }
        if !self.table.is_empty() {
            writeln!(out, "phi table (words up to length {}):", self.word_cap).unwrap();
            for e in &self.table {
                writeln!(out, "  phi({}) = {}", e.symbol, e.value).unwrap();
            }
        }
        if !self.tests.is_empty() {
            writeln!(out, "tests:").unwrap();
            for t in &self.tests {
                writeln!(
                    out,
                    "  f = {}: p(f) = {}, roby = {}, phi(det) = {}, symbolic {}  {}",
                    t.f,
                    t.value,
                    t.roby_sum,
                    t.factored,
                    if t.symbolic { "ok" } else { "differs" },
                    status(t.passed)
                )
                .unwrap();
            }
        }
        if let Some(r) = &self.relations {
            write!(
                out,
                "relations up to degree {}: {} checked  {}",
                r.maxdeg,
                r.count,
                status(r.passed)
            )
            .unwrap();
            if let Some(w) = &r.witness {
                write!(out, " (phi does not kill {w})").unwrap();
            }
            out.push('\n');
        }
        writeln!(out, "result: {}", status(self.passed())).unwrap();
        out
    }

    fn passed(&self) -> bool {
        self.homogeneous.passed
            && self.multiplicative.passed
            && self.tests.iter().all(|t| t.passed)
            && self.relations.as_ref().is_some_and(|r| r.passed)
    }
}

/// `1, s, s², 1+s` for the first generator `s`, and `s+t, st, 1+s+t` when a
/// second generator `t` exists.
pub fn default_tests(gens: &[Label]) -> Vec<FreeElem> {
    let one = FreeElem::one();
    let s = FreeElem::generator(gens[0].clone());
    let mut out = vec![one.clone(), s.clone(), &s * &s, &one + &s];
    if let Some(t) = gens.get(1) {
        let t = FreeElem::generator(t.clone());
        out.push(&s + &t);
        out.push(&s * &t);
        out.push(&(&one + &s) + &t);
    }
    out
}

pub fn factor(config: &RunConfig, explicit_n: Option<usize>, spec: &str, tests: &[String]) -> Result<FactorReport> {
    let fixture: Fixture = spec.parse()?;
    let n = fixture.degree();
    if let Some(k) = explicit_n {
        if k as u32 != n {
            return Err(Error::Invalid(format!(
                "--n {k} conflicts with fixture {fixture} of degree {n}"
            )));
        }
    }
    let law = fixture.law(&config.labels())?;
    let gens = law.gens().to_vec();
    let tests = if tests.is_empty() {
        default_tests(&gens)
    } else {
        tests.iter().map(|t| parse_test(t, &gens)).collect::<Result<_>>()?
    };
    factor_report(&*law, fixture.to_string(), config, &tests, None)
}

fn parse_test(src: &str, gens: &[Label]) -> Result<FreeElem> {
    let f: FreeElem = src.parse()?;
    if let Some(l) = f.labels().into_iter().find(|l| !gens.contains(l)) {
        return Err(Error::UnknownLabel(l.to_string()));
    }
    Ok(f)
}

/// All relations among the `e`-monomials of total degree at most `maxdeg`.
pub fn relations_up_to(ctx: &GenericContext, maxdeg: u32) -> Result<Vec<EExpression>> {
    let mut out = Vec::new();
    for d in MultiDegree::all_with_total_at_most(ctx.gens(), maxdeg) {
        out.extend(relations_discover(ctx, &d)?);
    }
    Ok(out)
}

/// Checks the preconditions, factors `law`, and verifies the diagram on
/// `tests` and well-definedness against `relations`, which default to those
/// of degree at most `config.maxdeg`.
pub fn factor_report(
    law: &dyn LawOracle<MultiPoly>,
    fixture: String,
    config: &RunConfig,
    tests: &[FreeElem],
    relations: Option<&[EExpression]>,
) -> Result<FactorReport> {
    let owned;
    let n = law.degree();
    let homogeneous = check_homogeneous(law, PRECONDITION_BUDGET, config.seed)?;
    let multiplicative = check_multiplicative(law, PRECONDITION_BUDGET, config.seed)?;
    let mut report = FactorReport {
        fixture,
        degree: n,
        homogeneous: CheckOutcome::from_verdict(&homogeneous, render_formal),
        multiplicative: CheckOutcome::from_verdict(&multiplicative, |w| w.to_string()),
        word_cap: config.maxwordlen,
        table: Vec::new(),
        tests: Vec::new(),
        relations: None,
    };
    if !homogeneous.is_pass() || !multiplicative.is_pass() {
        return Ok(report);
    }
    let ctx = GenericContext::new(n as usize, law.gens())?;
    let mut phi = match factor_law(law, &ctx, config.maxwordlen) {
        Ok(phi) => phi,
        Err(Error::NotHomogeneous { witness, .. }) => {
            report.homogeneous = failed(witness);
            return Ok(report);
        }
        Err(Error::NotMultiplicative { witness }) => {
            report.multiplicative = failed(witness);
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.table = phi
        .table()
        .iter()
        .map(|(s, v)| TableEntry {
            symbol: s.to_string(),
            value: v.to_string(),
        })
        .collect();
    let checked = verify_factorization(law, &mut phi, &ctx, tests)?;
    report.tests = checked
        .checks
        .iter()
        .map(|c| TestOutcome {
            f: c.test.to_string(),
            value: c.value.to_string(),
            roby_sum: c.roby_sum.to_string(),
            factored: c.factored.to_string(),
            symbolic: c.symbolic,
            passed: c.passes(),
        })
        .collect();
    let relations = match relations {
        Some(r) => r,
        None => {
            owned = relations_up_to(&ctx, config.maxdeg)?;
            &owned
        }
    };
    let verdict = check_welldefined(law, &mut phi, relations)?;
    report.relations = Some(RelationsOutcome {
        maxdeg: config.maxdeg,
        count: relations.len(),
        passed: verdict.is_pass(),
        witness: verdict.witness().map(ToString::to_string),
    });
    Ok(report)
}

fn failed(witness: String) -> CheckOutcome {
    CheckOutcome {
        passed: false,
        witness: Some(witness),
    }
}
