use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{LawOracle, TargetRing};
use crate::error::{Error, Result};
use crate::exactalg::{Matrix, MultiPoly, Poly, PolyMatrix, VarId};
use crate::freering::{FreeAlg, Word};
use crate::genmat::{GenericContext, GenericEvaluator};
use crate::label::Label;

fn index_of(gens: &[Label], l: &Label) -> Result<usize> {
    gens.iter()
        .position(|g| g == l)
        .ok_or_else(|| Error::UnknownLabel(l.to_string()))
}

/// `f ↦ det(j_n(f))` with values in `A_S(n)`.
pub struct DeterminantLaw {
    ctx: GenericContext,
}

impl DeterminantLaw {
    pub fn new(ctx: GenericContext) -> Self {
        DeterminantLaw { ctx }
    }
}

impl LawOracle<MultiPoly> for DeterminantLaw {
    fn degree(&self) -> u32 {
        self.ctx.n() as u32
    }

    fn gens(&self) -> &[Label] {
        self.ctx.gens()
    }

    fn name(&self) -> String {
        format!("det:n={}", self.ctx.n())
    }

    fn eval(&self, f: &FreeAlg<MultiPoly>) -> Result<Poly<VarId, MultiPoly>> {
        let m = GenericEvaluator::new(&self.ctx).embed(f)?;
        Ok(m.det().split(VarId::is_formal))
    }
}

/// `f ↦ perm(j_n(f))`: homogeneous but not multiplicative for `n ≥ 2`.
pub struct PermanentLaw {
    ctx: GenericContext,
}

impl PermanentLaw {
    pub fn new(ctx: GenericContext) -> Self {
        PermanentLaw { ctx }
    }
}

impl LawOracle<MultiPoly> for PermanentLaw {
    fn degree(&self) -> u32 {
        self.ctx.n() as u32
    }

    fn gens(&self) -> &[Label] {
        self.ctx.gens()
    }

    fn name(&self) -> String {
        format!("perm:n={}", self.ctx.n())
    }

    fn eval(&self, f: &FreeAlg<MultiPoly>) -> Result<Poly<VarId, MultiPoly>> {
        let m = GenericEvaluator::new(&self.ctx).embed(f)?;
        Ok(m.permanent().split(VarId::is_formal))
    }
}

/// Norm `a + b√d ↦ a² − d b²` of `ℤ[√d]`, composed with the ring map
/// sending the `k`-th generator to `k + √d`.
pub struct NormLaw {
    d: BigInt,
    gens: Vec<Label>,
}

impl NormLaw {
    pub fn new(d: i64, gens: &[Label]) -> Self {
        NormLaw {
            d: BigInt::from(d),
            gens: gens.to_vec(),
        }
    }

    /// `(p, q)` with `ε(w) = p + q√d`.
    fn image(&self, w: &Word) -> Result<(BigInt, BigInt)> {
        let (mut p, mut q) = (BigInt::one(), BigInt::zero());
        for l in w.letters() {
            let k = BigInt::from(index_of(&self.gens, l)?);
            let np = &p * &k + &self.d * &q;
            let nq = &p + &q * &k;
            (p, q) = (np, nq);
        }
        Ok((p, q))
    }
}

impl LawOracle<BigInt> for NormLaw {
    fn degree(&self) -> u32 {
        2
    }

    fn gens(&self) -> &[Label] {
        &self.gens
    }

    fn name(&self) -> String {
        format!("norm:d={}", self.d)
    }

    fn eval(&self, f: &FreeAlg<MultiPoly>) -> Result<MultiPoly> {
        let (mut a, mut b) = (MultiPoly::zero(), MultiPoly::zero());
        for (w, c) in f.terms() {
            let (p, q) = self.image(w)?;
            a = &a + &c.scale(&p);
            b = &b + &c.scale(&q);
        }
        Ok(&a.pow(2) - &b.pow(2).scale(&self.d))
    }
}

/// `f ↦ ε(f)^n` for the ring map `ε : F_S → B` given on the generators.
pub struct PowerLaw<B> {
    n: u32,
    images: Vec<(Label, B)>,
    gens: Vec<Label>,
    name: String,
}

impl<B: TargetRing> PowerLaw<B> {
    pub fn new(n: u32, images: Vec<(Label, B)>, name: impl Into<String>) -> Self {
        let gens = images.iter().map(|(l, _)| l.clone()).collect();
        PowerLaw {
            n,
            images,
            gens,
            name: name.into(),
        }
    }

    fn image(&self, w: &Word) -> Result<B> {
        let mut acc = B::one();
        for l in w.letters() {
            let k = index_of(&self.gens, l)?;
            acc = acc * self.images[k].1.clone();
        }
        Ok(acc)
    }

    /// `ε_L(f)`, a polynomial in the scalars of `f`.
    fn ring_map(&self, f: &FreeAlg<MultiPoly>) -> Result<Poly<VarId, B>> {
        let mut out = Poly::zero();
        for (w, c) in f.terms() {
            let e = self.image(w)?;
            out = &out + &c.map_coeffs(|k| B::from_integer(k) * e.clone());
        }
        Ok(out)
    }
}

/// `ε_c(f)^n` with the `k`-th generator sent to `c + k` in `ℤ`.
pub fn scaled_power(n: u32, c: i64, gens: &[Label]) -> PowerLaw<BigInt> {
    let images = gens
        .iter()
        .enumerate()
        .map(|(k, l)| (l.clone(), BigInt::from(c + k as i64)))
        .collect();
    PowerLaw::new(n, images, format!("power:n={n},c={c}"))
}

impl<B: TargetRing> LawOracle<B> for PowerLaw<B> {
    fn degree(&self) -> u32 {
        self.n
    }

    fn gens(&self) -> &[Label] {
        &self.gens
    }

    fn name(&self) -> String {
        self.name.clone()
    }

    fn eval(&self, f: &FreeAlg<MultiPoly>) -> Result<Poly<VarId, B>> {
        Ok(self.ring_map(f)?.pow(self.n))
    }
}

/// `f ↦ ε_c(f)² + ε_c(f)`, declared of degree 2: a law that is not
/// homogeneous.
pub struct MixedDegreeLaw {
    inner: PowerLaw<BigInt>,
}

impl MixedDegreeLaw {
    pub fn new(c: i64, gens: &[Label]) -> Self {
        let mut inner = scaled_power(1, c, gens);
        inner.name = format!("mixed:c={c}");
        MixedDegreeLaw { inner }
    }
}

impl LawOracle<BigInt> for MixedDegreeLaw {
    fn degree(&self) -> u32 {
        2
    }

    fn gens(&self) -> &[Label] {
        &self.inner.gens
    }

    fn name(&self) -> String {
        self.inner.name.clone()
    }

    fn eval(&self, f: &FreeAlg<MultiPoly>) -> Result<MultiPoly> {
        let e = self.inner.ring_map(f)?;
        Ok(&e.pow(2) + &e)
    }
}

/// `f ↦ det(ρ(f))` for the representation `ρ : F_S → M_n(ℤ)` fixed on the
/// generators; generators without a matrix act as zero.
pub struct RepresentationDetLaw {
    n: usize,
    gens: Vec<Label>,
    matrices: BTreeMap<Label, Matrix<BigInt>>,
}

impl RepresentationDetLaw {
    pub fn new(n: usize, gens: &[Label], matrices: BTreeMap<Label, Matrix<BigInt>>) -> Result<Self> {
        let mut all = gens.to_vec();
        for (l, m) in &matrices {
            if m.rows() != n || m.cols() != n {
                return Err(Error::Invalid(format!("matrix for `{l}` is not {n}x{n}")));
            }
            if !all.contains(l) {
                all.push(l.clone());
            }
        }
        Ok(RepresentationDetLaw { n, gens: all, matrices })
    }

    fn image(&self, w: &Word) -> Result<Matrix<BigInt>> {
        let mut acc = Matrix::identity(self.n);
        for l in w.letters() {
            index_of(&self.gens, l)?;
            acc = match self.matrices.get(l) {
                Some(m) => &acc * m,
                None => Matrix::zeros(self.n, self.n),
            };
        }
        Ok(acc)
    }
}

impl LawOracle<BigInt> for RepresentationDetLaw {
    fn degree(&self) -> u32 {
        self.n as u32
    }

    fn gens(&self) -> &[Label] {
        &self.gens
    }

    fn name(&self) -> String {
        let mut s = format!("repdet:n={}", self.n);
        for (l, m) in &self.matrices {
            s.push_str(&format!(",{l}={m}"));
        }
        s
    }

    fn eval(&self, f: &FreeAlg<MultiPoly>) -> Result<MultiPoly> {
        let mut m = PolyMatrix::zeros(self.n, self.n);
        for (w, c) in f.terms() {
            let img = self.image(w)?.map(|k| MultiPoly::constant(k.clone()));
            m = &m + &img.scale(c);
        }
        Ok(m.det())
    }
}

/// An integer-valued law viewed as a law with values in `ℤ[x]`.
pub struct Widened<L>(pub L);

impl<L: LawOracle<BigInt>> LawOracle<MultiPoly> for Widened<L> {
    fn degree(&self) -> u32 {
        self.0.degree()
    }

    fn gens(&self) -> &[Label] {
        self.0.gens()
    }

    fn name(&self) -> String {
        self.0.name()
    }

    fn eval(&self, f: &FreeAlg<MultiPoly>) -> Result<Poly<VarId, MultiPoly>> {
        Ok(self.0.eval(f)?.map_coeffs(|c| MultiPoly::constant(c.clone())))
    }
}

/// A fixture law named by a spec string such as `det:n=2`, `norm:d=2`,
/// `power:n=2,c=3`, `repdet:n=2,x=[[0,2],[1,0]]`, `perm:n=2` or `mixed:c=3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fixture {
    Det {
        n: usize,
    },
    Norm {
        d: i64,
    },
    Power {
        n: u32,
        c: i64,
    },
    RepDet {
        n: usize,
        matrices: BTreeMap<Label, Matrix<BigInt>>,
    },
    Perm {
        n: usize,
    },
    Mixed {
        c: i64,
    },
}

impl Fixture {
    pub fn degree(&self) -> u32 {
        match self {
            Fixture::Det { n } | Fixture::Perm { n } | Fixture::RepDet { n, .. } => *n as u32,
            Fixture::Norm { .. } | Fixture::Mixed { .. } => 2,
            Fixture::Power { n, .. } => *n,
        }
    }

    /// The law on `F_S` for the generators `gens`.
    pub fn law(&self, gens: &[Label]) -> Result<Box<dyn LawOracle<MultiPoly>>> {
        Ok(match self {
            Fixture::Det { n } => Box::new(DeterminantLaw::new(GenericContext::new(*n, gens)?)),
            Fixture::Perm { n } => Box::new(PermanentLaw::new(GenericContext::new(*n, gens)?)),
            Fixture::Norm { d } => Box::new(Widened(NormLaw::new(*d, gens))),
            Fixture::Power { n, c } => Box::new(Widened(scaled_power(*n, *c, gens))),
            Fixture::Mixed { c } => Box::new(Widened(MixedDegreeLaw::new(*c, gens))),
            Fixture::RepDet { n, matrices } => {
                Box::new(Widened(RepresentationDetLaw::new(*n, gens, matrices.clone())?))
            }
        })
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fixture::Det { n } => write!(f, "det:n={n}"),
            Fixture::Perm { n } => write!(f, "perm:n={n}"),
            Fixture::Norm { d } => write!(f, "norm:d={d}"),
            Fixture::Power { n, c } => write!(f, "power:n={n},c={c}"),
            Fixture::Mixed { c } => write!(f, "mixed:c={c}"),
            Fixture::RepDet { n, matrices } => {
                write!(f, "repdet:n={n}")?;
                for (l, m) in matrices {
                    write!(f, ",{l}={m}")?;
                }
                Ok(())
            }
        }
    }
}

/// Splits `a=1,b=[[1,2],[3,4]]` at the top-level commas.
fn split_params(src: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, ch) in src.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&src[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(&src[start..]);
    out
}

fn parse_int_matrix(src: &str) -> std::result::Result<Matrix<BigInt>, String> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = s
        .strip_prefix("[[")
        .and_then(|t| t.strip_suffix("]]"))
        .ok_or_else(|| format!("`{src}` is not a matrix like [[0,2],[1,0]]"))?;
    let rows: Vec<Vec<BigInt>> = inner
        .split("],[")
        .map(|row| {
            row.split(',')
                .map(|x| x.parse::<BigInt>().map_err(|_| format!("`{x}` is not an integer")))
                .collect()
        })
        .collect::<std::result::Result<_, _>>()?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(format!("`{src}` is not square"));
    }
    Ok(Matrix::from_rows(rows))
}

impl FromStr for Fixture {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let fail = |reason: String| Error::Fixture {
            spec: spec.to_string(),
            reason,
        };
        let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let mut params: BTreeMap<String, String> = BTreeMap::new();
        for p in split_params(rest).into_iter().filter(|p| !p.trim().is_empty()) {
            let (k, v) = p
                .split_once('=')
                .ok_or_else(|| fail(format!("parameter `{p}` is not key=value")))?;
            if params.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
                return Err(fail(format!("parameter `{k}` given twice")));
            }
        }
        let int = |params: &mut BTreeMap<String, String>, key: &str, default: Option<i64>| -> Result<i64> {
            match params.remove(key) {
                Some(v) => v
                    .parse()
                    .map_err(|_| fail(format!("`{key}` must be an integer, got `{v}`"))),
                None => default.ok_or_else(|| fail(format!("missing parameter `{key}`"))),
            }
        };
        let size = |v: i64| -> Result<usize> {
            if (1..=8).contains(&v) {
                Ok(v as usize)
            } else {
                Err(fail(format!("n must be between 1 and 8, got {v}")))
            }
        };
        let fixture = match kind.trim() {
            "det" => Fixture::Det {
                n: size(int(&mut params, "n", Some(2))?)?,
            },
            "perm" => Fixture::Perm {
                n: size(int(&mut params, "n", Some(2))?)?,
            },
            "norm" => Fixture::Norm {
                d: int(&mut params, "d", None)?,
            },
            "power" => Fixture::Power {
                n: size(int(&mut params, "n", Some(2))?)? as u32,
                c: int(&mut params, "c", None)?,
            },
            "mixed" => Fixture::Mixed {
                c: int(&mut params, "c", Some(1))?,
            },
            "repdet" => {
                let n = params.remove("n").map(|v| {
                    v.parse::<i64>()
                        .map_err(|_| fail(format!("`n` must be an integer, got `{v}`")))
                });
                let mut matrices = BTreeMap::new();
                for (k, v) in std::mem::take(&mut params) {
                    let m = parse_int_matrix(&v).map_err(&fail)?;
                    matrices.insert(Label::new(&k), m);
                }
                let n = match n {
                    Some(n) => size(n?)?,
                    None => matrices
                        .values()
                        .next()
                        .map(Matrix::rows)
                        .ok_or_else(|| fail("give `n` or at least one matrix".into()))?,
                };
                if let Some((l, _)) = matrices.iter().find(|(_, m)| m.rows() != n) {
                    return Err(fail(format!("matrix for `{l}` is not {n}x{n}")));
                }
                Fixture::RepDet { n, matrices }
            }
            other => {
                return Err(fail(format!(
                    "unknown kind `{other}` (expected det, norm, power, repdet, perm or mixed)"
                )))
            }
        };
        if let Some(k) = params.keys().next() {
            return Err(fail(format!("unexpected parameter `{k}`")));
        }
        Ok(fixture)
    }
}
