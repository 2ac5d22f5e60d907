use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactalg::poly::Poly;
use crate::label::Label;
use crate::text::{parse_full, ExprValue, Lexer, Tok};

/// Indeterminate of the commutative rings in play.
///
/// `MatrixEntry` is the entry `x_{ij}^s` of the generic matrix of generator
/// `s`; `Formal` covers auxiliary scalars such as the `λ_i` used to read off
/// law coefficients. The derived order is `(kind, s, i, j)` then
/// `(tag, index)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarId {
    MatrixEntry { s: Label, i: u16, j: u16 },
    Formal { tag: Arc<str>, index: u32 },
}

impl VarId {
    pub fn entry(s: &Label, i: usize, j: usize) -> Self {
        VarId::MatrixEntry {
            s: s.clone(),
            i: i as u16,
            j: j as u16,
        }
    }

    /// Formal variable rendered as `{tag}{index}`; `tag` must be alphabetic.
    pub fn formal(tag: &str, index: u32) -> Self {
        debug_assert!(!tag.is_empty() && tag.chars().all(|c| c.is_ascii_alphabetic()));
        VarId::Formal {
            tag: Arc::from(tag),
            index,
        }
    }

    pub fn is_formal(&self) -> bool {
        matches!(self, VarId::Formal { .. })
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::MatrixEntry { s, i, j } => write!(f, "x[{i},{j},{s}]"),
            VarId::Formal { tag, index } => write!(f, "{tag}{index}"),
        }
    }
}

impl fmt::Debug for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Polynomials over the integers in [`VarId`] indeterminates; houses `A_S(n)`
/// and the scalar rings used for coefficient extraction.
pub type MultiPoly = Poly<VarId, BigInt>;

impl ExprValue for MultiPoly {
    fn from_int(n: BigInt) -> Self {
        MultiPoly::constant(n)
    }
}

/// Parses one [`VarId`] at the cursor: `x[i,j,s]` or an identifier ending in
/// digits such as `l0`.
pub(crate) fn parse_var(lx: &mut Lexer) -> Result<VarId> {
    let pos = lx.position();
    let name = lx.expect_ident()?;
    if name == "x" && lx.peek() == Some(&Tok::Sym('[')) {
        lx.next();
        let i = lx.expect_small()?;
        lx.expect_sym(',')?;
        let j = lx.expect_small()?;
        lx.expect_sym(',')?;
        let s = lx.expect_ident()?;
        lx.expect_sym(']')?;
        if i == 0 || j == 0 || i > u16::MAX as u32 || j > u16::MAX as u32 {
            return Err(Error::Parse {
                pos,
                msg: "matrix indices start at 1".into(),
            });
        }
        return Ok(VarId::MatrixEntry {
            s: Label::new(&s),
            i: i as u16,
            j: j as u16,
        });
    }
    let split = name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (tag, digits) = name.split_at(split);
    if tag.is_empty() || digits.is_empty() || !tag.chars().all(|c| c.is_ascii_alphabetic()) {
        return Err(Error::Parse {
            pos,
            msg: format!("`{name}` is not a variable (expected x[i,j,s] or a name like l0)"),
        });
    }
    let index = digits.parse::<u32>().map_err(|_| Error::Parse {
        pos,
        msg: "variable index out of range".into(),
    })?;
    Ok(VarId::formal(tag, index))
}

impl FromStr for MultiPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_full(s, |lx| parse_var(lx).map(MultiPoly::var))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_kind_then_label_then_indices() {
        let s = Label::new("s");
        let t = Label::new("t");
        assert!(VarId::entry(&s, 2, 2) < VarId::entry(&t, 1, 1));
        assert!(VarId::entry(&s, 1, 2) < VarId::entry(&s, 2, 1));
        assert!(VarId::entry(&t, 3, 3) < VarId::formal("a", 0));
        assert!(VarId::formal("l", 3) < VarId::formal("m", 0));
    }

    #[test]
    fn renders_the_canonical_grammar() {
        let s = Label::new("s");
        let x = MultiPoly::var(VarId::entry(&s, 1, 1));
        let l0 = MultiPoly::var(VarId::formal("l", 0));
        let l1 = MultiPoly::var(VarId::formal("l", 1));
        let p = &x.pow(2) + &(&l0 * &l1).scale(&BigInt::from(2));
        assert_eq!(p.to_string(), "x[1,1,s]^2 + 2*l0*l1");
    }

    #[test]
    fn parses_what_it_prints() {
        let src = "x[1,1,s]^2 + 2*l0*l1 - 7";
        let p: MultiPoly = src.parse().unwrap();
        assert_eq!(p.to_string(), src);
        let q: MultiPoly = "(x[1,2,x] - l3)*(x[1,2,x] + l3)".parse().unwrap();
        assert_eq!(q.to_string(), "x[1,2,x]^2 - l3^2");
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = "x[1,1,s] + y".parse::<MultiPoly>().unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 11, .. }), "{err:?}");
        let err = "x[0,1,s]".parse::<MultiPoly>().unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 0, .. }));
        assert!("2 +".parse::<MultiPoly>().is_err());
    }
}
