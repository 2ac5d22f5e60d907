use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::TargetRing;

/// `a + b√D` in `ℤ[√D] = ℤ[t]/(t² − D)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadInt<const D: i64> {
    pub a: BigInt,
    pub b: BigInt,
}

impl<const D: i64> QuadInt<D> {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadInt {
            a: a.into(),
            b: b.into(),
        }
    }

    /// `√D`.
    pub fn root() -> Self {
        Self::new(0, 1)
    }

    /// `a² − D b²`.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - BigInt::from(D) * &self.b * &self.b
    }

    pub fn conjugate(&self) -> Self {
        QuadInt {
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }
}

impl<const D: i64> Zero for QuadInt<D> {
    fn zero() -> Self {
        Self::new(0, 0)
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<const D: i64> One for QuadInt<D> {
    fn one() -> Self {
        Self::new(1, 0)
    }
}

impl<const D: i64> Add for QuadInt<D> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        QuadInt {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
        }
    }
}

impl<const D: i64> Sub for QuadInt<D> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        QuadInt {
            a: self.a - rhs.a,
            b: self.b - rhs.b,
        }
    }
}

impl<const D: i64> Mul for QuadInt<D> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        QuadInt {
            a: &self.a * &rhs.a + BigInt::from(D) * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl<const D: i64> Neg for QuadInt<D> {
    type Output = Self;
    fn neg(self) -> Self {
        QuadInt { a: -self.a, b: -self.b }
    }
}

impl<const D: i64> TargetRing for QuadInt<D> {
    fn from_integer(n: &BigInt) -> Self {
        QuadInt {
            a: n.clone(),
            b: BigInt::zero(),
        }
    }
}

impl<const D: i64> fmt::Display for QuadInt<D> {
    /// `3 + 2*sqrt(2)`, `-sqrt(5)`, `4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = |b: &BigInt| -> String {
            let mag = b.abs();
            if mag.is_one() {
                format!("sqrt({D})")
            } else {
                format!("{mag}*sqrt({D})")
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}{}", if self.b.is_negative() { "-" } else { "" }, root(&self.b)),
            (false, false) => write!(
                f,
                "{} {} {}",
                self.a,
                if self.b.is_negative() { "-" } else { "+" },
                root(&self.b)
            ),
        }
    }
}
