//! Exact computer algebra for homogeneous multiplicative polynomial laws.
//!
//! The crate builds the free ring `F_S`, its divided-power algebras
//! `Γ_n(F_S)`, generic matrices and their characteristic coefficients, and
//! uses them to factor a degree-`n` multiplicative law `p : F_S → B` as a
//! ring homomorphism applied to `det ∘ j_n`.
//!
//! All arithmetic is exact. The polynomial, matrix and linear-algebra types are
//! generic over their scalar ring; the aliases below fix the concrete choices
//! used throughout.

pub mod divpow;
pub mod error;
pub mod exactalg;
pub mod freering;
pub mod genmat;
pub mod label;
pub mod lawkit;
pub mod sampling;
mod text;

pub use error::{Error, Result};
pub use label::{labels, Label};

/// Arbitrary-precision integers.
pub type Integer = num_bigint::BigInt;
/// Arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;

pub use divpow::{DPElem, DPMonomial};
pub use exactalg::{MultiPoly, PolyMatrix, QMatrix, VarId};
pub use freering::{FreeElem, MultiDegree, Word};
pub use genmat::{EExpression, ESymbol, GenericContext};
