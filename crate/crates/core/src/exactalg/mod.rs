//! Exact arithmetic substrate: big integers and rationals, sparse multivariate
//! polynomials, matrices over them and exact linear algebra over ℚ.

pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod var;

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::error::{Error, Result};

pub use linalg::{bareiss_echelon, int_nullspace, int_rank, rank_nullspace, Field};
pub use matrix::Matrix;
pub use poly::{Coeff, Monomial, Poly};
pub use var::{MultiPoly, VarId};

/// Square matrix of polynomials, e.g. an element of `B_S(n) = M_n(A_S(n))`.
pub type PolyMatrix = Matrix<MultiPoly>;

/// Rational matrix used for desk-scale rank checks.
pub type QMatrix = Matrix<BigRational>;

/// Determinant of a polynomial matrix (division-free cofactor expansion).
pub fn poly_det(m: &PolyMatrix) -> MultiPoly {
    m.det()
}

/// Coefficient of `∏ v^spec[v]` in `p`, as a polynomial in the remaining
/// variables. `spec` may name formal variables only.
pub fn coeff_extract(p: &MultiPoly, spec: &BTreeMap<VarId, u32>) -> Result<MultiPoly> {
    if let Some(bad) = spec.keys().find(|v| !v.is_formal()) {
        return Err(Error::NonFormalVariable(bad.to_string()));
    }
    Ok(p.coefficient_of(spec))
}

/// Substitutes `sigma[v]` for each mapped variable; unmapped variables are
/// left unchanged.
pub fn substitute(p: &MultiPoly, sigma: &BTreeMap<VarId, MultiPoly>) -> MultiPoly {
    p.substitute(|v| sigma.get(v).cloned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::Label;
    use num_bigint::BigInt;

    fn x(i: usize, j: usize) -> MultiPoly {
        MultiPoly::var(VarId::entry(&Label::new("x"), i, j))
    }

    fn generic2() -> PolyMatrix {
        Matrix::from_fn(2, 2, |i, j| x(i + 1, j + 1))
    }

    fn formal(tag: &str, i: u32) -> MultiPoly {
        MultiPoly::var(VarId::formal(tag, i))
    }

    #[test]
    fn square_of_trace_expands() {
        let t = &x(1, 1) + &x(2, 2);
        let expected: MultiPoly = "x[1,1,x]^2 + 2*x[1,1,x]*x[2,2,x] + x[2,2,x]^2".parse().unwrap();
        assert_eq!(t.pow(2), expected);
    }

    #[test]
    fn two_by_two_leibniz() {
        let vars: Vec<MultiPoly> = (0..4).map(|k| formal("a", k)).collect();
        let m = Matrix::from_rows(vec![
            vec![vars[0].clone(), vars[1].clone()],
            vec![vars[2].clone(), vars[3].clone()],
        ]);
        let expected = &(&vars[0] * &vars[3]) - &(&vars[1] * &vars[2]);
        assert_eq!(poly_det(&m), expected);
        for n in 0..5 {
            assert_eq!(poly_det(&PolyMatrix::identity(n)), MultiPoly::one());
        }
    }

    #[test]
    fn characteristic_determinant_of_generic_matrix() {
        let t = formal("t", 0);
        let m = &PolyMatrix::identity(2).scale(&t) + &generic2();
        let expected =
            &(&t.pow(2) + &(&(&x(1, 1) + &x(2, 2)) * &t)) + &(&(&x(1, 1) * &x(2, 2)) - &(&x(1, 2) * &x(2, 1)));
        assert_eq!(poly_det(&m), expected);
    }

    #[test]
    fn coefficient_extraction_examples() {
        let p = &x(1, 1) + &MultiPoly::from_int(3);
        let lam = VarId::formal("l", 0);
        assert_eq!(coeff_extract(&p, &BTreeMap::from([(lam.clone(), 0)])).unwrap(), p);

        let (l0, l1) = (VarId::formal("l", 0), VarId::formal("l", 1));
        let sq = (&formal("l", 0) + &formal("l", 1)).pow(2);
        let spec = BTreeMap::from([(l0, 1), (l1, 1)]);
        assert_eq!(coeff_extract(&sq, &spec).unwrap(), MultiPoly::from_int(2));

        let (mu, la) = (formal("m", 0), formal("l", 0));
        let m = &PolyMatrix::identity(2).scale(&mu) + &generic2().scale(&la);
        let spec = BTreeMap::from([(VarId::formal("m", 0), 1), (VarId::formal("l", 0), 1)]);
        assert_eq!(coeff_extract(&poly_det(&m), &spec).unwrap(), &x(1, 1) + &x(2, 2));
    }

    #[test]
    fn extraction_rejects_matrix_entries() {
        let spec = BTreeMap::from([(VarId::entry(&Label::new("x"), 1, 1), 1)]);
        assert!(matches!(
            coeff_extract(&x(1, 1), &spec),
            Err(Error::NonFormalVariable(_))
        ));
    }

    #[test]
    fn substitution_examples() {
        let (a, b) = (formal("a", 0), formal("b", 0));
        let p = &(&a * &b) + &b;
        assert_eq!(substitute(&p, &BTreeMap::new()), p);
        let sigma = BTreeMap::from([(VarId::formal("a", 0), MultiPoly::zero())]);
        assert_eq!(substitute(&p, &sigma), b);
    }

    #[test]
    fn missing_monomial_extracts_to_zero() {
        let spec = BTreeMap::from([(VarId::formal("l", 7), 2)]);
        let p = MultiPoly::from_int(BigInt::from(5));
        assert!(coeff_extract(&p, &spec).unwrap().is_zero());
    }
}
