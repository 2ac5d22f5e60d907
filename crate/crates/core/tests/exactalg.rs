use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use polylaw::exactalg::{int_nullspace, int_rank, rank_nullspace, Matrix, Monomial};
use polylaw::{MultiPoly, VarId};
use proptest::prelude::*;

fn var(k: u32) -> VarId {
    VarId::formal("a", k)
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-4i64..=4, 0u32..3, 0u32..3, 0u32..3), 0..5).prop_map(|terms| {
        let mut p = MultiPoly::zero();
        for (c, e0, e1, e2) in terms {
            let m = Monomial::from_powers(
                [(var(0), e0), (var(1), e1), (var(2), e2)]
                    .into_iter()
                    .filter(|(_, e)| *e > 0),
            );
            p.add_term(m, BigInt::from(c));
        }
        p
    })
}

fn int_matrix(n: usize) -> impl Strategy<Value = Matrix<BigInt>> {
    prop::collection::vec(-4i64..=4, n * n).prop_map(move |v| Matrix::from_fn(n, n, |i, j| BigInt::from(v[i * n + j])))
}

fn leibniz(m: &Matrix<BigInt>) -> BigInt {
    fn go(m: &Matrix<BigInt>, col: usize, used: &mut Vec<bool>, perm: &mut Vec<usize>, acc: &mut BigInt) {
        let n = m.rows();
        if col == n {
            let inversions = (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .filter(|&(a, b)| perm[a] > perm[b])
                .count();
            let mut t: BigInt = (0..n).map(|j| m[(perm[j], j)].clone()).product();
            if inversions % 2 == 1 {
                t = -t;
            }
            *acc += t;
            return;
        }
        for r in 0..n {
            if !used[r] {
                used[r] = true;
                perm.push(r);
                go(m, col + 1, used, perm, acc);
                perm.pop();
                used[r] = false;
            }
        }
    }
    let mut acc = BigInt::zero();
    go(m, 0, &mut vec![false; m.rows()], &mut Vec::new(), &mut acc);
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &MultiPoly::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn power_is_repeated_product(a in poly(), e in 0u32..4) {
        let mut expect = MultiPoly::one();
        for _ in 0..e {
            expect = &expect * &a;
        }
        prop_assert_eq!(a.pow(e), expect);
    }

    #[test]
    fn coefficients_reassemble(p in poly()) {
        let mut back = MultiPoly::zero();
        for k in 0..=6u32 {
            let spec = BTreeMap::from([(var(0), k)]);
            let part = p.coefficient_of(&spec);
            prop_assert!(part.terms().all(|(m, _)| m.exponent(&var(0)) == 0));
            back = &back + &(&part * &MultiPoly::var(var(0)).pow(k));
        }
        prop_assert_eq!(back, p);
    }

    #[test]
    fn determinant_matches_leibniz(m in int_matrix(3)) {
        prop_assert_eq!(m.det(), leibniz(&m));
        prop_assert_eq!(m.transpose().det(), m.det());
        prop_assert_eq!(m.principal_minor_sum(3), m.det());
        prop_assert_eq!(m.principal_minor_sum(1), (0..3).map(|i| m[(i, i)].clone()).sum::<BigInt>());
    }

    #[test]
    fn determinant_is_multiplicative(a in int_matrix(3), b in int_matrix(3)) {
        prop_assert_eq!((&a * &b).det(), a.det() * b.det());
    }

    #[test]
    fn determinant_alternates_and_permanent_does_not(m in int_matrix(3), r in 0usize..3, s in 0usize..3) {
        prop_assume!(r != s);
        let mut swapped = m.clone();
        swapped.swap_rows(r, s);
        prop_assert_eq!(swapped.det(), -m.det());
        prop_assert_eq!(swapped.permanent(), m.permanent());
    }

    #[test]
    fn rank_ignores_row_order(v in prop::collection::vec(-3i64..=3, 12), r in 0usize..3, s in 0usize..3) {
        let m = Matrix::from_fn(3, 4, |i, j| BigInt::from(v[i * 4 + j]));
        let mut p = m.clone();
        p.swap_rows(r, s);
        prop_assert_eq!(int_rank(&m), int_rank(&p));
    }

    #[test]
    fn nullspace_is_a_complement(v in prop::collection::vec(-3i64..=3, 12)) {
        let m = Matrix::from_fn(3, 4, |i, j| BigInt::from(v[i * 4 + j]));
        let q = m.map(|c| BigRational::from_integer(c.clone()));
        let (rank, basis) = rank_nullspace(&q);
        prop_assert_eq!(rank, int_rank(&m));
        prop_assert_eq!(rank + basis.len(), 4);
        for kernel in int_nullspace(&m) {
            for i in 0..3 {
                let dot: BigInt = (0..4).map(|j| &m[(i, j)] * &kernel[j]).sum();
                prop_assert!(dot.is_zero());
            }
        }
    }
}
