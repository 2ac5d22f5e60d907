use num_bigint::BigInt;
use num_traits::One;
use polylaw::divpow::{basis_below, contingency_tables, normalize, rho, tau_monomials, TauCache};
use polylaw::{labels, DPElem, DPMonomial, FreeElem, MultiDegree};
use proptest::prelude::*;

fn basis(n: u32) -> Vec<DPMonomial> {
    let gens = labels(&["x", "y"]);
    basis_below(n, &gens, &MultiDegree::from_vec(&gens, &[2, 1]))
}

fn monomial(n: u32) -> impl Strategy<Value = DPMonomial> {
    prop::sample::select(basis(n))
}

/// Tables counted by filling cells one at a time.
fn brute_count(alpha: &[u32], beta: &[u32]) -> usize {
    fn go(alpha: &mut [u32], beta: &mut [u32], cell: usize) -> usize {
        let cols = beta.len();
        if cell == alpha.len() * cols {
            return usize::from(alpha.iter().chain(beta.iter()).all(|&r| r == 0));
        }
        let (i, j) = (cell / cols, cell % cols);
        let mut total = 0;
        for v in 0..=alpha[i].min(beta[j]) {
            alpha[i] -= v;
            beta[j] -= v;
            total += go(alpha, beta, cell + 1);
            alpha[i] += v;
            beta[j] += v;
        }
        total
    }
    go(&mut alpha.to_vec(), &mut beta.to_vec(), 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tables_have_the_requested_margins(alpha in prop::collection::vec(0u32..3, 1..4), beta in prop::collection::vec(0u32..3, 1..4)) {
        let tables = contingency_tables(&alpha, &beta);
        if alpha.iter().sum::<u32>() != beta.iter().sum::<u32>() {
            prop_assert!(tables.is_empty());
        } else {
            prop_assert_eq!(tables.len(), brute_count(&alpha, &beta));
            for t in &tables {
                prop_assert_eq!(t.row_sums(), alpha.clone());
                prop_assert_eq!(t.col_sums(), beta.clone());
            }
        }
    }

    #[test]
    fn product_is_associative_and_unital(u in monomial(2), v in monomial(2), w in monomial(2)) {
        let mut cache = TauCache::default();
        let (u, v, w) = (DPElem::from(u), DPElem::from(v), DPElem::from(w));
        let uv = cache.mul(&u, &v).unwrap();
        let vw = cache.mul(&v, &w).unwrap();
        let left = cache.mul(&uv, &w).unwrap();
        let right = cache.mul(&u, &vw).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(cache.mul(&u, &DPElem::unit(2)).unwrap(), u.clone());
        prop_assert_eq!(cache.mul(&DPElem::unit(2), &u).unwrap(), u);
    }

    #[test]
    fn product_is_graded(u in monomial(3), v in monomial(3)) {
        let prod = tau_monomials(&u, &v).unwrap();
        let expect = &u.multidegree() + &v.multidegree();
        for (m, _) in prod.terms() {
            prop_assert_eq!(m.degree(), 3);
            prop_assert_eq!(m.multidegree(), expect.clone());
        }
    }

    #[test]
    fn printing_round_trips(u in monomial(3), k in -3i64..=3) {
        let e = DPElem::from(u).scale(&BigInt::from(k));
        prop_assert_eq!(DPElem::parse(&e.to_string(), 3).unwrap(), e);
    }

    #[test]
    fn lowering_removes_one_unit(u in monomial(3)) {
        let low = rho(&DPElem::from(u.clone())).unwrap();
        if u.padding() == 0 {
            prop_assert!(low.is_zero());
        } else {
            let m = low.as_monomial().unwrap();
            prop_assert_eq!(m.padding() + 1, u.padding());
            prop_assert_eq!(m.multidegree(), u.multidegree());
        }
    }
}

#[test]
fn power_of_a_sum_is_multinomial() {
    let f: FreeElem = "x + y + x*y".parse().unwrap();
    let got = normalize(&[(f, 3)], 3).unwrap();
    // One monomial per exponent triple summing to 3, each with coefficient one.
    assert_eq!(got.len(), 10);
    assert!(got.terms().all(|(_, c)| c.is_one()));
}
