use num_bigint::BigInt;
use polylaw::divpow::{basis_below, normalize, TauCache};
use polylaw::exactalg::Matrix;
use polylaw::genmat::{
    char_coeff, conjugation_action, det_law, embed_generic, pi_image_by_extraction, GenericEvaluator,
};
use polylaw::{labels, FreeElem, GenericContext, MultiDegree, MultiPoly, Word};
use proptest::prelude::*;

fn ctx(n: usize) -> GenericContext {
    GenericContext::new(n, &labels(&["x", "y"])).unwrap()
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(vec!["x", "y"]), 0..3).prop_map(|v| Word::from_names(&v))
}

fn elem() -> impl Strategy<Value = FreeElem> {
    prop::collection::vec((-2i64..=2, word()), 1..3)
        .prop_map(|terms| FreeElem::from_terms(terms.into_iter().map(|(c, w)| (w, BigInt::from(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn determinant_law_is_multiplicative(f in elem(), g in elem()) {
        let c = ctx(2);
        prop_assert_eq!(det_law(&(&f * &g), &c).unwrap(), &det_law(&f, &c).unwrap() * &det_law(&g, &c).unwrap());
    }

    #[test]
    fn padded_powers_give_characteristic_coefficients(w in word(), i in 0u32..=3) {
        let c = ctx(3);
        let u = normalize(&[(FreeElem::one(), 3 - i as i64), (FreeElem::from_terms([(w.clone(), BigInt::from(1))]), i as i64)], 3).unwrap();
        let mut ev = GenericEvaluator::new(&c);
        let expect = char_coeff(&embed_generic(&FreeElem::from_terms([(w, BigInt::from(1))]), &c).unwrap(), i as usize);
        prop_assert_eq!(ev.pi_elem(&u).unwrap(), expect);
    }

    #[test]
    fn image_of_power_is_determinant(f in elem()) {
        let c = ctx(2);
        let mut ev = GenericEvaluator::new(&c);
        prop_assert_eq!(ev.pi_elem(&normalize(&[(f.clone(), 2)], 2).unwrap()).unwrap(), det_law(&f, &c).unwrap());
    }

    #[test]
    fn images_are_conjugation_invariant(f in elem(), a in -2i64..=2) {
        let c = ctx(2);
        let g = Matrix::from_rows(vec![vec![BigInt::from(1), BigInt::from(a)], vec![BigInt::from(0), BigInt::from(1)]]);
        let p = char_coeff(&embed_generic(&f, &c).unwrap(), 1);
        prop_assert_eq!(conjugation_action(&p, &g, &c).unwrap(), p);
    }
}

#[test]
fn image_map_is_multiplicative_on_small_basis() {
    let c = ctx(2);
    let gens = labels(&["x", "y"]);
    let basis = basis_below(2, &gens, &MultiDegree::from_vec(&gens, &[1, 1]));
    let mut cache = TauCache::default();
    let mut ev = GenericEvaluator::new(&c);
    for u in &basis {
        for v in &basis {
            let prod = cache.monomials(u, v).unwrap();
            let lhs = ev.pi_elem(&prod).unwrap();
            let rhs: MultiPoly = &ev.pi(u).unwrap() * &ev.pi(v).unwrap();
            assert_eq!(lhs, rhs, "{u} * {v}");
        }
    }
}

#[test]
fn column_assignment_agrees_with_coefficient_extraction() {
    let c = ctx(3);
    let gens = labels(&["x", "y"]);
    let mut ev = GenericEvaluator::new(&c);
    for u in basis_below(3, &gens, &MultiDegree::from_vec(&gens, &[2, 1])) {
        assert_eq!(ev.pi(&u).unwrap(), pi_image_by_extraction(&u, &c).unwrap(), "{u}");
    }
}
