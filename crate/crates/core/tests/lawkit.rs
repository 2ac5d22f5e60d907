use num_bigint::BigInt;
use polylaw::lawkit::{factor_law, verify_factorization, Fixture, QuadInt};
use polylaw::{labels, FreeElem, GenericContext, Word};
use proptest::prelude::*;

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(vec!["x", "y"]), 0..3).prop_map(|v| Word::from_names(&v))
}

fn elem() -> impl Strategy<Value = FreeElem> {
    prop::collection::vec((-2i64..=2, word()), 1..3)
        .prop_map(|terms| FreeElem::from_terms(terms.into_iter().map(|(c, w)| (w, BigInt::from(c)))))
}

fn fixture(spec: &str) -> Fixture {
    spec.parse().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quadratic_norm_is_multiplicative(a in -9i64..9, b in -9i64..9, c in -9i64..9, d in -9i64..9) {
        let (u, v) = (QuadInt::<5>::new(a, b), QuadInt::<5>::new(c, d));
        prop_assert_eq!((u.clone() * v.clone()).norm(), u.norm() * v.norm());
        prop_assert_eq!(u.clone() * u.conjugate(), QuadInt::new(u.norm(), 0));
    }

    #[test]
    fn fixture_laws_are_multiplicative(f in elem(), g in elem(), which in 0usize..4) {
        let spec = ["det:n=2", "norm:d=2", "power:n=2,c=3", "repdet:n=2,x=[[0,2],[1,0]]"][which];
        let law = fixture(spec).law(&labels(&["x", "y"])).unwrap();
        prop_assert_eq!(law.value(&(&f * &g)).unwrap(), law.value(&f).unwrap() * law.value(&g).unwrap());
    }

    #[test]
    fn factorization_holds_on_random_elements(f in elem()) {
        let gens = labels(&["x", "y"]);
        let ctx = GenericContext::new(2, &gens).unwrap();
        let law = fixture("norm:d=2").law(&gens).unwrap();
        let mut phi = factor_law(law.as_ref(), &ctx, 2).unwrap();
        let report = verify_factorization(law.as_ref(), &mut phi, &ctx, &[f]).unwrap();
        prop_assert!(report.all_pass(), "{:?}", report);
    }
}
