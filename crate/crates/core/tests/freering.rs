use num_bigint::BigInt;
use polylaw::freering::{enumerate_words, free_mul, words_with_multidegree};
use polylaw::{labels, FreeElem, MultiDegree, Word};
use proptest::prelude::*;

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(vec!["x", "y"]), 0..4).prop_map(|v| Word::from_names(&v))
}

fn elem() -> impl Strategy<Value = FreeElem> {
    prop::collection::vec((-3i64..=3, word()), 0..4)
        .prop_map(|terms| FreeElem::from_terms(terms.into_iter().map(|(c, w)| (w, BigInt::from(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative_and_unital(a in elem(), b in elem(), c in elem()) {
        prop_assert_eq!(free_mul(&free_mul(&a, &b), &c), free_mul(&a, &free_mul(&b, &c)));
        prop_assert_eq!(free_mul(&a, &FreeElem::one()), a.clone());
        prop_assert_eq!(free_mul(&FreeElem::one(), &a), a.clone());
    }

    #[test]
    fn multiplication_distributes(a in elem(), b in elem(), c in elem()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn concatenation_adds_multidegrees(u in word(), v in word()) {
        let uv = u.concat(&v);
        prop_assert_eq!(uv.len(), u.len() + v.len());
        prop_assert_eq!(uv.multidegree(), &u.multidegree() + &v.multidegree());
    }

    #[test]
    fn elements_survive_printing(a in elem()) {
        let back: FreeElem = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn rotation_class_representative(u in word(), k in 0usize..4) {
        let letters = u.letters();
        let k = if letters.is_empty() { 0 } else { k % letters.len() };
        let rotated = Word::from_letters([&letters[k..], &letters[..k]].concat());
        prop_assert_eq!(rotated.canonical_rotation(), u.canonical_rotation());
    }
}

#[test]
fn enumeration_is_length_lex_and_complete() {
    let gens = labels(&["x", "y", "z"]);
    let words = enumerate_words(&gens, 4);
    assert_eq!(words.len(), 1 + 3 + 9 + 27 + 81);
    assert!(words.windows(2).all(|p| p[0] < p[1]));
    assert_eq!(words[0], Word::empty());
}

#[test]
fn words_of_fixed_multidegree_are_the_shuffles() {
    let gens = labels(&["x", "y"]);
    let d = MultiDegree::from_vec(&gens, &[2, 3]);
    let words = words_with_multidegree(&gens, &d);
    assert_eq!(words.len(), 10);
    assert!(words.iter().all(|w| w.multidegree() == d));
}
