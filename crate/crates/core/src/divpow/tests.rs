use super::*;
use crate::label::labels;

fn md(pairs: &[(&str, u32)]) -> MultiDegree {
    let mut d = MultiDegree::zero();
    for (s, k) in pairs {
        d.bump(&Label::new(s), *k);
    }
    d
}

fn el(src: &str, n: u32) -> DPElem {
    DPElem::parse(src, n).unwrap()
}

fn fe(src: &str) -> FreeElem {
    src.parse().unwrap()
}

#[test]
fn merging_repeated_words() {
    assert_eq!(el("d(x,1)*d(x,1)", 2), el("d(x,2)", 2).scale(&BigInt::from(2)));
}

#[test]
fn scalars_come_out_as_powers() {
    let got = normalize(&[(fe("2*x"), 2)], 2).unwrap();
    assert_eq!(got, el("d(x,2)", 2).scale(&BigInt::from(4)));
}

#[test]
fn negative_exponent_vanishes() {
    assert!(normalize(&[(fe("x"), -1), (fe("1"), 3)], 2).unwrap().is_zero());
    assert!(el("d(x,-1)", 2).is_zero());
}

#[test]
fn sums_expand() {
    let got = normalize(&[(fe("x + y"), 2)], 2).unwrap();
    assert_eq!(got, el("d(x,2)", 2).add(&el("d(x,1)*d(y,1)", 2)).add(&el("d(y,2)", 2)));
}

#[test]
fn degree_must_match() {
    assert!(matches!(
        normalize(&[(fe("x"), 3)], 2),
        Err(Error::DegreeMismatch { expected: 2, found: 3 })
    ));
}

#[test]
fn display_round_trip() {
    let e = el("d(x*x,1)", 2);
    assert_eq!(e.to_string(), "d(1,1)*d(x*x,1)");
    assert_eq!(DPElem::parse(&e.to_string(), 2).unwrap(), e);
    let m: DPMonomial = "d(1,1)*d(x,2)".parse().unwrap();
    assert_eq!(m.degree(), 3);
    assert_eq!(DPMonomial::unit(0).to_string(), "d(1,0)");
}

#[test]
fn tau_single_table() {
    let a = el("d(x,2)", 2);
    assert_eq!(tau_mul(&a, &a).unwrap(), el("d(x*x,2)", 2));
}

#[test]
fn tau_two_tables_merge() {
    let a = el("d(x,1)", 2);
    let want = el("d(x*x,1)", 2).add(&el("d(x,2)", 2).scale(&BigInt::from(2)));
    assert_eq!(tau_mul(&a, &a).unwrap(), want);
}

#[test]
fn tau_unit() {
    for n in 0..4 {
        let u = normalize(&[(fe("x*y + 2*y"), n as i64)], n).unwrap();
        assert_eq!(tau_mul(&DPElem::unit(n), &u).unwrap(), u);
        assert_eq!(tau_mul(&u, &DPElem::unit(n)).unwrap(), u);
    }
}

#[test]
fn tau_noncommutative_over_two_generators() {
    // The product inherits the noncommutativity of the free ring.
    let a = el("d(x,1)", 2);
    let b = el("d(y,1)", 2);
    let ab = tau_mul(&a, &b).unwrap();
    let ba = tau_mul(&b, &a).unwrap();
    assert_ne!(ab, ba);
    assert_eq!(ab.sub(&ba), el("d(x*y,1)", 2).sub(&el("d(y*x,1)", 2)));
}

#[test]
fn gamma_coefficient_examples() {
    let els = [fe("1"), fe("x")];
    assert_eq!(gamma_coeff(&els, &[1, 1], 2).unwrap(), el("d(x,1)", 2));
    assert!(gamma_coeff(&els, &[2, 1], 2).unwrap().is_zero());
    assert!(gamma_coeff(&els, &[0, 1], 2).unwrap().is_zero());
    assert_eq!(gamma_coeff(&[fe("x*y")], &[3], 3).unwrap(), el("d(x*y,3)", 3));
}

#[test]
fn basis_enumeration() {
    let s = labels(&["x"]);
    let b = basis_with_multidegree(2, &s, &md(&[("x", 2)]));
    let want: Vec<DPMonomial> = vec![
        DPMonomial::parse("d(x*x,1)", 2).unwrap(),
        DPMonomial::parse("d(x,2)", 2).unwrap(),
    ];
    let mut want = want;
    want.sort();
    assert_eq!(b, want);
    assert_eq!(
        basis_with_multidegree(2, &s, &MultiDegree::zero()),
        vec![DPMonomial::unit(2)]
    );
    // x^(3) does not fit in degree 2.
    assert_eq!(basis_with_multidegree(2, &s, &md(&[("x", 3)])).len(), 2);
}

#[test]
fn abelianization_ranks_one_generator() {
    let s = labels(&["x"]);
    let ranks: Vec<usize> = (0..3).map(|k| ab_component_rank(2, &md(&[("x", k)]), &s)).collect();
    assert_eq!(ranks, vec![1, 1, 2]);
}

#[test]
fn rho_examples() {
    assert_eq!(rho(&el("d(x,1)", 2)).unwrap(), el("d(x,1)", 1));
    assert!(rho(&el("d(x,2)", 2)).unwrap().is_zero());
    assert_eq!(rho(&DPElem::unit(2)).unwrap(), DPElem::unit(1));
    assert!(rho(&DPElem::unit(0)).is_err());
}
