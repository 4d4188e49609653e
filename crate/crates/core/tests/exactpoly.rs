use heckecell::{Error, LaurentPoly, RationalFunction};
use proptest::prelude::*;

fn p(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

#[test]
fn products() {
    let q = LaurentPoly::q();
    let q_inv = LaurentPoly::q_pow(-1);
    assert_eq!(&(&q + &q_inv) * &q, p("q^2 + 1"));
    assert_eq!(&(&q - &q_inv) * &(&q + &q_inv), p("q^2 - q^-2"));
    assert_eq!(LaurentPoly::q_minus_q_inv(), &q - &q_inv);
}

#[test]
fn units() {
    assert!(p("-q^3").is_unit());
    assert_eq!(p("-q^3").unit_inverse(), Some(p("-q^-3")));
    assert!(!p("1 + q").is_unit());
    assert!(!LaurentPoly::zero().is_unit());
    assert!(p("2").unit_inverse().is_none());
}

#[test]
fn rational_to_laurent() {
    let f = RationalFunction::from_coeffs(&[-1, 0, 1], &[0, 1]).unwrap();
    assert_eq!(LaurentPoly::try_from(&f).unwrap(), p("q - q^-1"));

    let g = RationalFunction::from_coeffs(&[1], &[1, 1]).unwrap();
    assert!(matches!(LaurentPoly::try_from(&g), Err(Error::NotLaurent(_))));

    let h = RationalFunction::from(p("q^5")).div(&RationalFunction::from(p("q^2"))).unwrap();
    assert_eq!(LaurentPoly::try_from(h).unwrap(), p("q^3"));
}

#[test]
fn exact_division() {
    assert_eq!(p("q^2 - q^-2").div_exact(&p("q + q^-1")), Some(p("q - q^-1")));
    assert_eq!(p("q^2 + 1").div_exact(&p("q + 2")), None);
}

#[test]
fn parse_and_display_round_trip() {
    for s in ["0", "1", "-q^-3", "q^2 - q^-2", "3q + 2 - 5q^-7"] {
        let x = p(s);
        assert_eq!(p(&x.to_string()), x, "{s}");
    }
    assert!("q^".parse::<LaurentPoly>().is_err());
}

#[test]
fn json_round_trip() {
    let x = p("2q^3 - q^-1");
    let text = serde_json::to_string(&x).unwrap();
    assert_eq!(serde_json::from_str::<LaurentPoly>(&text).unwrap(), x);
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i32..=4, -5i64..=5), 0..5).prop_map(LaurentPoly::from_terms)
}

proptest! {
    #[test]
    fn ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, LaurentPoly::zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
    }

    #[test]
    fn division_undoes_multiplication(a in laurent(), b in laurent()) {
        prop_assume!(!b.is_zero());
        let prod = &a * &b;
        prop_assert_eq!(prod.div_exact(&b), Some(a.clone()));
        let quotient = RationalFunction::from(&prod).div(&RationalFunction::from(&b)).unwrap();
        prop_assert_eq!(LaurentPoly::try_from(&quotient).unwrap(), a);
    }

    #[test]
    fn rational_field_operations(a in laurent(), b in laurent()) {
        prop_assume!(!a.is_zero());
        let fa = RationalFunction::from(&a);
        let fb = RationalFunction::from(&b);
        let back = fb.div(&fa).unwrap().mul(&fa);
        prop_assert_eq!(LaurentPoly::try_from(&back).unwrap(), b.clone());
        prop_assert!(fa.sub(&fa).is_zero());
        prop_assert_eq!(LaurentPoly::try_from(fa.add(&fb)).unwrap(), &a + &b);
    }
}
