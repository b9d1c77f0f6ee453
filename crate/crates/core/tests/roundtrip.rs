//! Property tests: printed values re-parse and re-evaluate to themselves,
//! and scalar arithmetic satisfies the field laws.

use proptest::prelude::*;
use qwitt::expr::{eval_scalar, parse};
use qwitt::poly::IntPoly;
use qwitt::qarith::{Scalar, ScalarField};

fn int_poly(max_deg: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-9i64..=9, 0..=max_deg + 1)
        .prop_map(|cs| IntPoly::new(cs.into_iter().map(Into::into).collect()))
}

fn generic_scalar() -> impl Strategy<Value = Scalar> {
    (int_poly(4), int_poly(3), -3i64..=3).prop_map(|(num, den, shift)| {
        let f = ScalarField::generic();
        let den = if den.is_zero() { IntPoly::one() } else { den };
        let v = f.from_int_poly(&num).div(&f.from_int_poly(&den)).unwrap();
        &v * &f.q_power(shift)
    })
}

fn root_scalar() -> impl Strategy<Value = Scalar> {
    (2u32..=12, int_poly(6)).prop_map(|(l, p)| {
        let f = ScalarField::root_of_unity(l).unwrap();
        f.from_int_poly(&p)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn generic_scalar_print_parse_round_trip(s in generic_scalar()) {
        let f = ScalarField::generic();
        let text = s.to_string();
        let back = eval_scalar(&parse(&text).unwrap(), &f).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn root_scalar_print_parse_round_trip(s in root_scalar()) {
        let f = s.field().clone();
        let text = s.to_string();
        let back = eval_scalar(&parse(&text).unwrap(), &f).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn generic_field_laws(a in generic_scalar(), b in generic_scalar(), c in generic_scalar()) {
        // distributivity and associativity in canonical form
        let left = &(&a + &b) * &c;
        let right = &(&a * &c) + &(&b * &c);
        prop_assert_eq!(left, right);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        // inverses
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn root_field_laws(a in root_scalar()) {
        let f = a.field().clone();
        prop_assert_eq!(&(&a + &f.zero()), &a);
        if !a.is_zero() {
            let inv = a.inv().unwrap();
            prop_assert!((&a * &inv).is_one());
        }
    }
}
