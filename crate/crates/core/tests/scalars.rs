use bipositive::{Cyclo, Rational};
use proptest::prelude::*;

fn cyclo() -> impl Strategy<Value = Cyclo> {
    prop::collection::vec((0u32..60, -100i64..=100, 1i64..=12), 0..6)
        .prop_map(|t| Cyclo::from_triples(&t).expect("nonzero denominators"))
}

#[test]
fn root_of_unity_identities() {
    let i = Cyclo::root(15);
    assert_eq!(&i * &i, Cyclo::from_int(-1));
    let zeta5: Cyclo = (1..5).map(|k| Cyclo::root_of_unity(5, k)).sum();
    assert_eq!(zeta5, Cyclo::from_int(-1));
    let theta = Cyclo::root_of_unity(3, 1);
    let half = Cyclo::ratio(1, 2);
    assert_eq!(&(&half * &theta) + &(&half * &theta), theta);
}

#[test]
fn conjugation_examples() {
    assert_eq!(Cyclo::root(15).conj(), -Cyclo::root(15));
    assert_eq!(Cyclo::ratio(3, 4).conj(), Cyclo::ratio(3, 4));
    assert_eq!(Cyclo::root_of_unity(3, 1).conj(), Cyclo::root_of_unity(3, 2));
}

#[test]
fn nonneg_real_examples() {
    assert!(Cyclo::ratio(2, 3).is_nonneg_real(1e-9));
    let golden = &Cyclo::root_of_unity(5, 1) + &Cyclo::root_of_unity(5, 4);
    assert!(golden.is_nonneg_real(1e-9));
    assert!((golden.eval().re - 2.0 * (2.0 * std::f64::consts::PI / 5.0).cos()).abs() < 1e-12);
    assert!(!Cyclo::from_int(-1).is_nonneg_real(1e-9));
    // not real
    assert!(!Cyclo::root(15).is_nonneg_real(1e-9));
}

#[test]
fn division_by_zero_is_an_error() {
    assert!(Cyclo::one().checked_div(&Cyclo::zero()).is_err());
}

#[test]
fn rationals_serialize_with_exponent_zero() {
    let r = Cyclo::from_rational(Rational::new(-6, 4));
    assert_eq!(r.to_triples(), vec![(0, -3, 2)]);
    let json = serde_json::to_string(&r).unwrap();
    assert_eq!(serde_json::from_str::<Cyclo>(&json).unwrap(), r);
}

proptest! {
    #[test]
    fn distributive(a in cyclo(), b in cyclo(), c in cyclo()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn small_elements_invert(t in prop::collection::vec((0u32..60, -5i64..=5, 1i64..=3), 1..3)) {
        let a = Cyclo::from_triples(&t).unwrap();
        prop_assume!(!a.is_zero());
        prop_assert!((&a * &a.inverse().unwrap()).is_one());
    }

    #[test]
    fn inverse_is_exact_or_reports_overflow(a in cyclo()) {
        prop_assume!(!a.is_zero());
        match a.inverse() {
            Ok(b) => prop_assert!((&a * &b).is_one()),
            Err(e) => prop_assert!(matches!(e, bipositive::Error::Overflow(_)), "{e}"),
        }
    }

    #[test]
    fn self_difference_is_empty(a in cyclo()) {
        let z = &a - &a;
        prop_assert!(z.is_zero());
        prop_assert!(z.to_triples().is_empty());
    }

    #[test]
    fn json_round_trip(a in cyclo()) {
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Cyclo>(&json).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_ring_map(a in cyclo(), b in cyclo()) {
        let err = ((&a * &b).eval() - a.eval() * b.eval()).norm();
        prop_assert!(err < 1e-9 * (1.0 + a.eval().norm() * b.eval().norm()));
    }
}
