mod common;

use common::*;
use proptest::prelude::*;
use tropika_core::exact::{p_adic_norm, valuation};
use tropika_core::{int, parse_rational, rat, ChiClass, HpScalar, Prime};

fn primes() -> impl Strategy<Value = Prime> {
    prop_oneof![Just(prime(2)), Just(prime(3)), Just(prime(5)), Just(prime(7)), Just(prime(11))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn chi_is_a_ring_map((p, a, b) in primes().prop_flat_map(|p| (Just(p), hp(p), hp(p)))) {
        prop_assert_eq!((&a + &b).chi(), a.chi() + b.chi());
        prop_assert_eq!((&a * &b).chi(), a.chi() * b.chi());
        prop_assert_eq!(a.mul_p_pow(3).chi(), a.chi());
        prop_assert_eq!(HpScalar::one(p).chi(), ChiClass::from_integer(&1.into(), p));
    }

    #[test]
    fn ultrametric((p, a, b) in primes().prop_flat_map(|p| (Just(p), small_rational(), small_rational()))) {
        let s = &a + &b;
        let m = p_adic_norm(&a, p).max(p_adic_norm(&b, p));
        prop_assert!(p_adic_norm(&s, p) <= m);
        prop_assert_eq!(p_adic_norm(&(&a * &b), p), p_adic_norm(&a, p) * p_adic_norm(&b, p));
        if a != int(0) {
            prop_assert_eq!(p_adic_norm(&a, p), p.pow(-valuation(&a, p).unwrap()));
        }
    }

    #[test]
    fn canonical_form_is_unique((p, a, k, j) in primes().prop_flat_map(|p| (Just(p), -200i64..=200, 0u32..=3, 0u32..=3))) {
        let x = HpScalar::new(p, a, k);
        let scaled = num_bigint::BigInt::from(a) * num_bigint::BigInt::from(p.get()).pow(j);
        let y = HpScalar::new(p, scaled, k + j);
        prop_assert_eq!(&x, &y);
        prop_assert_eq!(HpScalar::from_rational(p, &x.to_rational()).unwrap(), x.clone());
        prop_assert_eq!(x.to_string().is_empty(), false);
    }

    #[test]
    fn parse_roundtrip(q in small_rational()) {
        prop_assert_eq!(parse_rational(&q.to_string()).unwrap(), q);
    }
}

#[test]
fn membership() {
    let p = prime(3);
    assert!(HpScalar::from_rational(p, &rat(5, 9)).is_ok());
    assert!(HpScalar::from_rational(p, &rat(1, 2)).is_err());
    assert!(Prime::new(4).is_err());
    assert_eq!(HpScalar::new(p, 7, 1).chi(), ChiClass::from_integer(&1.into(), p));
    assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
    assert!(parse_rational("1/0").is_err());
}
