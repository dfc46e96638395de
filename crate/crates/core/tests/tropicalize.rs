mod common;

use common::*;
use num_bigint::BigInt;
use num_complex::Complex64;
use proptest::prelude::*;
use tropika_core::{
    int, jensen_zero_locate, mul_series, scale_series, trop_complex, trop_padic, trop_slope, trop_zeros, ComplexPoly,
    Prime, Rational, TropicalZero, ValuedSeries,
};

fn primes() -> impl Strategy<Value = Prime> {
    prop_oneof![Just(prime(2)), Just(prime(3)), Just(prime(5)), Just(prime(7))]
}

// Dense coefficients, ascending, of ∏ (X - u_i p^{v_i}).
fn expand(p: Prime, roots: &[(i64, u32)]) -> Vec<Rational> {
    let mut c = vec![int(1)];
    for (u, v) in roots {
        let r = Rational::from_integer(BigInt::from(*u) * BigInt::from(p.get()).pow(*v));
        let mut next = vec![int(0); c.len() + 1];
        for (i, a) in c.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * &r;
        }
        c = next;
    }
    c
}

fn series(p: Prime, c: &[Rational]) -> ValuedSeries {
    ValuedSeries::from_coefficients(p, c.iter().enumerate().map(|(i, a)| (i as i64, a))).unwrap()
}

fn unit_roots(p: Prime) -> impl Strategy<Value = Vec<(i64, u32)>> {
    let pp = p.get() as i64;
    proptest::collection::vec((1i64..=40, 0u32..=4), 1..5)
        .prop_map(move |v| v.into_iter().map(|(u, e)| (if u % pp == 0 { u + 1 } else { u }, e)).collect())
}

fn factored(roots: &[f64]) -> ComplexPoly {
    let zs: Vec<Complex64> = roots
        .iter()
        .enumerate()
        .map(|(i, v)| Complex64::from_polar((-v).exp(), 0.7 + 1.9 * i as f64))
        .collect();
    ComplexPoly::from_roots(&zs)
}

// roots at radii e^{-v}, v on the grid 1/4, away from the sample grid 1/4 + 1/8
fn root_moduli() -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(0i64..=12, 1..5).prop_map(|v| v.into_iter().map(|k| k as f64 / 4.0).collect())
}

fn exact_tau(roots: &[f64], x: f64) -> f64 {
    roots.iter().map(|v| (-v).max(-x)).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn zeros_are_root_valuations((p, roots) in primes().prop_flat_map(|p| (Just(p), unit_roots(p)))) {
        let s = series(p, &expand(p, &roots));
        let f = trop_padic(&s, &int(0), &int(6)).unwrap();
        let mut expected: Vec<TropicalZero> = Vec::new();
        let mut vs: Vec<i64> = roots.iter().map(|r| r.1 as i64).filter(|v| *v > 0).collect();
        vs.sort();
        for v in vs {
            match expected.last_mut() {
                Some(z) if z.x == int(v) => z.multiplicity += int(1),
                _ => expected.push(TropicalZero { x: int(v), multiplicity: int(1) }),
            }
        }
        prop_assert_eq!(trop_zeros(&f).unwrap(), expected);
    }

    #[test]
    fn newton_is_multiplicative(
        (p, a, b) in primes().prop_flat_map(|p| (Just(p), unit_roots(p), unit_roots(p)))
    ) {
        let (lo, hi) = (int(0), int(6));
        let fa = series(p, &expand(p, &a));
        let fb = series(p, &expand(p, &b));
        let ab: Vec<(i64, u32)> = a.iter().chain(&b).cloned().collect();
        let exact = trop_padic(&series(p, &expand(p, &ab)), &lo, &hi).unwrap();
        let prod = trop_padic(&fa, &lo, &hi).unwrap().trop_mul(&trop_padic(&fb, &lo, &hi).unwrap()).unwrap();
        prop_assert_eq!(&exact, &prod);
        prop_assert_eq!(trop_padic(&mul_series(&fa, &fb), &lo, &hi).unwrap(), prod);
    }

    #[test]
    fn newton_scaling((p, roots, n) in primes().prop_flat_map(|p| (Just(p), unit_roots(p), prop_oneof![Just(2u32), Just(3), Just(5)]))) {
        let s = series(p, &expand(p, &roots));
        let hi = int(6);
        let scaled = trop_padic(&scale_series(&s, n).unwrap(), &int(0), &(&hi / int(n as i64))).unwrap();
        prop_assert_eq!(scaled, trop_padic(&s, &int(0), &hi).unwrap().scale_action(n as u64).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn jensen_matches_root_moduli(roots in root_moduli()) {
        let f = factored(&roots);
        let mut prev: Option<(f64, f64)> = None;
        let mut vals = Vec::new();
        for k in 0..14 {
            let x = 0.125 + 0.25 * k as f64;
            let v = trop_complex(&f, x, 16, 1e-9).unwrap();
            prop_assert!((v.value - exact_tau(&roots, x)).abs() < 1e-6);
            let s = trop_slope(&f, x, 16, 1e-9).unwrap();
            prop_assert!((s - s.round()).abs() < 1e-6, "slope {} at {}", s, x);
            if let Some((_, ps)) = prev {
                prop_assert!(s >= ps - 1e-6);
            }
            prev = Some((x, s));
            vals.push(v.value);
        }
        for w in vals.windows(3) {
            prop_assert!(w[0] + w[2] - 2.0 * w[1] >= -1e-9);
        }
    }

    #[test]
    fn jensen_scaling(roots in root_moduli(), n in prop_oneof![Just(2usize), Just(3), Just(5)]) {
        let f = factored(&roots);
        let g = f.compose_power(n).unwrap();
        for k in 0..6 {
            let x = (0.125 + 0.25 * k as f64) / n as f64 + 0.01;
            let lhs = trop_complex(&g, x, 16, 1e-9).unwrap().value;
            let rhs = trop_complex(&f, n as f64 * x, 16, 1e-9).unwrap().value;
            prop_assert!((lhs - rhs).abs() < 1e-6, "n={} x={}: {} vs {}", n, x, lhs, rhs);
        }
    }

    #[test]
    fn located_zeros_match_moduli(roots in root_moduli()) {
        let f = factored(&roots);
        let zs = jensen_zero_locate(&f, 0.05, 3.2, 1e-6).unwrap();
        let mut expected: Vec<(f64, u32)> = Vec::new();
        let mut vs: Vec<f64> = roots.iter().cloned().filter(|v| *v > 0.05).collect();
        vs.sort_by(f64::total_cmp);
        for v in vs {
            match expected.last_mut() {
                Some(z) if z.0 == v => z.1 += 1,
                _ => expected.push((v, 1)),
            }
        }
        prop_assert_eq!(zs.zeros.len(), expected.len());
        for (z, (v, m)) in zs.zeros.iter().zip(expected) {
            prop_assert!((z.x - v).abs() < 1e-6);
            prop_assert_eq!(z.multiplicity, m);
        }
    }
}

#[test]
fn root_on_the_circle_is_handled() {
    let f = ComplexPoly::from_real(&[-1.0, 1.0]).unwrap();
    let v = trop_complex(&f, 0.0, 16, 1e-9).unwrap();
    assert!(v.value.abs() < 1e-6, "{v:?}");
    let g = ComplexPoly::from_real(&[-0.5, 1.0]).unwrap();
    let w = trop_complex(&g, std::f64::consts::LN_2, 16, 1e-9).unwrap();
    assert!((w.value + std::f64::consts::LN_2).abs() < 1e-6, "{w:?}");
}
