mod common;

use common::*;
use proptest::prelude::*;
use tropika_core::rr::{check_e_membership, seam_defect, simplex_epsilon};
use tropika_core::{
    continuous_dim, dim_top_e, gamma_coords, in_e, in_h0, int, p_norm, phi_generators, rat, rr_check, sigma,
    simplex_inverse, simplex_map, solve_divisor, Divisor, HpScalar, MaxPlus, Prime, Rational,
};

fn primes() -> impl Strategy<Value = Prime> {
    prop_oneof![Just(prime(2)), Just(prime(3)), Just(prime(5)), Just(prime(7))]
}

fn simplex_params(n: i64, p: Prime) -> impl Strategy<Value = Vec<Rational>> {
    let m = (n - p.get() as i64) as usize;
    let eps = simplex_epsilon(n, p);
    (small_rational(), proptest::collection::btree_set(1i64..1000, m)).prop_map(move |(t0, grid)| {
        let mut ts = vec![t0];
        ts.extend(grid.into_iter().map(|i| &eps * rat(i, 1000)));
        ts
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn norm_is_ultrametric((f, g) in primes().prop_flat_map(|p| (cp_function(p), cp_function(p)))) {
        let m = p_norm(&f).max(p_norm(&g));
        prop_assert!(p_norm(&f.join(&g).unwrap()) <= m);
        prop_assert!(p_norm(&f.add(&g).unwrap()) <= m);
    }

    #[test]
    fn norm_scales_under_p_powers(f in primes().prop_flat_map(cp_function), a in -3i64..=3) {
        let p = f.prime();
        let g = f.frobenius_abs(&HpScalar::one(p).mul_p_pow(a)).unwrap();
        prop_assert_eq!(p_norm(&g), p.pow(-a) * p_norm(&f));
        let integral = f.slopes().iter().all(HpScalar::is_integer);
        prop_assert_eq!(p_norm(&f) <= int(1), integral);
    }

    #[test]
    fn filtration_and_translation(
        (f, g) in primes().prop_flat_map(|p| (cp_function(p), cp_function(p))),
        n in 0i64..=3,
    ) {
        let p = f.prime();
        // D chosen so that f is a section: D = -(f) + effective part
        let mut d = -&f.divisor();
        d.add_point(&int(1), HpScalar::from_integer(p, 2)).unwrap();
        let rho = p.pow(n);
        let rho2 = p.pow(n + 1);
        if in_h0(&d, &f, &rho) {
            prop_assert!(in_h0(&d, &f, &rho2));
        }
        // translation by g with ‖g‖ ≤ p^n is a bijection of the level-p^n sections
        prop_assume!(p_norm(&g) <= rho);
        let d2 = &d + &g.divisor();
        prop_assert_eq!(in_h0(&d, &f, &rho), in_h0(&d2, &f.sub(&g).unwrap(), &rho));
    }

    #[test]
    fn gamma_reconstructs_e10_3(f in e_function(10, prime(3))) {
        check_e_membership(&f, 10).unwrap();
        let g: Vec<MaxPlus> = gamma_coords(&f, 10).unwrap().into_iter().map(MaxPlus::Finite).collect();
        prop_assert_eq!(sigma(&g, 10, prime(3)).unwrap(), f);
    }

    #[test]
    fn gamma_reconstructs_e17_5(f in e_function(17, prime(5))) {
        let g: Vec<MaxPlus> = gamma_coords(&f, 17).unwrap().into_iter().map(MaxPlus::Finite).collect();
        prop_assert_eq!(sigma(&g, 17, prime(5)).unwrap(), f);
    }

    #[test]
    fn sigma_lands_in_e(xs in proptest::collection::vec(small_rational(), 8)) {
        let coords: Vec<MaxPlus> = xs.into_iter().map(MaxPlus::Finite).collect();
        let f = sigma(&coords, 10, prime(3)).unwrap();
        prop_assert!(in_e(&f, 10));
        prop_assert!(seam_defect(&f) <= int(10));
    }

    #[test]
    fn simplex_map_is_injective(ts in simplex_params(10, prime(3)), us in simplex_params(10, prime(3))) {
        let p = prime(3);
        let h = simplex_map(&ts, 10, p).unwrap();
        prop_assert!(in_e(&h, 10));
        prop_assert_eq!(simplex_inverse(&h, 10).unwrap(), ts.clone());
        if ts != us {
            prop_assert_ne!(h, simplex_map(&us, 10, p).unwrap());
        }
    }

    #[test]
    fn extremal_witness(a in 0usize..8, xs in proptest::collection::vec((0i64..8, 0i64..=20), 1..4), ys in proptest::collection::vec((0i64..8, 0i64..=20), 1..4)) {
        // f1, f2 ≤ φ_a built from generators pushed below φ_a; f1 ∨ f2 = φ_a forces one of them to be φ_a
        let p = prime(3);
        let gens = phi_generators(10, p).unwrap();
        let below = gamma_coords(&gens[a], 10).unwrap();
        let build = |picks: &[(i64, i64)]| {
            let mut c = vec![MaxPlus::NegInf; 8];
            for (b, drop) in picks {
                let b = *b as usize;
                c[b] = MaxPlus::Finite(&below[b] - rat(*drop, 4));
            }
            sigma(&c, 10, p).unwrap()
        };
        let (f1, f2) = (build(&xs), build(&ys));
        if f1.join(&f2).unwrap() == gens[a] {
            prop_assert!(f1 == gens[a] || f2 == gens[a]);
            let g1 = f1.restriction().germ_right_of_lo();
            let g2 = f2.restriction().germ_right_of_lo();
            let ga = gens[a].restriction().germ_right_of_lo();
            prop_assert!(g1 == ga || g2 == ga);
        }
    }
}

#[test]
fn generators_are_members() {
    for (n, p) in [(10, 3), (17, 5), (9, 7), (5, 2)] {
        let p = prime(p);
        let gens = phi_generators(n, p).unwrap();
        assert_eq!(gens.len() as u64, dim_top_e(n, p));
        assert!(gens.iter().all(|g| in_e(g, n)));
        let d = Divisor::single(p, &int(1), HpScalar::from_integer(p, n)).unwrap();
        assert!(gens.iter().all(|g| in_h0(&d, g, &int(1))));
    }
}

#[test]
fn negative_degree_has_no_sections() {
    let p = prime(3);
    let d = Divisor::single(p, &int(2), HpScalar::from_integer(p, -1)).unwrap();
    let f = solve_divisor(&Divisor::new(p), Some(&int(3))).unwrap();
    assert!(!in_h0(&d, &f, &int(1000)));
    let cd = continuous_dim(&d, 4).unwrap();
    assert!(cd.levels.iter().all(|l| l.dim_upper == 0));
}

#[test]
fn rr_for_several_degrees() {
    let p = prime(3);
    for (lambda, k) in [(int(1), 4i64), (int(2), 5), (rat(5, 4), 7), (int(1), 1)] {
        let d = Divisor::single(p, &lambda, HpScalar::from_integer(p, k)).unwrap();
        let r = rr_check(&d, 6).unwrap();
        assert!(r.holds, "{d}: {r:?}");
        let rn = rr_check(&-&d, 6).unwrap();
        assert!(rn.holds);
    }
}
