#![allow(dead_code)]

use proptest::prelude::*;
use tropika_core::{int, rat, CpFunction, Germ, HpScalar, PaFunction, Prime, Rational};

pub fn prime(p: u32) -> Prime {
    Prime::new(p).unwrap()
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

pub fn small_int() -> impl Strategy<Value = Rational> {
    (-6i64..=6).prop_map(int)
}

/// Finite PA function on `[0, 4]` with breakpoints on the grid `1/12`.
pub fn finite_pa() -> impl Strategy<Value = PaFunction> {
    (small_rational(), proptest::collection::btree_set(1i64..48, 0..5))
        .prop_flat_map(|(anchor, grid)| {
            let n = grid.len() + 1;
            (Just(anchor), Just(grid), proptest::collection::vec(small_int(), n))
        })
        .prop_map(|(anchor, grid, slopes)| {
            let breaks = grid.into_iter().map(|i| rat(i, 12)).collect();
            PaFunction::from_pieces(int(0), int(4), anchor, breaks, slopes).unwrap()
        })
}

/// Finite or bottom.
pub fn pa() -> impl Strategy<Value = PaFunction> {
    prop_oneof![9 => finite_pa(), 1 => Just(PaFunction::bottom(int(0), int(4)).unwrap())]
}

pub fn germ() -> impl Strategy<Value = Germ> {
    prop_oneof![
        9 => (-2i64..=2, -3i64..=3, -3i64..=3).prop_map(|(x, a, b)| Germ::new(int(x), int(a), int(b))),
        1 => Just(Germ::Bottom),
    ]
}

pub fn hp(p: Prime) -> impl Strategy<Value = HpScalar> {
    (-30i64..=30, 0u32..=2).prop_map(move |(a, k)| HpScalar::new(p, a, k))
}

pub fn positive_hp(p: Prime) -> impl Strategy<Value = HpScalar> {
    (1i64..=30, 0u32..=2).prop_map(move |(a, k)| HpScalar::new(p, a, k))
}

/// A periodic function built piece by piece: slopes and all breakpoints but
/// the last are random, the last breakpoint is solved from `f(1) = f(p)`.
pub fn cp_function(p: Prime) -> impl Strategy<Value = CpFunction> {
    let pr = p.as_rational();
    (
        small_rational(),
        proptest::collection::vec(hp(p), 2..5),
        proptest::collection::btree_set(1i64..1000, 4),
    )
        .prop_filter_map("last breakpoint outside the domain", move |(anchor, slopes, grid)| {
            let m = slopes.len() - 1;
            let span = &pr - int(1);
            let mut breaks: Vec<Rational> =
                grid.into_iter().take(m - 1).map(|i| int(1) + &span * rat(i, 1000)).collect();
            let rs: Vec<Rational> = slopes.iter().map(HpScalar::to_rational).collect();
            // integral over [1, x_{m-1}] of the first m-1 pieces
            let mut acc = int(0);
            let mut prev = int(1);
            for (i, b) in breaks.iter().enumerate() {
                acc += &rs[i] * (b - &prev);
                prev = b.clone();
            }
            // acc + s_{m-1}(x - prev) + s_m(p - x) = 0
            let denom = &rs[m - 1] - &rs[m];
            if denom == int(0) {
                return None;
            }
            let x = (&rs[m - 1] * &prev - &rs[m] * &pr - &acc) / denom;
            if x <= prev || x >= pr {
                return None;
            }
            breaks.push(x);
            CpFunction::from_pieces(p, anchor, breaks, &slopes).ok()
        })
}

/// A function with integer slopes, convex, in `E_{N,p}`, by rejection.
pub fn e_function(n: i64, p: Prime) -> impl Strategy<Value = CpFunction> {
    let pr = p.as_rational();
    let pp = p.get() as i64;
    (
        small_rational(),
        1i64..=(n - pp).max(1),
        proptest::collection::btree_set(-8i64..8, 0..4),
        proptest::collection::btree_set(1i64..1000, 4),
    )
        .prop_filter_map("not in E", move |(anchor, a, mids, grid)| {
            let b_max = (n - a).div_euclid(pp);
            if b_max < 1 {
                return None;
            }
            let b = 1 + (grid.iter().next().copied().unwrap_or(0) % b_max);
            let mut slopes = vec![-a];
            slopes.extend(mids.into_iter().filter(|s| *s > -a && *s < b));
            slopes.push(b);
            let m = slopes.len() - 1;
            let span = &pr - int(1);
            let mut breaks: Vec<Rational> = grid.into_iter().take(m - 1).map(|i| int(1) + &span * rat(i, 1000)).collect();
            let mut acc = int(0);
            let mut prev = int(1);
            for (i, x) in breaks.iter().enumerate() {
                acc += int(slopes[i]) * (x - &prev);
                prev = x.clone();
            }
            let x = (int(slopes[m - 1]) * &prev - int(slopes[m]) * &pr - &acc) / int(slopes[m - 1] - slopes[m]);
            if x <= prev || x >= pr {
                return None;
            }
            breaks.push(x);
            let hs: Vec<HpScalar> = slopes.iter().map(|s| HpScalar::from_integer(p, *s)).collect();
            CpFunction::from_pieces(p, anchor, breaks, &hs).ok()
        })
}
