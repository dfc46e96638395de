//! Seeded random objects for experiments and acceptance batches.
//!
//! Every case draws from its own ChaCha stream, so a batch gives the same
//! objects whatever the thread count.

use num_bigint::BigInt;
use rand::seq::index::sample;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropika_core::{int, rat, CpFunction, Divisor, Germ, HpScalar, PaFunction, Prime, Rational, ThetaDatum};

pub type CaseRng = ChaCha8Rng;

pub fn case_rng(seed: u64, stream: u64) -> CaseRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub fn rational<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-40..=40), rng.gen_range(1..=12))
}

pub fn positive_rational<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(1..=500), rng.gen_range(1..=60))
}

pub fn hp<R: Rng>(rng: &mut R, p: Prime) -> HpScalar {
    HpScalar::new(p, rng.gen_range(-30i64..=30), rng.gen_range(0..=2))
}

pub fn positive_hp<R: Rng>(rng: &mut R, p: Prime) -> HpScalar {
    HpScalar::new(p, rng.gen_range(1i64..=30), rng.gen_range(0..=2))
}

pub fn theta_datum<R: Rng>(rng: &mut R, p: Prime) -> ThetaDatum {
    ThetaDatum::new(positive_hp(rng, p), positive_rational(rng)).expect("positive h")
}

/// Sum of pairs `(λ, m t)` and `(λ m p^j, -t p^{-j})` with `m ≡ 1 mod (p-1)`,
/// each of degree 0 and χ 0.
pub fn principal_divisor<R: Rng>(rng: &mut R, p: Prime) -> Divisor {
    let pp = p.get() as i64;
    let mut d = Divisor::new(p);
    for _ in 0..rng.gen_range(1..=4) {
        let lambda = rat(rng.gen_range(1..=60), rng.gen_range(1..=7));
        let t = hp(rng, p);
        let m = 1 + rng.gen_range(0..=3) * (pp - 1);
        let j = rng.gen_range(-2..=2);
        let r = int(m) * p.pow(j);
        d.add_point(&lambda, &HpScalar::from_integer(p, m) * &t).expect("positive point");
        d.add_point(&(&lambda * &r), -t.mul_p_pow(-j)).expect("positive point");
    }
    d
}

/// A principal divisor pushed off `(deg, χ) = (0, 0)`: either a non-zero
/// point is added, or (for `p > 2`) a degree-zero pair with `χ ≠ 0`.
pub fn non_principal_divisor<R: Rng>(rng: &mut R, p: Prime) -> Divisor {
    let mut d = principal_divisor(rng, p);
    let pp = p.get() as i64;
    if pp > 2 && rng.gen_bool(0.5) {
        let a = rng.gen_range(1..pp - 1);
        let lambda = rat(rng.gen_range(1..=60), rng.gen_range(1..=7));
        d.add_point(&lambda, HpScalar::from_integer(p, -2 * a)).expect("positive point");
        d.add_point(&(&lambda * int(2)), HpScalar::from_integer(p, a)).expect("positive point");
    } else {
        let mut k = hp(rng, p);
        if k.is_zero() {
            k = HpScalar::one(p);
        }
        d.add_point(&rat(rng.gen_range(1..=60), rng.gen_range(1..=7)), k).expect("positive point");
    }
    d
}

fn grid_breaks<R: Rng>(rng: &mut R, p: Prime, count: usize) -> Vec<Rational> {
    let span = p.as_rational() - int(1);
    let mut idx: Vec<usize> = sample(rng, 999, count).into_vec();
    idx.sort_unstable();
    idx.into_iter().map(|i| int(1) + &span * rat(i as i64 + 1, 1000)).collect()
}

// Last breakpoint `x` with `acc + s_{m-1} (x - prev) + s_m (p - x) = 0`.
fn closing_break(p: Prime, breaks: &[Rational], slopes: &[Rational]) -> Option<Rational> {
    let pr = p.as_rational();
    let m = slopes.len() - 1;
    let mut acc = int(0);
    let mut prev = int(1);
    for (b, s) in breaks.iter().zip(slopes) {
        acc += s * (b - &prev);
        prev = b.clone();
    }
    let denom = &slopes[m - 1] - &slopes[m];
    if denom == int(0) {
        return None;
    }
    let x = (&slopes[m - 1] * &prev - &slopes[m] * &pr - &acc) / denom;
    (x > prev && x < pr).then_some(x)
}

/// A periodic function with 2 to 4 pieces and random `H_p` slopes.
pub fn cp_function<R: Rng>(rng: &mut R, p: Prime) -> CpFunction {
    loop {
        let pieces = rng.gen_range(2..=4);
        let slopes: Vec<HpScalar> = (0..pieces).map(|_| hp(rng, p)).collect();
        let rs: Vec<Rational> = slopes.iter().map(HpScalar::to_rational).collect();
        let mut breaks = grid_breaks(rng, p, pieces - 2);
        let Some(x) = closing_break(p, &breaks, &rs) else { continue };
        breaks.push(x);
        if let Ok(f) = CpFunction::from_pieces(p, rational(rng), breaks, &slopes) {
            return f;
        }
    }
}

/// A member of `E_{N,p}`: increasing integer slopes from `-a` to `b` with `a + p b ≤ N`.
pub fn e_function<R: Rng>(rng: &mut R, n: i64, p: Prime) -> CpFunction {
    let pp = p.get() as i64;
    assert!(n > pp, "E_{{N,p}} has non-constant members only for N > p");
    loop {
        let a = rng.gen_range(1..=n - pp);
        let b_max = (n - a).div_euclid(pp);
        if b_max < 1 {
            continue;
        }
        let b = rng.gen_range(1..=b_max);
        let mut slopes: Vec<i64> = (0..rng.gen_range(0..=3)).map(|_| rng.gen_range(-a + 1..b)).collect();
        slopes.sort_unstable();
        slopes.dedup();
        slopes.insert(0, -a);
        slopes.push(b);
        let rs: Vec<Rational> = slopes.iter().map(|s| int(*s)).collect();
        let mut breaks = grid_breaks(rng, p, slopes.len() - 2);
        let Some(x) = closing_break(p, &breaks, &rs) else { continue };
        breaks.push(x);
        let hs: Vec<HpScalar> = slopes.iter().map(|s| HpScalar::from_integer(p, *s)).collect();
        if let Ok(f) = CpFunction::from_pieces(p, rational(rng), breaks, &hs) {
            return f;
        }
    }
}

/// Finite function on `[0, 4]` with integer slopes and breakpoints on the grid `1/12`.
pub fn finite_pa<R: Rng>(rng: &mut R) -> PaFunction {
    let count = rng.gen_range(0..=4);
    let mut idx: Vec<usize> = sample(rng, 47, count).into_vec();
    idx.sort_unstable();
    let breaks = idx.into_iter().map(|i| rat(i as i64 + 1, 12)).collect();
    let slopes = (0..=count).map(|_| int(rng.gen_range(-6..=6))).collect();
    PaFunction::from_pieces(int(0), int(4), rational(rng), breaks, slopes).expect("sorted interior breaks")
}

/// `finite_pa`, or bottom one time in ten.
pub fn pa<R: Rng>(rng: &mut R) -> PaFunction {
    if rng.gen_bool(0.1) {
        PaFunction::bottom(int(0), int(4)).expect("valid domain")
    } else {
        finite_pa(rng)
    }
}

pub fn germ<R: Rng>(rng: &mut R) -> Germ {
    if rng.gen_bool(0.1) {
        Germ::Bottom
    } else {
        Germ::new(int(rng.gen_range(-2..=2)), int(rng.gen_range(-3..=3)), int(rng.gen_range(-3..=3)))
    }
}

/// Roots `u p^v` with `p ∤ u`, as `(u, v)`.
pub fn unit_roots<R: Rng>(rng: &mut R, p: Prime, max_factors: usize) -> Vec<(i64, u32)> {
    let pp = p.get() as i64;
    (0..rng.gen_range(1..=max_factors))
        .map(|_| {
            let mut u = rng.gen_range(1..=40) * if rng.gen_bool(0.5) { 1 } else { -1 };
            if u % pp == 0 {
                u += 1;
            }
            (u, rng.gen_range(0..=4))
        })
        .collect()
}

/// Ascending coefficients of `∏ (X - u p^v)`.
pub fn expand_roots(p: Prime, roots: &[(i64, u32)]) -> Vec<Rational> {
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
