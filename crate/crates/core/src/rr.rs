//! The p-norm filtration, the modules `E_{N,p}`, and the continuous dimension.
//!
//! `E_{N,p}` is `H⁰(N{1})` cut at norm 1: convex periodic functions with
//! integer slopes on `[1, p]` and seam defect `-h₁ + p h_n ≤ N`. Its
//! topological dimension is the combinatorial count `N - p + 1`.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{CoreError, Result};
use crate::exact::{p_adic_norm, HpScalar, Prime, Rational};
use crate::orbit::{solve_divisor, CpFunction, Divisor};
use crate::pa::{MaxPlus, PaFunction};

/// `max |h(λ)|_p / λ` over the pieces of `f` on `[1, p]`, taken at each left endpoint.
pub fn p_norm(f: &CpFunction) -> Rational {
    let p = f.prime();
    let one = Rational::one();
    let lefts = core::iter::once(&one).chain(f.breaks());
    lefts
        .zip(f.restriction().slopes())
        .map(|(l, s)| p_adic_norm(s, p) / l)
        .max()
        .unwrap_or_else(Rational::zero)
}

/// `D + (f) ≥ 0` and `‖f‖_p ≤ ρ`.
pub fn in_h0(d: &Divisor, f: &CpFunction, rho: &Rational) -> bool {
    d.prime() == f.prime() && (d + &f.divisor()).is_effective() && &p_norm(f) <= rho
}

/// `-h₁ + p h_n`, the quantity bounded by `N` in `E_{N,p}`.
pub fn seam_defect(f: &CpFunction) -> Rational {
    let s = f.restriction().slopes();
    -&s[0] + f.prime().as_rational() * &s[s.len() - 1]
}

/// Membership in `E_{N,p}`, with the failing condition on error.
pub fn check_e_membership(f: &CpFunction, n: i64) -> Result<()> {
    let r = f.restriction();
    if !r.has_integer_slopes() {
        return Err(CoreError::NotInModule("non-integer slope".into()));
    }
    if !r.is_convex() {
        return Err(CoreError::NotInModule("not convex on [1, p]".into()));
    }
    let defect = seam_defect(f);
    if defect > Rational::from_integer(n.into()) {
        return Err(CoreError::NotInModule(format!("seam defect {defect} exceeds {n}")));
    }
    Ok(())
}

pub fn in_e(f: &CpFunction, n: i64) -> bool {
    check_e_membership(f, n).is_ok()
}

fn require_n_ge_p(n: i64, p: Prime) -> Result<()> {
    if n < p.get() as i64 {
        return Err(CoreError::InvalidArgument(format!("N = {n} is below p = {p}")));
    }
    Ok(())
}

/// `φ_a = max(-a(x-1), b(x-p))` with `b = ⌊(N-a)/p⌋`.
pub fn phi(a: i64, n: i64, p: Prime) -> Result<CpFunction> {
    require_n_ge_p(n, p)?;
    if a == 0 {
        return Ok(CpFunction::constant(p, Rational::zero()));
    }
    if a < 0 || a > n - p.get() as i64 {
        return Err(CoreError::InvalidArgument(format!("a = {a} outside 0..={}", n - p.get() as i64)));
    }
    let pp = p.get() as i64;
    let b = num_integer::Integer::div_floor(&(n - a), &pp);
    let vertex = Rational::new(BigInt::from(a + b * pp), BigInt::from(a + b));
    CpFunction::from_pieces(
        p,
        Rational::zero(),
        alloc::vec![vertex],
        &[HpScalar::from_integer(p, -a), HpScalar::from_integer(p, b)],
    )
}

/// `[φ_0, …, φ_{N-p}]`.
pub fn phi_generators(n: i64, p: Prime) -> Result<Vec<CpFunction>> {
    require_n_ge_p(n, p)?;
    (0..=n - p.get() as i64).map(|a| phi(a, n, p)).collect()
}

fn max_of(f: &PaFunction) -> Rational {
    f.max_value().finite().expect("finite")
}

/// `γ_a(f) = -max_{[1,p]} (φ_a - f)` for every generator.
pub fn gamma_coords(f: &CpFunction, n: i64) -> Result<Vec<Rational>> {
    check_e_membership(f, n)?;
    phi_generators(n, f.prime())?
        .iter()
        .map(|g| Ok(-max_of(&g.restriction().sub(f.restriction())?)))
        .collect()
}

/// `σ(x) = ∨ (φ_a + x_a)`.
pub fn sigma(coords: &[MaxPlus], n: i64, p: Prime) -> Result<CpFunction> {
    let gens = phi_generators(n, p)?;
    if coords.len() != gens.len() {
        return Err(CoreError::InvalidArgument(format!("expected {} coordinates, got {}", gens.len(), coords.len())));
    }
    let mut acc = PaFunction::bottom(Rational::one(), p.as_rational())?;
    for (g, x) in gens.iter().zip(coords) {
        if let MaxPlus::Finite(x) = x {
            acc = acc.trop_add(g.add_constant(x).restriction())?;
        }
    }
    CpFunction::new(p, acc)
}

/// Upper end `(p-1)/(N-p+1)` of the parameter simplex.
pub fn simplex_epsilon(n: i64, p: Prime) -> Rational {
    let pp = p.get() as i64;
    Rational::new(BigInt::from(pp - 1), BigInt::from(n - pp + 1))
}

/// `h(t_0, …, t_{N-p}) = ∨_j (φ_{N-p-j} - Σ_{i≤j} t_i)` with `0 < t_1 < … < t_{N-p} < ε`.
pub fn simplex_map(ts: &[Rational], n: i64, p: Prime) -> Result<CpFunction> {
    require_n_ge_p(n, p)?;
    let m = (n - p.get() as i64) as usize;
    if ts.len() != m + 1 {
        return Err(CoreError::InvalidArgument(format!("expected {} parameters, got {}", m + 1, ts.len())));
    }
    let eps = simplex_epsilon(n, p);
    let mut prev = Rational::zero();
    for t in &ts[1..] {
        if t <= &prev || t >= &eps {
            return Err(CoreError::InvalidArgument(format!("parameters must satisfy 0 < t_1 < ... < {eps}")));
        }
        prev = t.clone();
    }
    let mut acc = PaFunction::bottom(Rational::one(), p.as_rational())?;
    let mut cum = Rational::zero();
    for (j, t) in ts.iter().enumerate() {
        cum += t;
        let g = phi((m - j) as i64, n, p)?.add_constant(&-&cum);
        acc = acc.trop_add(g.restriction())?;
    }
    CpFunction::new(p, acc)
}

/// Reads `t_0 = -h(1)` and `t_j = x_j - 1` from the first `N-p` breakpoints.
pub fn simplex_inverse(f: &CpFunction, n: i64) -> Result<Vec<Rational>> {
    let p = f.prime();
    require_n_ge_p(n, p)?;
    let m = (n - p.get() as i64) as usize;
    if f.breaks().len() < m {
        return Err(CoreError::InvalidArgument(format!("{} breakpoints, need {m}", f.breaks().len())));
    }
    let mut ts = Vec::with_capacity(m + 1);
    ts.push(-f.value_at_one());
    ts.extend(f.breaks()[..m].iter().map(|x| x - Rational::one()));
    Ok(ts)
}

/// `dim_top(E_{N,p})`: `N - p + 1` for `N ≥ p`, `1` (constants only) for
/// `0 ≤ N < p`, and `0` for `N < 0`.
pub fn dim_top_e(n: i64, p: Prime) -> u64 {
    let pp = p.get() as i64;
    if n < 0 {
        0
    } else if n < pp {
        1
    } else {
        (n - pp + 1) as u64
    }
}

fn dim_at_level(alpha: &Rational, level: u32, p: Prime) -> u64 {
    let scaled = (alpha * p.pow(level as i64)).floor().to_integer();
    match scaled.to_i64() {
        Some(n) => dim_top_e(n, p),
        None if scaled.is_negative() => 0,
        None => panic!("dimension count overflows i64"),
    }
}

/// How the levels were computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DimMode {
    /// `deg D < 0`: `H⁰(D) = 0`.
    Negative,
    /// `deg D = 0`: constants when principal, else zero.
    Zero { principal: bool },
    /// `D + (f) = α{1}` with `α = deg D`.
    Exact { alpha: Rational, shift: CpFunction },
    /// `α₁ < deg D < α₂` with `α_j ∈ H_p` and `χ(α_j) = χ(D)`.
    Sandwich { lower: Rational, upper: Rational },
}

/// One level `ρ = p^n` of the filtration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimLevel {
    pub n: u32,
    pub dim_lower: u64,
    pub dim_upper: u64,
    /// `p^{-n} dim`, lower and upper.
    pub normalized_lower: Rational,
    pub normalized_upper: Rational,
    /// Largest distance from the normalized bounds to the limit.
    pub deviation: Rational,
    /// True when the count is known to be exact at this level.
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuousDim {
    pub degree: Rational,
    pub limit: Rational,
    pub mode: DimMode,
    pub levels: Vec<DimLevel>,
}

impl ContinuousDim {
    pub fn last(&self) -> &DimLevel {
        self.levels.last().expect("at least level 0")
    }
}

/// Closest `a / p^k` to `δ` strictly below (`upward = false`) or above, with `a ≡ c (mod p-1)`.
fn hp_neighbour(delta: &Rational, c: u64, k: u32, p: Prime, upward: bool) -> Rational {
    let scale = p.pow(k as i64);
    let x = delta * &scale;
    let m = BigInt::from(p.get() - 1);
    let c = BigInt::from(c);
    let mut a = if upward { x.floor().to_integer() + 1 } else { x.ceil().to_integer() - 1 };
    while !num_integer::Integer::mod_floor(&(&a - &c), &m).is_zero() {
        if upward {
            a += 1;
        } else {
            a -= 1;
        }
    }
    Rational::from_integer(a) / scale
}

/// The sequence `p^{-n} dim_top(H⁰(D)^{p^n})` for `n = 0..=n_max` and its limit.
pub fn continuous_dim(d: &Divisor, n_max: u32) -> Result<ContinuousDim> {
    let p = d.prime();
    let delta = d.degree();
    let mut levels = Vec::with_capacity(n_max as usize + 1);
    let level = |n: u32, lo: u64, hi: u64, limit: &Rational, exact: bool| {
        let scale = p.pow(-(n as i64));
        let nl = Rational::from_integer(lo.into()) * &scale;
        let nu = Rational::from_integer(hi.into()) * &scale;
        let deviation = (&nl - limit).abs().max((&nu - limit).abs());
        DimLevel { n, dim_lower: lo, dim_upper: hi, normalized_lower: nl, normalized_upper: nu, deviation, exact }
    };
    let (mode, limit) = if delta.is_negative() {
        let limit = Rational::zero();
        for n in 0..=n_max {
            levels.push(level(n, 0, 0, &limit, true));
        }
        (DimMode::Negative, limit)
    } else if delta.is_zero() {
        let principal = d.is_principal();
        let limit = Rational::zero();
        let dim = u64::from(principal);
        for n in 0..=n_max {
            levels.push(level(n, dim, dim, &limit, true));
        }
        (DimMode::Zero { principal }, limit)
    } else {
        let chi = d.chi();
        let reachable = HpScalar::from_rational(p, &delta).map(|a| a.chi() == chi).unwrap_or(false);
        if reachable {
            let target = Divisor::single(p, &Rational::one(), HpScalar::from_rational(p, &delta)?)?;
            let shift = solve_divisor(&(&target - d), None)?;
            let norm = p_norm(&shift);
            for n in 0..=n_max {
                let dim = dim_at_level(&delta, n, p);
                levels.push(level(n, dim, dim, &delta, norm <= p.pow(n as i64)));
            }
            (DimMode::Exact { alpha: delta.clone(), shift }, delta.clone())
        } else {
            let lower = hp_neighbour(&delta, chi.residue(), n_max, p, false);
            let upper = hp_neighbour(&delta, chi.residue(), n_max, p, true);
            for n in 0..=n_max {
                let lo = dim_at_level(&lower, n, p);
                let hi = dim_at_level(&upper, n, p);
                levels.push(level(n, lo, hi, &delta, false));
            }
            (DimMode::Sandwich { lower, upper }, delta.clone())
        }
    };
    Ok(ContinuousDim { degree: delta, limit, mode, levels })
}

/// Outcome of checking `Dim(H⁰(D)) − Dim(H⁰(−D)) = deg D` at level `n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RrReport {
    pub positive: ContinuousDim,
    pub negative: ContinuousDim,
    pub degree: Rational,
    pub lhs_lower: Rational,
    pub lhs_upper: Rational,
    pub bound: Rational,
    pub holds: bool,
}

pub fn rr_check(d: &Divisor, n_max: u32) -> Result<RrReport> {
    let p = d.prime();
    let positive = continuous_dim(d, n_max)?;
    let negative = continuous_dim(&-d, n_max)?;
    let (a, b) = (positive.last(), negative.last());
    let lhs_lower = &a.normalized_lower - &b.normalized_upper;
    let lhs_upper = &a.normalized_upper - &b.normalized_lower;
    let degree = d.degree();
    let scale = p.pow(-(n_max as i64));
    let integral = |x: &Rational| (x * p.pow(n_max as i64)).is_integer();
    let tight = integral(&degree) && !matches!(positive.mode, DimMode::Sandwich { .. });
    let slack = if tight { p.get() - 1 } else { p.get() };
    let bound = Rational::from_integer(slack.into()) * scale;
    let holds = &lhs_lower - &bound <= degree && degree <= &lhs_upper + &bound;
    Ok(RrReport { positive, negative, degree, lhs_lower, lhs_upper, bound, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use alloc::vec;

    fn p3() -> Prime {
        Prime::new(3).unwrap()
    }

    fn hp(a: i64) -> HpScalar {
        HpScalar::from_integer(p3(), a)
    }

    #[test]
    fn norms() {
        let f = CpFunction::from_pieces(p3(), int(0), vec![int(2)], &[hp(-1), hp(1)]).unwrap();
        assert_eq!(p_norm(&f), int(1));
        assert_eq!(p_norm(&CpFunction::constant(p3(), int(4))), int(0));
        let g = f.frobenius_abs(&HpScalar::new(p3(), 1, 2)).unwrap();
        assert_eq!(p_norm(&g), int(9));
        let h = f.frobenius_abs(&hp(3)).unwrap();
        assert_eq!(p_norm(&h), rat(1, 3));
    }

    #[test]
    fn phi_example() {
        let p = p3();
        let gens = phi_generators(10, p).unwrap();
        assert_eq!(gens.len(), 8);
        assert_eq!(gens[0], CpFunction::constant(p, int(0)));
        assert_eq!(gens[1].breaks(), &[rat(5, 2)]);
        assert_eq!(gens[1].slopes(), vec![hp(-1), hp(3)]);
        assert!(gens.iter().all(|g| in_e(g, 10)));
        assert!(phi_generators(2, p).is_err());
    }

    #[test]
    fn dims() {
        let p = p3();
        assert_eq!(dim_top_e(10, p), 8);
        assert_eq!(dim_top_e(3, p), 1);
        assert_eq!(dim_top_e(2, p), 1);
        assert_eq!(dim_top_e(-1, p), 0);
    }

    #[test]
    fn gamma_of_generator() {
        let gens = phi_generators(10, p3()).unwrap();
        let g = gamma_coords(&gens[3], 10).unwrap();
        assert_eq!(g[3], int(0));
        let coords: Vec<MaxPlus> = g.into_iter().map(MaxPlus::Finite).collect();
        assert_eq!(sigma(&coords, 10, p3()).unwrap(), gens[3]);
    }

    #[test]
    fn simplex_roundtrip() {
        let p = p3();
        let ts: Vec<Rational> = [int(2), rat(1, 40), rat(1, 30), rat(1, 20), rat(1, 10), rat(1, 8), rat(1, 6), rat(1, 5)]
            .into_iter()
            .collect();
        let h = simplex_map(&ts, 10, p).unwrap();
        assert!(in_e(&h, 10));
        assert_eq!(simplex_inverse(&h, 10).unwrap(), ts);
    }

    #[test]
    fn four_point_sequence() {
        let p = p3();
        let d = Divisor::single(p, &int(1), hp(4)).unwrap();
        let cd = continuous_dim(&d, 6).unwrap();
        for lvl in &cd.levels {
            let three_n = p.pow(lvl.n as i64);
            assert_eq!(lvl.normalized_lower, (int(4) * &three_n - int(2)) / &three_n);
            assert_eq!(lvl.deviation, int(2) / &three_n);
            assert!(lvl.exact);
        }
        let r = rr_check(&d, 6).unwrap();
        assert!(r.holds);
        assert!(r.negative.levels.iter().all(|l| l.dim_upper == 0));
    }

    #[test]
    fn zero_degree() {
        let p = p3();
        let cd = continuous_dim(&Divisor::new(p), 3).unwrap();
        assert!(cd.levels.iter().all(|l| l.dim_lower == 1));
        assert!(rr_check(&Divisor::new(p), 3).unwrap().holds);
        let nonprincipal = Divisor::from_points(p, [(rat(3, 2), HpScalar::new(p, 4, 1)), (int(2), hp(-1))]).unwrap();
        let cd = continuous_dim(&nonprincipal, 3).unwrap();
        assert_eq!(cd.mode, DimMode::Zero { principal: false });
        assert!(cd.levels.iter().all(|l| l.dim_upper == 0));
    }

    #[test]
    fn sandwich_degree() {
        let p = p3();
        // degree 3/2, not in H_3
        let d = Divisor::single(p, &rat(3, 2), hp(1)).unwrap();
        let cd = continuous_dim(&d, 6).unwrap();
        let DimMode::Sandwich { lower, upper } = &cd.mode else { panic!("expected sandwich") };
        assert!(lower < &rat(3, 2) && &rat(3, 2) < upper);
        assert!(rr_check(&d, 6).unwrap().holds);
    }
}
