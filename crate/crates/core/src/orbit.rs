//! The periodic orbit `C_p = R₊* / p^Z`: periodic functions, divisors and
//! the three Frobenius symmetries.
//!
//! Points are represented by their canonical representative in `[1, p)`. A
//! divisor stores at each point `λ` a coefficient `k ∈ H_p`; the group value at
//! that point is `λ k`. Moving a representative to `λ p^j` divides `k` by `p^j`.

use alloc::collections::btree_map::{self, BTreeMap};
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{CoreError, Result};
use crate::exact::{ChiClass, HpScalar, Prime, Rational};
use crate::pa::PaFunction;

/// Canonical representative of `λ p^Z` in `[1, p)` together with the exponent
/// `j` such that the representative is `λ p^j`.
pub fn canonical_point(p: Prime, lambda: &Rational) -> Result<(Rational, i64)> {
    if !lambda.is_positive() {
        return Err(CoreError::NonPositiveParameter(lambda.to_string()));
    }
    let pr = p.as_rational();
    let mut x = lambda.clone();
    let mut j = 0i64;
    while x < Rational::one() {
        x *= &pr;
        j += 1;
    }
    while x >= pr {
        x /= &pr;
        j -= 1;
    }
    Ok((x, j))
}

/// Canonical representative of `h p^Z` in `[1, p)` for `h ∈ H_p`, `h > 0`.
pub fn canonical_class(h: &HpScalar) -> Result<HpScalar> {
    if !h.is_positive() {
        return Err(CoreError::NonPositiveParameter(h.to_string()));
    }
    let (_, j) = canonical_point(h.prime(), &h.to_rational())?;
    Ok(h.mul_p_pow(j))
}

/// A function in `K(C_p)`, stored by its restriction to `[1, p]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CpFunction {
    p: Prime,
    f: PaFunction,
}

impl CpFunction {
    /// Validates domain `[1, p]`, periodicity `f(1) = f(p)` and slopes in `H_p`.
    pub fn new(p: Prime, f: PaFunction) -> Result<Self> {
        let pr = p.as_rational();
        if !f.lo().is_one() || f.hi() != &pr {
            return Err(CoreError::InvalidDomain(format!("[{}, {}], expected [1, {p}]", f.lo(), f.hi())));
        }
        if f.is_bottom() {
            return Err(CoreError::Bottom);
        }
        let a = f.eval(&Rational::one())?;
        let b = f.eval(&pr)?;
        if a != b {
            return Err(CoreError::NotPeriodic(a.to_string(), b.to_string()));
        }
        for s in f.slopes() {
            HpScalar::from_rational(p, s)?;
        }
        Ok(CpFunction { p, f })
    }

    pub fn from_pieces(p: Prime, anchor: Rational, breaks: Vec<Rational>, slopes: &[HpScalar]) -> Result<Self> {
        let slopes = slopes.iter().map(HpScalar::to_rational).collect();
        Self::new(p, PaFunction::from_pieces(Rational::one(), p.as_rational(), anchor, breaks, slopes)?)
    }

    pub fn constant(p: Prime, c: Rational) -> Self {
        CpFunction { p, f: PaFunction::constant(Rational::one(), p.as_rational(), c).expect("valid domain") }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    /// Restriction to the fundamental domain `[1, p]`.
    pub fn restriction(&self) -> &PaFunction {
        &self.f
    }

    pub fn breaks(&self) -> &[Rational] {
        self.f.breaks()
    }

    pub fn slopes(&self) -> Vec<HpScalar> {
        self.f.slopes().iter().map(|s| HpScalar::from_rational(self.p, s).expect("validated")).collect()
    }

    pub fn first_slope(&self) -> HpScalar {
        self.slopes().remove(0)
    }

    pub fn last_slope(&self) -> HpScalar {
        self.slopes().pop().expect("non-empty")
    }

    pub fn is_constant(&self) -> bool {
        self.f.slopes().len() == 1 && self.f.slopes()[0].is_zero()
    }

    pub fn value_at_one(&self) -> Rational {
        self.f.anchor().expect("finite").clone()
    }

    /// `f(λ)` for any `λ > 0`.
    pub fn eval(&self, lambda: &Rational) -> Result<Rational> {
        let (x, _) = canonical_point(self.p, lambda)?;
        self.f.eval(&x)
    }

    /// The restriction of `f` to an arbitrary window `[a, b] ⊂ (0, ∞)`.
    pub fn window(&self, a: &Rational, b: &Rational) -> Result<PaFunction> {
        if !a.is_positive() || a >= b {
            return Err(CoreError::InvalidDomain(format!("[{a}, {b}]")));
        }
        let (_, ja) = canonical_point(self.p, a)?;
        // the copy of the fundamental domain containing a is [p^-ja, p^(1-ja)]
        let mut j = -ja;
        let mut acc = self.f.rescale_domain(&self.p.pow(-j))?;
        while acc.hi() < b {
            j += 1;
            acc = acc.concat(&self.f.rescale_domain(&self.p.pow(-j))?)?;
        }
        acc.restrict(a, b)
    }

    fn wrap(&self, f: PaFunction) -> Result<Self> {
        Self::new(self.p, f)
    }

    fn same_prime(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(CoreError::InvalidArgument(format!("primes differ: {} vs {}", self.p, other.p)));
        }
        Ok(())
    }

    /// Pointwise max.
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        self.wrap(self.f.trop_add(&other.f)?)
    }

    /// Pointwise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        self.wrap(self.f.trop_mul(&other.f)?)
    }

    pub fn neg(&self) -> Self {
        CpFunction { p: self.p, f: self.f.neg().expect("finite") }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn add_constant(&self, c: &Rational) -> Self {
        CpFunction { p: self.p, f: self.f.add_affine(&Rational::zero(), c).expect("finite") }
    }

    /// Max distance `max_{[1,p]} |f - g|`.
    pub fn distance(&self, other: &Self) -> Result<Rational> {
        self.same_prime(other)?;
        self.f.distance(&other.f)
    }

    /// The principal divisor `(f)`.
    pub fn divisor(&self) -> Divisor {
        let mut d = Divisor::new(self.p);
        let slopes = self.slopes();
        for (i, b) in self.f.breaks().iter().enumerate() {
            d.insert_canonical(b.clone(), &slopes[i + 1] - &slopes[i]);
        }
        let pp = HpScalar::from_integer(self.p, self.p.get());
        let seam = &slopes[0] - &(&pp * &slopes[slopes.len() - 1]);
        d.insert_canonical(Rational::one(), seam);
        d
    }

    /// `λ ↦ μ f(λ / μ)`.
    pub fn frobenius_arith(&self, mu: &Rational) -> Result<Self> {
        if !mu.is_positive() {
            return Err(CoreError::NonPositiveParameter(mu.to_string()));
        }
        let inv = mu.recip();
        let w = self.window(&inv, &(&inv * self.p.as_rational()))?;
        self.wrap(w.scale_values(mu)?.rescale_domain(&inv)?)
    }

    /// `λ ↦ f(h λ)`; only the class of `h` modulo `p^Z` matters.
    pub fn frobenius_rel(&self, h: &HpScalar) -> Result<Self> {
        let h = canonical_class(h)?.to_rational();
        let w = self.window(&h, &(&h * self.p.as_rational()))?;
        self.wrap(w.rescale_domain(&h)?)
    }

    /// `λ ↦ h f(λ)`.
    pub fn frobenius_abs(&self, h: &HpScalar) -> Result<Self> {
        if !h.is_positive() {
            return Err(CoreError::NonPositiveParameter(h.to_string()));
        }
        self.wrap(self.f.scale_values(&h.to_rational())?)
    }
}

impl fmt::Display for CpFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C_{}: {}", self.p, self.f)
    }
}

/// A divisor on `C_p`: finitely many canonical points with nonzero `H_p` coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Divisor {
    p: Prime,
    points: BTreeMap<Rational, HpScalar>,
}

impl Divisor {
    pub fn new(p: Prime) -> Self {
        Divisor { p, points: BTreeMap::new() }
    }

    /// `k {λ}`, i.e. value `λ k` at the class of `λ`.
    pub fn single(p: Prime, lambda: &Rational, k: HpScalar) -> Result<Self> {
        let mut d = Self::new(p);
        d.add_point(lambda, k)?;
        Ok(d)
    }

    /// Builds from `(λ, k)` pairs; repeated classes are summed.
    pub fn from_points<I>(p: Prime, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, HpScalar)>,
    {
        let mut d = Self::new(p);
        for (l, k) in points {
            d.add_point(&l, k)?;
        }
        Ok(d)
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    /// Adds `k` at `λ` (any positive rational), rescaling `k` to the canonical point.
    pub fn add_point(&mut self, lambda: &Rational, k: HpScalar) -> Result<()> {
        if k.prime() != self.p {
            return Err(CoreError::InvalidArgument(format!("coefficient over {} in divisor over {}", k.prime(), self.p)));
        }
        let (x, j) = canonical_point(self.p, lambda)?;
        self.insert_canonical(x, k.mul_p_pow(-j));
        Ok(())
    }

    fn insert_canonical(&mut self, x: Rational, k: HpScalar) {
        if k.is_zero() {
            return;
        }
        match self.points.entry(x) {
            btree_map::Entry::Vacant(e) => {
                e.insert(k);
            }
            btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &k;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// `(λ, k)` with `λ ∈ [1, p)` ascending.
    pub fn iter(&self) -> impl Iterator<Item = (&Rational, &HpScalar)> {
        self.points.iter()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Coefficient at the class of `λ` (zero when absent), expressed at the canonical point.
    pub fn coefficient(&self, lambda: &Rational) -> Result<HpScalar> {
        let (x, _) = canonical_point(self.p, lambda)?;
        Ok(self.points.get(&x).cloned().unwrap_or_else(|| HpScalar::zero(self.p)))
    }

    /// `Σ λ k`.
    pub fn degree(&self) -> Rational {
        self.points.iter().map(|(l, k)| l * k.to_rational()).fold(Rational::zero(), |a, b| a + b)
    }

    /// `Σ χ(k)`.
    pub fn chi(&self) -> ChiClass {
        self.points.values().fold(ChiClass::zero(self.p), |acc, k| acc + k.chi())
    }

    /// `Σ k` as an element of `H_p`.
    pub fn coefficient_sum(&self) -> HpScalar {
        self.points.values().fold(HpScalar::zero(self.p), |acc, k| &acc + k)
    }

    pub fn is_effective(&self) -> bool {
        self.points.values().all(HpScalar::is_positive)
    }

    /// `deg = 0` and `χ = 0`.
    pub fn is_principal(&self) -> bool {
        self.degree().is_zero() && self.chi().is_zero()
    }

    /// Splits into `(D₊, D₋)` with `D = D₊ - D₋`, both effective.
    pub fn split(&self) -> (Divisor, Divisor) {
        let mut pos = Divisor::new(self.p);
        let mut neg = Divisor::new(self.p);
        for (l, k) in &self.points {
            if k.is_positive() {
                pos.points.insert(l.clone(), k.clone());
            } else {
                neg.points.insert(l.clone(), -k);
            }
        }
        (pos, neg)
    }

    fn map_points<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&Rational, &HpScalar) -> (Rational, HpScalar),
    {
        let mut d = Divisor::new(self.p);
        for (l, k) in &self.points {
            let (l2, k2) = f(l, k);
            d.add_point(&l2, k2)?;
        }
        Ok(d)
    }

    /// Multiplies every coefficient by `h ∈ H_p`.
    pub fn scale(&self, h: &HpScalar) -> Result<Self> {
        self.map_points(|l, k| (l.clone(), k * h))
    }

    /// Image under `Fr^a_μ`: points move to `μλ`, coefficients unchanged.
    pub fn frobenius_arith(&self, mu: &Rational) -> Result<Self> {
        if !mu.is_positive() {
            return Err(CoreError::NonPositiveParameter(mu.to_string()));
        }
        self.map_points(|l, k| (l * mu, k.clone()))
    }

    /// Image under `Fr^r_h`: points move to `λ/h`, coefficients multiply by `h`.
    pub fn frobenius_rel(&self, h: &HpScalar) -> Result<Self> {
        let h = canonical_class(h)?;
        let hr = h.to_rational();
        self.map_points(|l, k| (l / &hr, k * &h))
    }

    /// Image under `Fr_h`: support fixed, coefficients multiply by `h`.
    pub fn frobenius_abs(&self, h: &HpScalar) -> Result<Self> {
        if !h.is_positive() {
            return Err(CoreError::NonPositiveParameter(h.to_string()));
        }
        self.scale(h)
    }

    fn combine(&self, other: &Self, sign: bool) -> Self {
        assert_eq!(self.p, other.p, "divisors over different primes");
        let mut d = self.clone();
        for (l, k) in &other.points {
            d.insert_canonical(l.clone(), if sign { k.clone() } else { -k });
        }
        d
    }
}

impl Add for &Divisor {
    type Output = Divisor;
    fn add(self, rhs: &Divisor) -> Divisor {
        self.combine(rhs, true)
    }
}

impl Sub for &Divisor {
    type Output = Divisor;
    fn sub(self, rhs: &Divisor) -> Divisor {
        self.combine(rhs, false)
    }
}

impl Neg for &Divisor {
    type Output = Divisor;
    fn neg(self) -> Divisor {
        Divisor { p: self.p, points: self.points.iter().map(|(l, k)| (l.clone(), -k)).collect() }
    }
}

impl Add for Divisor {
    type Output = Divisor;
    fn add(self, rhs: Divisor) -> Divisor {
        &self + &rhs
    }
}

impl Sub for Divisor {
    type Output = Divisor;
    fn sub(self, rhs: Divisor) -> Divisor {
        &self - &rhs
    }
}

impl Neg for Divisor {
    type Output = Divisor;
    fn neg(self) -> Divisor {
        -&self
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.points.is_empty() {
            return write!(f, "0");
        }
        for (i, (l, k)) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({k}){{{l}}}")?;
        }
        Ok(())
    }
}

/// A function `f` with `(f) = D`, normalized so that `f` vanishes at the
/// smallest support point, then shifted by `constant`.
pub fn solve_divisor(d: &Divisor, constant: Option<&Rational>) -> Result<CpFunction> {
    let p = d.prime();
    let c = constant.cloned().unwrap_or_else(Rational::zero);
    if !d.is_principal() {
        return Err(CoreError::NotPrincipal { degree: d.degree().to_string(), chi: d.chi().residue() });
    }
    if d.is_empty() {
        return Ok(CpFunction::constant(p, c));
    }
    let sigma = d.coefficient_sum().to_rational();
    let last = HpScalar::from_rational(p, &(sigma / (Rational::one() - p.as_rational())))?;
    let interior: Vec<(&Rational, &HpScalar)> = d.iter().filter(|(l, _)| !l.is_one()).collect();
    let mut slopes = Vec::with_capacity(interior.len() + 1);
    slopes.push(last);
    for (_, a) in interior.iter().rev() {
        let next = slopes.last().expect("non-empty") - *a;
        slopes.push(next);
    }
    slopes.reverse();
    let breaks = interior.iter().map(|(l, _)| (*l).clone()).collect();
    let f = CpFunction::from_pieces(p, Rational::zero(), breaks, &slopes)?;
    let lambda0 = d.iter().next().expect("non-empty").0.clone();
    let shift = &c - f.eval(&lambda0)?;
    Ok(f.add_constant(&shift))
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

    fn example() -> CpFunction {
        CpFunction::from_pieces(p3(), int(0), vec![int(2)], &[hp(-1), hp(1)]).unwrap()
    }

    #[test]
    fn divisor_of_example() {
        let d = example().divisor();
        let pts: Vec<_> = d.iter().map(|(l, k)| (l.clone(), k.clone())).collect();
        assert_eq!(pts, vec![(int(1), hp(-4)), (int(2), hp(2))]);
        assert_eq!(d.degree(), int(0));
        assert!(d.chi().is_zero());
        assert!(CpFunction::constant(p3(), int(7)).divisor().is_empty());
    }

    #[test]
    fn solve_example() {
        let d = Divisor::from_points(p3(), [(int(1), hp(-4)), (int(2), hp(2))]).unwrap();
        let f = solve_divisor(&d, None).unwrap();
        assert_eq!(f, example());
        assert_eq!(f.divisor(), d);
        let empty = solve_divisor(&Divisor::new(p3()), None).unwrap();
        assert_eq!(empty, CpFunction::constant(p3(), int(0)));
        let bad = Divisor::single(p3(), &int(1), hp(3)).unwrap();
        assert!(matches!(solve_divisor(&bad, None), Err(CoreError::NotPrincipal { .. })));
    }

    #[test]
    fn solve_normalizes_at_first_support_point() {
        // value 2 at 3/2 and -2 at 2 (k = 4/3 and -1)
        let p = p3();
        let d = Divisor::from_points(p, [(rat(3, 2), HpScalar::new(p, 4, 1)), (int(2), hp(-1))]).unwrap();
        assert!(d.degree().is_zero());
        assert!(!d.chi().is_zero());
        let d = Divisor::from_points(p, [(rat(3, 2), hp(2)), (int(2), hp(-3)), (int(1), hp(3))]).unwrap();
        assert!(d.is_principal());
        let f = solve_divisor(&d, Some(&int(5))).unwrap();
        assert_eq!(f.divisor(), d);
        assert_eq!(f.eval(&int(1)).unwrap(), int(5));
    }

    #[test]
    fn points_canonicalize() {
        let p = p3();
        let d = Divisor::single(p, &int(6), hp(1)).unwrap();
        let (l, k) = d.iter().next().unwrap();
        assert_eq!(l, &int(2));
        assert_eq!(k, &hp(3));
        assert_eq!(d.degree(), int(6));
        let e = Divisor::single(p, &rat(2, 9), hp(1)).unwrap();
        assert_eq!(e.coefficient(&int(2)).unwrap(), HpScalar::new(p, 1, 2));
    }

    #[test]
    fn periodic_evaluation_and_windows() {
        let f = example();
        assert_eq!(f.eval(&int(6)).unwrap(), f.eval(&int(2)).unwrap());
        assert_eq!(f.eval(&rat(2, 3)).unwrap(), int(-1));
        let w = f.window(&rat(1, 2), &int(5)).unwrap();
        assert_eq!(w.eval(&rat(2, 3)).unwrap(), int(-1));
        assert_eq!(w.eval(&int(4)).unwrap(), f.eval(&rat(4, 3)).unwrap());
    }

    #[test]
    fn frobenius_identities() {
        let f = example();
        let one = HpScalar::one(p3());
        assert_eq!(f.frobenius_arith(&int(1)).unwrap(), f);
        assert_eq!(f.frobenius_rel(&one).unwrap(), f);
        assert_eq!(f.frobenius_abs(&one).unwrap(), f);
        let h = HpScalar::new(p3(), 5, 1);
        let composed = f.frobenius_rel(&h).unwrap().frobenius_arith(&h.to_rational()).unwrap();
        assert_eq!(composed, f.frobenius_abs(&h).unwrap());
    }

    #[test]
    fn arithmetic_frobenius_doubles_degree_of_values() {
        let f = example();
        let g = f.frobenius_arith(&int(2)).unwrap();
        let d = f.divisor();
        assert_eq!(g.divisor(), d.frobenius_arith(&int(2)).unwrap());
        let (pos, _) = g.divisor().split();
        assert_eq!(pos.degree(), int(8));
        assert!(matches!(f.frobenius_arith(&int(0)), Err(CoreError::NonPositiveParameter(_))));
    }
}
