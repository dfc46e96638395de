//! Exact scalars: big rationals, the ring `H_p = Z[1/p]`, p-adic norms and the
//! invariant `chi: H_p -> Z/(p-1)Z`.

use alloc::format;
use alloc::string::ToString;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{CoreError, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

/// `n / d` as an exact rational. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"a"`, `"-a/b"` or a finite decimal such as `"0.125"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || CoreError::InvalidArgument(format!("cannot parse rational {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let digits = frac.len() as u32;
        if digits == 0 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let w: BigInt = match whole.trim() {
            "" | "+" => BigInt::zero(),
            "-" => BigInt::zero(),
            w => w.parse().map_err(|_| bad())?,
        };
        let f: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = BigInt::from(10u32).pow(digits);
        let mag = w.abs() * &scale + f;
        let n = if negative { -mag } else { mag };
        return Ok(Rational::new(n, scale));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// A prime modulus. Validated on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(CoreError::NotPrime(p as u64));
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn as_integer(self) -> Integer {
        BigInt::from(self.0)
    }

    pub fn as_rational(self) -> Rational {
        Rational::from_integer(self.as_integer())
    }

    /// `p^j` for any integer `j`.
    pub fn pow(self, j: i64) -> Rational {
        let base = self.as_integer().pow(j.unsigned_abs() as u32);
        if j >= 0 {
            Rational::from_integer(base)
        } else {
            Rational::new(BigInt::one(), base)
        }
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Exponent of `p` in a non-zero integer.
pub fn valuation_integer(n: &Integer, p: Prime) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let p = p.as_integer();
    let mut v = 0;
    let mut m = n.abs();
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        m = q;
        v += 1;
    }
}

/// p-adic valuation of a non-zero rational.
pub fn valuation(q: &Rational, p: Prime) -> Option<i64> {
    let vn = valuation_integer(q.numer(), p)? as i64;
    let vd = valuation_integer(q.denom(), p).unwrap_or(0) as i64;
    Some(vn - vd)
}

/// `|q|_p = p^(-v_p(q))`, normalized so that `|p|_p = 1/p`; `|0|_p = 0`.
pub fn p_adic_norm(q: &Rational, p: Prime) -> Rational {
    match valuation(q, p) {
        None => Rational::zero(),
        Some(v) => p.pow(-v),
    }
}

/// Residue class modulo `p - 1`, the target of `chi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ChiClass {
    residue: u64,
    modulus: u64,
}

impl ChiClass {
    pub fn zero(p: Prime) -> Self {
        ChiClass { residue: 0, modulus: p.get() as u64 - 1 }
    }

    /// Reduces an arbitrary integer modulo `p - 1` into `{0, ..., p-2}`.
    pub fn from_integer(n: &Integer, p: Prime) -> Self {
        let modulus = p.get() as u64 - 1;
        let r = n.mod_floor(&BigInt::from(modulus));
        ChiClass { residue: r.to_u64().unwrap_or(0), modulus }
    }

    pub fn residue(self) -> u64 {
        self.residue
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.residue == 0
    }
}

impl Add for ChiClass {
    type Output = ChiClass;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        ChiClass { residue: (self.residue + rhs.residue) % self.modulus, modulus: self.modulus }
    }
}

impl Sub for ChiClass {
    type Output = ChiClass;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for ChiClass {
    type Output = ChiClass;
    fn neg(self) -> Self {
        ChiClass { residue: (self.modulus - self.residue) % self.modulus, modulus: self.modulus }
    }
}

impl Mul for ChiClass {
    type Output = ChiClass;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        ChiClass { residue: (self.residue * rhs.residue) % self.modulus, modulus: self.modulus }
    }
}

impl fmt::Display for ChiClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.residue, self.modulus)
    }
}

/// An element `a / p^k` of `H_p`, kept in canonical form (`k = 0` or `p` does
/// not divide `a`; zero is `0 / p^0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HpScalar {
    p: Prime,
    a: Integer,
    k: u32,
}

impl HpScalar {
    /// Canonical form of `a / p^k`.
    pub fn new(p: Prime, a: impl Into<Integer>, k: u32) -> Self {
        let mut a = a.into();
        let mut k = k;
        if a.is_zero() {
            return HpScalar { p, a, k: 0 };
        }
        let pp = p.as_integer();
        while k > 0 {
            let (q, r) = a.div_rem(&pp);
            if !r.is_zero() {
                break;
            }
            a = q;
            k -= 1;
        }
        HpScalar { p, a, k }
    }

    /// Checked variant taking a signed exponent.
    pub fn canonicalize(p: Prime, a: impl Into<Integer>, k: i64) -> Result<Self> {
        let k = u32::try_from(k).map_err(|_| CoreError::NegativeExponent(k))?;
        Ok(Self::new(p, a, k))
    }

    pub fn zero(p: Prime) -> Self {
        HpScalar { p, a: Integer::zero(), k: 0 }
    }

    pub fn one(p: Prime) -> Self {
        Self::from_integer(p, 1)
    }

    pub fn from_integer(p: Prime, n: impl Into<Integer>) -> Self {
        HpScalar { p, a: n.into(), k: 0 }
    }

    /// Exact conversion; fails when the reduced denominator is not a power of `p`.
    pub fn from_rational(p: Prime, q: &Rational) -> Result<Self> {
        let mut d = q.denom().clone();
        let pp = p.as_integer();
        let mut k = 0u32;
        while !d.is_one() {
            let (quo, r) = d.div_rem(&pp);
            if !r.is_zero() {
                return Err(CoreError::NotInHp(q.to_string()));
            }
            d = quo;
            k += 1;
        }
        Ok(HpScalar { p, a: q.numer().clone(), k })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn numerator(&self) -> &Integer {
        &self.a
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.a.clone(), self.p.as_integer().pow(self.k))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.a.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.a.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.k == 0
    }

    pub fn abs(&self) -> Self {
        HpScalar { p: self.p, a: self.a.abs(), k: self.k }
    }

    /// `chi(a / p^k) = a mod (p - 1)`.
    pub fn chi(&self) -> ChiClass {
        ChiClass::from_integer(&self.a, self.p)
    }

    pub fn valuation(&self) -> Option<i64> {
        valuation_integer(&self.a, self.p).map(|v| v as i64 - self.k as i64)
    }

    pub fn p_adic_norm(&self) -> Rational {
        match self.valuation() {
            None => Rational::zero(),
            Some(v) => self.p.pow(-v),
        }
    }

    /// Multiplication by `p^j`.
    pub fn mul_p_pow(&self, j: i64) -> Self {
        if j >= 0 {
            let cancel = (j as u32).min(self.k);
            let rest = self.p.as_integer().pow(j as u32 - cancel);
            Self::new(self.p, &self.a * rest, self.k - cancel)
        } else {
            Self::new(self.p, self.a.clone(), self.k + j.unsigned_abs() as u32)
        }
    }

    /// Exact quotient; fails unless the result lies in `H_p`.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(CoreError::InvalidArgument("division by zero".into()));
        }
        Self::from_rational(self.p, &(self.to_rational() / rhs.to_rational()))
    }

    fn common(&self, rhs: &Self) -> (Integer, Integer, u32) {
        assert_eq!(self.p, rhs.p, "H_p scalars over different primes");
        let k = self.k.max(rhs.k);
        let pp = self.p.as_integer();
        let a = &self.a * pp.clone().pow(k - self.k);
        let b = &rhs.a * pp.pow(k - rhs.k);
        (a, b, k)
    }
}

impl PartialOrd for HpScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HpScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.common(other);
        a.cmp(&b)
    }
}

impl<'a> Add<&'a HpScalar> for &'a HpScalar {
    type Output = HpScalar;
    fn add(self, rhs: &HpScalar) -> HpScalar {
        let (a, b, k) = self.common(rhs);
        HpScalar::new(self.p, a + b, k)
    }
}

impl<'a> Sub<&'a HpScalar> for &'a HpScalar {
    type Output = HpScalar;
    fn sub(self, rhs: &HpScalar) -> HpScalar {
        let (a, b, k) = self.common(rhs);
        HpScalar::new(self.p, a - b, k)
    }
}

impl<'a> Mul<&'a HpScalar> for &'a HpScalar {
    type Output = HpScalar;
    fn mul(self, rhs: &HpScalar) -> HpScalar {
        assert_eq!(self.p, rhs.p, "H_p scalars over different primes");
        HpScalar::new(self.p, &self.a * &rhs.a, self.k + rhs.k)
    }
}

impl Add for HpScalar {
    type Output = HpScalar;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Sub for HpScalar {
    type Output = HpScalar;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Mul for HpScalar {
    type Output = HpScalar;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Neg for HpScalar {
    type Output = HpScalar;
    fn neg(self) -> Self {
        HpScalar { p: self.p, a: -self.a, k: self.k }
    }
}

impl Neg for &HpScalar {
    type Output = HpScalar;
    fn neg(self) -> HpScalar {
        -(self.clone())
    }
}

impl fmt::Display for HpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 0 {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}/{}^{}", self.a, self.p, self.k)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        let h = HpScalar::new(p(3), 6, 1);
        assert_eq!((h.numerator().clone(), h.exponent()), (BigInt::from(2), 0));
        let z = HpScalar::new(p(3), 0, 5);
        assert_eq!((z.numerator().clone(), z.exponent()), (BigInt::from(0), 0));
        let c = HpScalar::new(p(5), 7, 2);
        assert_eq!((c.numerator().clone(), c.exponent()), (BigInt::from(7), 2));
        assert!(HpScalar::canonicalize(p(5), 7, -1).is_err());
    }

    #[test]
    fn chi_examples() {
        assert_eq!(HpScalar::new(p(3), 5, 2).chi().residue(), 1);
        assert_eq!(HpScalar::new(p(5), 7, 1).chi().residue(), 3);
        let h = HpScalar::new(p(3), 5, 2);
        assert_eq!(h.mul_p_pow(1).chi(), h.chi());
        assert_eq!(HpScalar::from_integer(p(5), -1).chi().residue(), 3);
        assert_eq!(HpScalar::from_integer(p(2), 7).chi().residue(), 0);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(HpScalar::from_integer(p(2), 2).p_adic_norm(), rat(1, 2));
        assert_eq!(HpScalar::zero(p(7)).p_adic_norm(), int(0));
        assert_eq!(HpScalar::new(p(3), 6, 2).p_adic_norm(), int(3));
        assert_eq!(p_adic_norm(&rat(6, 9), p(3)), int(3));
    }

    #[test]
    fn rational_conversion() {
        let h = HpScalar::from_rational(p(3), &rat(-10, 27)).unwrap();
        assert_eq!(h.to_rational(), rat(-10, 27));
        assert!(HpScalar::from_rational(p(3), &rat(1, 2)).is_err());
        assert_eq!(HpScalar::new(p(3), 2, 2).mul_p_pow(3).to_rational(), int(6));
        assert_eq!(HpScalar::new(p(3), 2, 0).mul_p_pow(-2).to_rational(), rat(2, 9));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("0.125").unwrap(), rat(1, 8));
        assert_eq!(parse_rational("-0.75").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational(" 4 ").unwrap(), int(4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn primes() {
        assert!(Prime::new(1).is_err());
        assert!(Prime::new(9).is_err());
        assert!(Prime::new(7).is_ok());
        assert_eq!(p(3).pow(-2), rat(1, 9));
    }
}
