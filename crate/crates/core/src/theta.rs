//! The tropical theta function `θ` and the family `Θ_{h,μ}(λ) = μ θ(hλ/μ)`.
//!
//! `θ` has a breakpoint at every power of `p` and vanishes on `[1, p]`. It is
//! never materialized globally; callers ask for values or finite windows.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{CoreError, Result};
use crate::exact::{HpScalar, Prime, Rational};
use crate::orbit::{canonical_point, CpFunction, Divisor};
use crate::pa::PaFunction;

/// `θ(λ)` for `λ > 0`.
pub fn theta_eval(p: Prime, lambda: &Rational) -> Result<Rational> {
    if !lambda.is_positive() {
        return Err(CoreError::NonPositiveParameter(lambda.to_string()));
    }
    let pr = p.as_rational();
    let one = Rational::one();
    let mut total = Rational::zero();
    let mut x = lambda.clone();
    while x < one {
        total += &one - &x;
        x *= &pr;
    }
    let mut y = lambda / &pr;
    while y > one {
        total += &y - &one;
        y /= &pr;
    }
    Ok(total)
}

/// `θ` restricted to `[a, b]`, breakpoints exactly at the powers of `p` in `(a, b)`.
pub fn theta_window(p: Prime, a: &Rational, b: &Rational) -> Result<PaFunction> {
    if !a.is_positive() || a >= b {
        return Err(CoreError::InvalidDomain(format!("[{a}, {b}]")));
    }
    let pr = p.as_rational();
    let (_, j) = canonical_point(p, a)?;
    let mut x = p.pow(-j);
    while &x <= a {
        x *= &pr;
    }
    let mut knots = Vec::new();
    knots.push((a.clone(), theta_eval(p, a)?));
    while &x < b {
        knots.push((x.clone(), theta_eval(p, &x)?));
        x *= &pr;
    }
    knots.push((b.clone(), theta_eval(p, b)?));
    PaFunction::from_knots(&knots)
}

/// Parameters `(h, μ)` of `Θ_{h,μ}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThetaDatum {
    pub h: HpScalar,
    pub mu: Rational,
}

impl ThetaDatum {
    pub fn new(h: HpScalar, mu: Rational) -> Result<Self> {
        if !h.is_positive() {
            return Err(CoreError::NonPositiveParameter(h.to_string()));
        }
        if !mu.is_positive() {
            return Err(CoreError::NonPositiveParameter(mu.to_string()));
        }
        Ok(ThetaDatum { h, mu })
    }

    pub fn prime(&self) -> Prime {
        self.h.prime()
    }

    /// Replaces `h` by `h p^j` so that `h ≤ μ < p h`. Same divisor, different function.
    pub fn normalized(&self) -> Self {
        let (_, j) = canonical_point(self.prime(), &(&self.mu / self.h.to_rational())).expect("positive");
        ThetaDatum { h: self.h.mul_p_pow(-j), mu: self.mu.clone() }
    }

    pub fn is_normalized(&self) -> bool {
        let h = self.h.to_rational();
        h <= self.mu && self.mu < h * self.prime().as_rational()
    }

    /// `δ(h, μ)`: the point `μ/h` carrying the value `μ`.
    pub fn divisor(&self) -> Divisor {
        Divisor::single(self.prime(), &(&self.mu / self.h.to_rational()), self.h.clone()).expect("positive")
    }

    pub fn eval(&self, lambda: &Rational) -> Result<Rational> {
        let h = self.h.to_rational();
        Ok(&self.mu * theta_eval(self.prime(), &(h * lambda / &self.mu))?)
    }

    pub fn window(&self, a: &Rational, b: &Rational) -> Result<PaFunction> {
        let c = self.h.to_rational() / &self.mu;
        theta_window(self.prime(), &(a * &c), &(b * &c))?.rescale_domain(&c)?.scale_values(&self.mu)
    }
}

/// `Θ_{h,μ}(λ)`.
pub fn big_theta_eval(d: &ThetaDatum, lambda: &Rational) -> Result<Rational> {
    d.eval(lambda)
}

/// `Θ_{h,μ}` on `[a, b]`.
pub fn big_theta_window(d: &ThetaDatum, a: &Rational, b: &Rational) -> Result<PaFunction> {
    d.window(a, b)
}

/// `f(λ) = Σ Θ_{h_i,μ_i}(λ) − Σ Θ_{h'_j,μ'_j}(λ) − hλ + c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThetaDecomposition {
    pub p: Prime,
    pub positives: Vec<ThetaDatum>,
    pub negatives: Vec<ThetaDatum>,
    pub linear_h: HpScalar,
    pub constant: Rational,
}

impl ThetaDecomposition {
    fn sum_h(data: &[ThetaDatum], p: Prime) -> HpScalar {
        data.iter().fold(HpScalar::zero(p), |acc, d| &acc + &d.h)
    }

    fn sum_mu(data: &[ThetaDatum]) -> Rational {
        data.iter().fold(Rational::zero(), |acc, d| acc + &d.mu)
    }

    /// Checks `Σμ = Σμ'` and `(p−1) h = Σh − Σh'`.
    pub fn check_balance(&self) -> Result<()> {
        let (m1, m2) = (Self::sum_mu(&self.positives), Self::sum_mu(&self.negatives));
        if m1 != m2 {
            return Err(CoreError::BalanceViolation(format!("sum of mu {m1} vs {m2}")));
        }
        let lhs = self.linear_h.to_rational() * (self.p.as_rational() - Rational::one());
        let rhs = (&Self::sum_h(&self.positives, self.p) - &Self::sum_h(&self.negatives, self.p)).to_rational();
        if lhs != rhs {
            return Err(CoreError::BalanceViolation(format!("(p-1)h = {lhs} but sum of h = {rhs}")));
        }
        Ok(())
    }

    /// Value of the theta sum at `λ`, without the periodicity check.
    pub fn eval(&self, lambda: &Rational) -> Result<Rational> {
        let mut v = &self.constant - self.linear_h.to_rational() * lambda;
        for d in &self.positives {
            v += d.eval(lambda)?;
        }
        for d in &self.negatives {
            v -= d.eval(lambda)?;
        }
        Ok(v)
    }
}

/// Canonical decomposition of `f`, with every datum normalized.
pub fn theta_decompose(f: &CpFunction) -> Result<ThetaDecomposition> {
    let p = f.prime();
    let (pos, neg) = f.divisor().split();
    let data = |d: &Divisor| -> Result<Vec<ThetaDatum>> {
        d.iter().map(|(l, k)| ThetaDatum::new(k.clone(), l * k.to_rational())).collect()
    };
    let positives = data(&pos)?;
    let negatives = data(&neg)?;
    let diff = (&pos.coefficient_sum() - &neg.coefficient_sum()).to_rational();
    let linear_h = HpScalar::from_rational(p, &(diff / (p.as_rational() - Rational::one())))?;
    let mut dec = ThetaDecomposition { p, positives, negatives, linear_h, constant: Rational::zero() };
    let one = Rational::one();
    dec.constant = f.eval(&one)? - dec.eval(&one)?;
    Ok(dec)
}

/// The periodic function described by balanced theta data.
pub fn theta_reconstruct(d: &ThetaDecomposition) -> Result<CpFunction> {
    let p = d.p;
    if d.positives.iter().chain(&d.negatives).any(|t| t.prime() != p) || d.linear_h.prime() != p {
        return Err(CoreError::InvalidArgument("theta data over mixed primes".into()));
    }
    d.check_balance()?;
    let one = Rational::one();
    let pr = p.as_rational();
    let mut acc = PaFunction::affine(one.clone(), pr.clone(), -d.linear_h.to_rational(), &d.constant - d.linear_h.to_rational())?;
    for t in &d.positives {
        acc = acc.trop_mul(&t.window(&one, &pr)?)?;
    }
    for t in &d.negatives {
        acc = acc.sub(&t.window(&one, &pr)?)?;
    }
    CpFunction::new(p, acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use alloc::vec;

    fn p3() -> Prime {
        Prime::new(3).unwrap()
    }

    #[test]
    fn theta_values() {
        let p = p3();
        for x in [int(1), rat(3, 2), int(2), int(3)] {
            assert_eq!(theta_eval(p, &x).unwrap(), int(0));
        }
        assert_eq!(theta_eval(p, &rat(1, 3)).unwrap(), rat(2, 3));
        assert_eq!(theta_eval(p, &rat(1, 2)).unwrap(), rat(1, 2));
        assert!(theta_eval(p, &int(0)).is_err());
    }

    #[test]
    fn theta_windows() {
        let p = p3();
        let w = theta_window(p, &int(1), &int(3)).unwrap();
        assert_eq!(w, PaFunction::constant(int(1), int(3), int(0)).unwrap());
        let w = theta_window(p, &rat(1, 9), &int(1)).unwrap();
        assert_eq!(w.breaks(), &[rat(1, 3)]);
        assert_eq!(w.slopes(), &[int(-4), int(-1)]);
        let w = theta_window(p, &rat(1, 10), &int(30)).unwrap();
        assert!(w.is_convex());
        assert_eq!(w.breaks(), &[rat(1, 9), rat(1, 3), int(1), int(3), int(9), int(27)]);
    }

    #[test]
    fn big_theta_example() {
        let d = ThetaDatum::new(HpScalar::from_integer(p3(), 2), int(4)).unwrap();
        assert_eq!(d.eval(&int(1)).unwrap(), int(2));
        let w = d.window(&int(1), &int(3)).unwrap();
        assert_eq!(w.eval(&int(1)).unwrap(), int(2));
        assert_eq!(w.eval(&rat(5, 2)).unwrap(), d.eval(&rat(5, 2)).unwrap());
    }

    #[test]
    fn decomposition_example() {
        let p = p3();
        let hp = |a| HpScalar::from_integer(p, a);
        let f = CpFunction::from_pieces(p, int(0), vec![int(2)], &[hp(-1), hp(1)]).unwrap();
        let dec = theta_decompose(&f).unwrap();
        assert_eq!(dec.positives, vec![ThetaDatum::new(hp(2), int(4)).unwrap()]);
        assert_eq!(dec.negatives, vec![ThetaDatum::new(hp(4), int(4)).unwrap()]);
        assert_eq!(dec.linear_h, hp(-1));
        assert_eq!(dec.constant, int(-3));
        assert_eq!(theta_reconstruct(&dec).unwrap(), f);
    }

    #[test]
    fn constant_and_unbalanced() {
        let p = p3();
        let dec = theta_decompose(&CpFunction::constant(p, int(5))).unwrap();
        assert!(dec.positives.is_empty() && dec.negatives.is_empty());
        assert!(dec.linear_h.is_zero());
        assert_eq!(dec.constant, int(5));
        let empty = ThetaDecomposition {
            p,
            positives: vec![],
            negatives: vec![],
            linear_h: HpScalar::zero(p),
            constant: int(0),
        };
        assert_eq!(theta_reconstruct(&empty).unwrap(), CpFunction::constant(p, int(0)));
        let bad = ThetaDecomposition {
            positives: vec![ThetaDatum::new(HpScalar::from_integer(p, 2), int(4)).unwrap()],
            linear_h: HpScalar::from_integer(p, 1),
            ..empty
        };
        assert!(matches!(theta_reconstruct(&bad), Err(CoreError::BalanceViolation(_))));
    }

    #[test]
    fn normalization_keeps_divisor() {
        let p = p3();
        let d = ThetaDatum::new(HpScalar::from_integer(p, 1), int(7)).unwrap();
        let n = d.normalized();
        assert!(n.is_normalized());
        assert_eq!(n.h, HpScalar::from_integer(p, 3));
        assert_eq!(n.divisor(), d.divisor());
    }
}
