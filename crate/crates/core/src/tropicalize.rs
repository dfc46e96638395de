//! Tropicalization of Laurent polynomials.
//!
//! Over a valued field only the coefficient valuations matter and
//! `τ(f)(x) = max_n (-n x - v(a_n))` is computed exactly. Over `C` the
//! circle average of `log |f|` is computed by trapezoid quadrature, and zeros
//! are located through the winding number, which is minus the slope of `τ`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Float, Signed, Zero};

use crate::error::{CoreError, Result};
use crate::exact::{valuation, Prime, Rational};
use crate::pa::{legendre_from_polygon, IntPolygon, PaFunction};

/// A Laurent polynomial known through `(exponent, valuation)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ValuedSeries {
    terms: BTreeMap<i64, Rational>,
}

impl ValuedSeries {
    pub fn new<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut map = BTreeMap::new();
        for (n, v) in terms {
            if map.insert(n, v).is_some() {
                return Err(CoreError::Malformed(format!("exponent {n} repeated")));
            }
        }
        if map.is_empty() {
            return Err(CoreError::EmptySeries);
        }
        Ok(ValuedSeries { terms: map })
    }

    /// Valuations of exact coefficients `(n, a_n)`; zero coefficients are dropped.
    pub fn from_coefficients<'a, I>(p: Prime, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, &'a Rational)>,
    {
        Self::new(coeffs.into_iter().filter_map(|(n, a)| valuation(a, p).map(|v| (n, Rational::from_integer(v.into())))))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(n, v)| (*n, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `f(X) ↦ f(X^n)`.
    pub fn scale(&self, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(CoreError::NonPositiveParameter("0".into()));
        }
        Ok(ValuedSeries { terms: self.terms.iter().map(|(e, v)| (e * n as i64, v.clone())).collect() })
    }

    /// Tropical product: valuations add, the minimum wins per exponent.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out: BTreeMap<i64, Rational> = BTreeMap::new();
        for (n1, v1) in &self.terms {
            for (n2, v2) in &other.terms {
                let v = v1 + v2;
                out.entry(n1 + n2).and_modify(|w| {
                    if v < *w {
                        *w = v.clone();
                    }
                })
                .or_insert(v);
            }
        }
        ValuedSeries { terms: out }
    }

    /// `[0, M + 1]` where `M` bounds every pairwise crossing, so all
    /// non-negative zeros are interior.
    pub fn natural_domain(&self) -> (Rational, Rational) {
        let mut m = Rational::zero();
        let terms: Vec<_> = self.terms.iter().collect();
        for (i, (n1, v1)) in terms.iter().enumerate() {
            for (n2, v2) in &terms[i + 1..] {
                let x = ((*v2 - *v1) / Rational::from_integer(BigInt::from(**n1 - **n2))).abs();
                if x > m {
                    m = x;
                }
            }
        }
        (Rational::zero(), m + Rational::from_integer(1.into()))
    }
}

/// `f(X^n)` as a valued series.
pub fn scale_series(s: &ValuedSeries, n: u32) -> Result<ValuedSeries> {
    s.scale(n)
}

/// Tropical product of two series.
pub fn mul_series(a: &ValuedSeries, b: &ValuedSeries) -> ValuedSeries {
    a.mul(b)
}

/// `x ↦ max_n (-n x - v_n)` on `[lo, hi]`.
pub fn trop_padic(s: &ValuedSeries, lo: &Rational, hi: &Rational) -> Result<PaFunction> {
    let poly = IntPolygon::new(s.terms().map(|(n, v)| (BigInt::from(-n), -v.clone())))?;
    legendre_from_polygon(&poly, lo, hi)
}

/// A tropical zero: a slope jump `h₊ - h₋ > 0` at `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropicalZero {
    pub x: Rational,
    pub multiplicity: Rational,
}

/// Interior slope jumps of a convex function.
pub fn trop_zeros(f: &PaFunction) -> Result<Vec<TropicalZero>> {
    if f.is_bottom() {
        return Err(CoreError::Bottom);
    }
    if !f.is_convex() {
        return Err(CoreError::NotConvex);
    }
    let s = f.slopes();
    Ok(f.breaks()
        .iter()
        .enumerate()
        .map(|(i, x)| TropicalZero { x: x.clone(), multiplicity: &s[i + 1] - &s[i] })
        .collect())
}

/// A complex polynomial with coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPoly {
    coeffs: Vec<Complex64>,
}

impl ComplexPoly {
    /// Trailing zero coefficients are dropped; the zero polynomial is rejected.
    pub fn new(mut coeffs: Vec<Complex64>) -> Result<Self> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(CoreError::InvalidArgument("zero polynomial".into()));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(CoreError::InvalidArgument("non-finite coefficient".into()));
        }
        Ok(ComplexPoly { coeffs })
    }

    /// Highest degree first, as polynomials are usually written.
    pub fn from_descending(mut coeffs: Vec<Complex64>) -> Result<Self> {
        coeffs.reverse();
        Self::new(coeffs)
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// `Π (z - r_i)`.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        roots.iter().fold(ComplexPoly { coeffs: alloc::vec![Complex64::new(1.0, 0.0)] }, |acc, r| {
            acc.mul(&ComplexPoly { coeffs: alloc::vec![-r, Complex64::new(1.0, 0.0)] })
        })
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::zero(), |acc, c| acc * z + c)
    }

    /// `(f(z), f'(z))`.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut f = Complex64::zero();
        let mut d = Complex64::zero();
        for c in self.coeffs.iter().rev() {
            d = d * z + f;
            f = f * z + c;
        }
        (f, d)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = alloc::vec![Complex64::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ComplexPoly { coeffs: out }
    }

    /// `f(z^n)`.
    pub fn compose_power(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(CoreError::NonPositiveParameter("0".into()));
        }
        let mut out = alloc::vec![Complex64::zero(); self.degree() * n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * n] = *c;
        }
        Ok(ComplexPoly { coeffs: out })
    }
}

/// Largest node count used by the quadratures.
pub const MAX_NODES: usize = 1 << 14;

/// Step used to step away from a root sitting on the circle.
pub const PERTURBATION: f64 = 1e-9;

/// Result of a Jensen average.
#[derive(Clone, Debug, PartialEq)]
pub struct JensenValue {
    pub value: f64,
    pub nodes: usize,
    /// Set when `x` had to be moved (by [`PERTURBATION`]) off a node hitting a root.
    pub perturbed: bool,
    /// Set when a root lies so close to the circle that quadrature did not
    /// settle; the value then comes from the two tangent lines at `x ± offset`.
    pub tangent_offset: Option<f64>,
}

fn node(r: f64, k: usize, n: usize) -> Complex64 {
    Complex64::from_polar(r, 2.0 * PI * k as f64 / n as f64)
}

// Sum of `g` over the nodes `k = start, start + step, ...` of an `n`-point grid.
fn node_sum<G: Fn(Complex64) -> f64>(g: &G, r: f64, n: usize, start: usize, step: usize) -> Option<f64> {
    let mut s = 0.0;
    let mut k = start;
    while k < n {
        let v = g(node(r, k, n));
        if !v.is_finite() {
            return None;
        }
        s += v;
        k += step;
    }
    Some(s)
}

enum Quad {
    Converged(f64, usize),
    NonFinite,
    Stalled,
}

// Trapezoid rule on the circle of radius `r`, doubling until two estimates agree to `tol / 10`.
fn circle_average<G: Fn(Complex64) -> f64>(g: G, r: f64, start_nodes: usize, tol: f64) -> Quad {
    let mut n = start_nodes;
    let Some(mut sum) = node_sum(&g, r, n, 0, 1) else { return Quad::NonFinite };
    while n < MAX_NODES {
        // the new nodes of the 2n-grid are the odd ones
        let Some(extra) = node_sum(&g, r, 2 * n, 1, 2) else { return Quad::NonFinite };
        let prev = sum / n as f64;
        sum += extra;
        n *= 2;
        let cur = sum / n as f64;
        if (cur - prev).abs() < tol / 10.0 {
            return Quad::Converged(cur, n);
        }
    }
    Quad::Stalled
}

fn check_quad_points(quad_points: usize) -> Result<usize> {
    if quad_points < 16 {
        return Err(CoreError::InvalidArgument(format!("quad_points = {quad_points}, need at least 16")));
    }
    Ok(quad_points.min(MAX_NODES / 2))
}

fn log_abs(f: &ComplexPoly) -> impl Fn(Complex64) -> f64 + '_ {
    move |z| Float::ln(f.eval(z).norm())
}

fn raw_average(f: &ComplexPoly, x: f64, quad_points: usize, tol: f64) -> (Quad, bool) {
    match circle_average(log_abs(f), Float::exp(-x), quad_points, tol) {
        Quad::NonFinite => (circle_average(log_abs(f), Float::exp(-(x + PERTURBATION)), quad_points, tol), true),
        q => (q, false),
    }
}

/// `(1/2π) ∫ log |f(e^{-x+iθ})| dθ`.
pub fn trop_complex(f: &ComplexPoly, x: f64, quad_points: usize, tol: f64) -> Result<JensenValue> {
    let q = check_quad_points(quad_points)?;
    let (res, perturbed) = raw_average(f, x, q, tol);
    match res {
        Quad::Converged(value, nodes) => Ok(JensenValue { value, nodes, perturbed, tangent_offset: None }),
        _ => tangent_fallback(f, x, q, tol, perturbed),
    }
}

// τ is convex and piecewise affine with integer slopes, so near a single break
// it is the max of the tangent lines taken on either side.
fn tangent_fallback(f: &ComplexPoly, x: f64, q: usize, tol: f64, perturbed: bool) -> Result<JensenValue> {
    let mut offset = 1e-4;
    while offset <= 0.1 {
        let left = raw_average(f, x - offset, q, tol);
        let right = raw_average(f, x + offset, q, tol);
        if let ((Quad::Converged(vl, nl), _), (Quad::Converged(vr, nr), _)) = (left, right) {
            let sl = -(winding_number(f, x - offset).count as f64);
            let sr = -(winding_number(f, x + offset).count as f64);
            let value = (vl + sl * offset).max(vr - sr * offset);
            return Ok(JensenValue { value, nodes: nl.max(nr), perturbed, tangent_offset: Some(offset) });
        }
        offset *= 10.0;
    }
    Err(CoreError::NonConvergence(format!("Jensen average at x = {x}")))
}

/// Slope `(1/2π) ∫ Re(-z f'(z)/f(z)) dθ` of `τ(f)` at `x`.
pub fn trop_slope(f: &ComplexPoly, x: f64, quad_points: usize, tol: f64) -> Result<f64> {
    let q = check_quad_points(quad_points)?;
    let g = |z: Complex64| {
        let (v, d) = f.eval_with_derivative(z);
        (-(z * d / v)).re
    };
    match circle_average(g, Float::exp(-x), q, tol) {
        Quad::Converged(v, _) => Ok(v),
        _ => Err(CoreError::NonConvergence(format!("slope at x = {x}"))),
    }
}

/// Winding number of `f` around the circle of radius `e^{-x}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Winding {
    pub count: i64,
    pub nodes: usize,
    /// False when the node cap was reached with an argument step above `π/2`.
    pub resolved: bool,
}

/// Counts zeros inside the circle of radius `e^{-x}` by summing argument increments.
pub fn winding_number(f: &ComplexPoly, x: f64) -> Winding {
    let r = Float::exp(-x);
    let mut n = 64usize;
    loop {
        let mut total = 0.0;
        let mut max_step: f64 = 0.0;
        let mut prev = f.eval(node(r, 0, n)).arg();
        for k in 1..=n {
            let cur = f.eval(node(r, k % n, n)).arg();
            let mut d = cur - prev;
            if d > PI {
                d -= 2.0 * PI;
            } else if d < -PI {
                d += 2.0 * PI;
            }
            max_step = max_step.max(d.abs());
            total += d;
            prev = cur;
        }
        let resolved = max_step < PI / 2.0;
        if resolved || n >= MAX_NODES {
            return Winding { count: Float::round(total / (2.0 * PI)) as i64, nodes: n, resolved };
        }
        n *= 2;
    }
}

/// A zero of `τ(f)` in complex mode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexZero {
    pub x: f64,
    pub multiplicity: u32,
}

/// Zeros located by bisection on the winding number.
#[derive(Clone, Debug, PartialEq)]
pub struct JensenZeros {
    pub zeros: Vec<ComplexZero>,
    pub max_nodes: usize,
}

/// Locates the slope changes of `τ(f)` in `(a, b)` to within `tol`.
pub fn jensen_zero_locate(f: &ComplexPoly, a: f64, b: f64, tol: f64) -> Result<JensenZeros> {
    if a.partial_cmp(&b) != Some(core::cmp::Ordering::Less) || tol.partial_cmp(&0.0) != Some(core::cmp::Ordering::Greater) {
        return Err(CoreError::InvalidArgument(format!("interval ({a}, {b}) with tol {tol}")));
    }
    let mut out = JensenZeros { zeros: Vec::new(), max_nodes: 0 };
    let wa = winding_number(f, a);
    let wb = winding_number(f, b);
    out.max_nodes = wa.nodes.max(wb.nodes);
    bisect(f, (a, wa.count), (b, wb.count), tol, &mut out, 0)?;
    // a root cluster straddling a midpoint shows up as neighbours closer than the resolution
    let mut merged: Vec<ComplexZero> = Vec::with_capacity(out.zeros.len());
    for z in out.zeros {
        match merged.last_mut() {
            Some(last) if z.x - last.x <= 2.0 * tol => {
                let (m1, m2) = (last.multiplicity as f64, z.multiplicity as f64);
                last.x = (last.x * m1 + z.x * m2) / (m1 + m2);
                last.multiplicity += z.multiplicity;
            }
            _ => merged.push(z),
        }
    }
    out.zeros = merged;
    Ok(out)
}

fn bisect(f: &ComplexPoly, (a, wa): (f64, i64), (b, wb): (f64, i64), tol: f64, out: &mut JensenZeros, depth: u32) -> Result<()> {
    if wa == wb {
        return Ok(());
    }
    if wa < wb || depth > 200 {
        return Err(CoreError::NonConvergence(format!("winding numbers {wa}, {wb} on [{a}, {b}]")));
    }
    if b - a < tol {
        out.zeros.push(ComplexZero { x: 0.5 * (a + b), multiplicity: (wa - wb) as u32 });
        return Ok(());
    }
    let m = 0.5 * (a + b);
    let wm = winding_number(f, m);
    out.max_nodes = out.max_nodes.max(wm.nodes);
    bisect(f, (a, wa), (m, wm.count), tol, out, depth + 1)?;
    bisect(f, (m, wm.count), (b, wb), tol, out, depth + 1)
}

/// `(x, τ(f)(x))` on `samples` evenly spaced points of `[a, b]`.
pub fn trop_complex_profile(f: &ComplexPoly, a: f64, b: f64, samples: usize, tol: f64) -> Result<Vec<(f64, f64)>> {
    if samples < 2 || a.partial_cmp(&b) != Some(core::cmp::Ordering::Less) {
        return Err(CoreError::InvalidArgument(format!("profile on [{a}, {b}] with {samples} samples")));
    }
    (0..samples)
        .map(|i| {
            let x = a + (b - a) * i as f64 / (samples - 1) as f64;
            Ok((x, trop_complex(f, x, 64, tol)?.value))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use alloc::vec;

    const LN2: f64 = core::f64::consts::LN_2;

    fn quadratic() -> ValuedSeries {
        ValuedSeries::new([(2, int(0)), (1, int(1)), (0, int(3))]).unwrap()
    }

    #[test]
    fn newton_quadratic() {
        let f = trop_padic(&quadratic(), &int(0), &int(4)).unwrap();
        let zeros = trop_zeros(&f).unwrap();
        assert_eq!(
            zeros,
            vec![
                TropicalZero { x: int(1), multiplicity: int(1) },
                TropicalZero { x: int(2), multiplicity: int(1) }
            ]
        );
        let scaled = trop_padic(&quadratic().scale(2).unwrap(), &int(0), &int(2)).unwrap();
        assert_eq!(scaled, f.scale_action(2).unwrap());
        let xs: Vec<_> = trop_zeros(&scaled).unwrap().into_iter().map(|z| z.x).collect();
        assert_eq!(xs, vec![rat(1, 2), int(1)]);
    }

    #[test]
    fn newton_double_root() {
        let s = ValuedSeries::new([(2, int(0)), (1, int(1)), (0, int(2))]).unwrap();
        let f = trop_padic(&s, &int(0), &int(3)).unwrap();
        assert_eq!(trop_zeros(&f).unwrap(), vec![TropicalZero { x: int(1), multiplicity: int(2) }]);
        let mono = ValuedSeries::new([(3, int(1))]).unwrap();
        assert!(trop_zeros(&trop_padic(&mono, &int(0), &int(3)).unwrap()).unwrap().is_empty());
        assert_eq!(ValuedSeries::new([]), Err(CoreError::EmptySeries));
    }

    #[test]
    fn coefficient_valuations() {
        let p = Prime::new(3).unwrap();
        // (X - 3)(X - 9) = X^2 - 12 X + 27
        let coeffs = [(2, int(1)), (1, int(-12)), (0, int(27))];
        let s = ValuedSeries::from_coefficients(p, coeffs.iter().map(|(n, a)| (*n, a))).unwrap();
        assert_eq!(s, quadratic());
        let (lo, hi) = s.natural_domain();
        assert_eq!((lo, hi), (int(0), int(3)));
    }

    #[test]
    fn jensen_single_root() {
        let f = ComplexPoly::from_real(&[-0.5, 1.0]).unwrap();
        for x in [0.0, LN2, 2.0 * LN2] {
            let v = trop_complex(&f, x, 16, 1e-9).unwrap();
            assert!((v.value - (-x).max(-LN2)).abs() < 1e-6, "x = {x}: {v:?}");
        }
        let z = ComplexPoly::from_real(&[0.0, 1.0]).unwrap();
        assert!((trop_complex(&z, 1.5, 16, 1e-9).unwrap().value + 1.5).abs() < 1e-12);
    }

    #[test]
    fn jensen_zeros() {
        let f = ComplexPoly::from_descending(vec![Complex64::new(1.0, 0.0), Complex64::new(-0.75, 0.0), Complex64::new(0.125, 0.0)]).unwrap();
        let zs = jensen_zero_locate(&f, 0.0, 3.0, 1e-6).unwrap();
        assert_eq!(zs.zeros.len(), 2);
        assert!((zs.zeros[0].x - LN2).abs() < 1e-6);
        assert!((zs.zeros[1].x - 2.0 * LN2).abs() < 1e-6);
        assert!(zs.max_nodes <= MAX_NODES);

        let sq = ComplexPoly::from_roots(&[Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0)]);
        let zs = jensen_zero_locate(&sq, 0.0, 3.0, 1e-6).unwrap();
        assert_eq!(zs.zeros.len(), 1);
        assert_eq!(zs.zeros[0].multiplicity, 2);

        let far = ComplexPoly::from_real(&[2.0, 1.0]).unwrap();
        assert!(jensen_zero_locate(&far, 0.0, 3.0, 1e-6).unwrap().zeros.is_empty());
    }

    #[test]
    fn slopes_are_near_integers() {
        let f = ComplexPoly::from_roots(&[Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.25)]);
        for (x, s) in [(0.2, -2.0), (1.0, -1.0), (2.0, 0.0)] {
            assert!((trop_slope(&f, x, 16, 1e-9).unwrap() - s).abs() < 1e-6);
        }
    }
}
