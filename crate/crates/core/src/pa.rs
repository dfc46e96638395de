//! Continuous piecewise-affine functions on a closed interval of `[0, ∞)`, with
//! the max-plus operations `∨` (pointwise max) and `+` (pointwise sum).
//!
//! A finite function is stored as its value at the left end of the domain, the
//! interior breakpoints and one slope per piece. Adjacent pieces with equal
//! slopes are always merged, so two functions are equal iff their canonical
//! data are equal. The constant `-∞` is a separate variant.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{CoreError, Result};
use crate::exact::Rational;

/// A value of `R_max = R ∪ {-∞}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MaxPlus {
    NegInf,
    Finite(Rational),
}

impl MaxPlus {
    pub fn finite(self) -> Option<Rational> {
        match self {
            MaxPlus::Finite(x) => Some(x),
            MaxPlus::NegInf => None,
        }
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            MaxPlus::Finite(x) => Some(x),
            MaxPlus::NegInf => None,
        }
    }

    /// Tropical sum (max).
    pub fn join(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Tropical product (ordinary sum, `-∞` absorbing).
    pub fn times(&self, other: &Self) -> Self {
        match (self, other) {
            (MaxPlus::Finite(a), MaxPlus::Finite(b)) => MaxPlus::Finite(a + b),
            _ => MaxPlus::NegInf,
        }
    }
}

impl PartialOrd for MaxPlus {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MaxPlus {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (MaxPlus::NegInf, MaxPlus::NegInf) => Ordering::Equal,
            (MaxPlus::NegInf, _) => Ordering::Less,
            (_, MaxPlus::NegInf) => Ordering::Greater,
            (MaxPlus::Finite(a), MaxPlus::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for MaxPlus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaxPlus::NegInf => write!(f, "-inf"),
            MaxPlus::Finite(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Pieces {
    anchor: Rational,
    breaks: Vec<Rational>,
    slopes: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Body {
    Bottom,
    Finite(Pieces),
}

/// A continuous piecewise-affine function on `[lo, hi]`, or the bottom element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PaFunction {
    lo: Rational,
    hi: Rational,
    body: Body,
}

fn check_domain(lo: &Rational, hi: &Rational) -> Result<()> {
    if lo.is_negative() || lo >= hi {
        return Err(CoreError::InvalidDomain(format!("[{lo}, {hi}]")));
    }
    Ok(())
}

impl PaFunction {
    pub fn bottom(lo: Rational, hi: Rational) -> Result<Self> {
        check_domain(&lo, &hi)?;
        Ok(PaFunction { lo, hi, body: Body::Bottom })
    }

    pub fn constant(lo: Rational, hi: Rational, value: Rational) -> Result<Self> {
        Self::affine(lo, hi, Rational::zero(), value)
    }

    /// `x ↦ value_at_lo + slope (x - lo)`.
    pub fn affine(lo: Rational, hi: Rational, slope: Rational, value_at_lo: Rational) -> Result<Self> {
        check_domain(&lo, &hi)?;
        Ok(PaFunction {
            lo,
            hi,
            body: Body::Finite(Pieces { anchor: value_at_lo, breaks: Vec::new(), slopes: vec![slope] }),
        })
    }

    /// Builds a function from its anchor value, interior breakpoints and slopes.
    /// Equal adjacent slopes are merged.
    pub fn from_pieces(
        lo: Rational,
        hi: Rational,
        anchor: Rational,
        breaks: Vec<Rational>,
        slopes: Vec<Rational>,
    ) -> Result<Self> {
        check_domain(&lo, &hi)?;
        if slopes.len() != breaks.len() + 1 {
            return Err(CoreError::Malformed(format!(
                "{} slopes for {} breakpoints",
                slopes.len(),
                breaks.len()
            )));
        }
        let mut prev = &lo;
        for b in &breaks {
            if b <= prev {
                return Err(CoreError::Malformed(format!("breakpoint {b} out of order")));
            }
            prev = b;
        }
        if prev >= &hi && !breaks.is_empty() {
            return Err(CoreError::Malformed(format!("breakpoint {prev} not below {hi}")));
        }
        Ok(Self::assemble(lo, hi, anchor, breaks, slopes))
    }

    /// The polyline through `(x_0, y_0), ..., (x_n, y_n)` with `x` strictly increasing.
    pub fn from_knots(knots: &[(Rational, Rational)]) -> Result<Self> {
        if knots.len() < 2 {
            return Err(CoreError::Malformed("need at least two knots".into()));
        }
        let lo = knots[0].0.clone();
        let hi = knots[knots.len() - 1].0.clone();
        check_domain(&lo, &hi)?;
        let mut slopes = Vec::with_capacity(knots.len() - 1);
        for w in knots.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(CoreError::Malformed("knot abscissae must increase".into()));
            }
            slopes.push((&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0));
        }
        let breaks = knots[1..knots.len() - 1].iter().map(|k| k.0.clone()).collect();
        Ok(Self::assemble(lo, hi, knots[0].1.clone(), breaks, slopes))
    }

    // Merges equal adjacent slopes; inputs are assumed ordered.
    fn assemble(lo: Rational, hi: Rational, anchor: Rational, breaks: Vec<Rational>, slopes: Vec<Rational>) -> Self {
        let mut out_b: Vec<Rational> = Vec::with_capacity(breaks.len());
        let mut out_s: Vec<Rational> = Vec::with_capacity(slopes.len());
        let mut slopes = slopes.into_iter();
        out_s.push(slopes.next().expect("at least one slope"));
        for (b, s) in breaks.into_iter().zip(slopes) {
            if out_s.last() == Some(&s) {
                continue;
            }
            out_b.push(b);
            out_s.push(s);
        }
        PaFunction { lo, hi, body: Body::Finite(Pieces { anchor, breaks: out_b, slopes: out_s }) }
    }

    // Builds from a partition `cuts = [lo, c_1, ..., hi]` (possibly with
    // repeated points) and one slope per sub-interval.
    fn from_cuts(cuts: &[Rational], slopes: Vec<Rational>, anchor: Rational) -> Self {
        debug_assert_eq!(cuts.len(), slopes.len() + 1);
        let mut breaks = Vec::new();
        let mut kept = Vec::new();
        for (i, s) in slopes.into_iter().enumerate() {
            if cuts[i + 1] == cuts[i] {
                continue;
            }
            if !kept.is_empty() {
                breaks.push(cuts[i].clone());
            }
            kept.push(s);
        }
        let lo = cuts[0].clone();
        let hi = cuts[cuts.len() - 1].clone();
        Self::assemble(lo, hi, anchor, breaks, kept)
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self.body, Body::Bottom)
    }

    fn pieces(&self) -> Result<&Pieces> {
        match &self.body {
            Body::Finite(p) => Ok(p),
            Body::Bottom => Err(CoreError::Bottom),
        }
    }

    /// Value at `lo`; `None` for bottom.
    pub fn anchor(&self) -> Option<&Rational> {
        self.pieces().ok().map(|p| &p.anchor)
    }

    pub fn breaks(&self) -> &[Rational] {
        match &self.body {
            Body::Finite(p) => &p.breaks,
            Body::Bottom => &[],
        }
    }

    pub fn slopes(&self) -> &[Rational] {
        match &self.body {
            Body::Finite(p) => &p.slopes,
            Body::Bottom => &[],
        }
    }

    /// `lo`, the breakpoints and `hi`, each with its value. Empty for bottom.
    pub fn knots(&self) -> Vec<(Rational, Rational)> {
        let Ok(p) = self.pieces() else { return Vec::new() };
        let mut out = Vec::with_capacity(p.breaks.len() + 2);
        let mut x = self.lo.clone();
        let mut y = p.anchor.clone();
        out.push((x.clone(), y.clone()));
        for (i, s) in p.slopes.iter().enumerate() {
            let next = p.breaks.get(i).unwrap_or(&self.hi);
            y = &y + s * (next - &x);
            x = next.clone();
            out.push((x.clone(), y.clone()));
        }
        out
    }

    pub fn contains(&self, x: &Rational) -> bool {
        x >= &self.lo && x <= &self.hi
    }

    pub fn value_at(&self, x: &Rational) -> Result<MaxPlus> {
        if !self.contains(x) {
            return Err(CoreError::OutsideDomain(x.to_string()));
        }
        let Ok(p) = self.pieces() else { return Ok(MaxPlus::NegInf) };
        let mut cur = self.lo.clone();
        let mut y = p.anchor.clone();
        for (i, s) in p.slopes.iter().enumerate() {
            let next = p.breaks.get(i).unwrap_or(&self.hi);
            if x <= next {
                return Ok(MaxPlus::Finite(y + s * (x - &cur)));
            }
            y = &y + s * (next - &cur);
            cur = next.clone();
        }
        unreachable!("x is inside the domain")
    }

    /// Finite value at `x`; errors for bottom or outside the domain.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        self.value_at(x)?.finite().ok_or(CoreError::Bottom)
    }

    /// Slopes strictly increase (after merging), i.e. a section of the structure sheaf.
    pub fn is_convex(&self) -> bool {
        self.slopes().windows(2).all(|w| w[0] < w[1])
    }

    pub fn has_integer_slopes(&self) -> bool {
        self.slopes().iter().all(|s| s.is_integer())
    }

    pub fn same_domain(&self, other: &Self) -> Result<()> {
        if self.lo != other.lo || self.hi != other.hi {
            return Err(CoreError::DomainMismatch(
                format!("{}, {}", self.lo, self.hi),
                format!("{}, {}", other.lo, other.hi),
            ));
        }
        Ok(())
    }

    // Values at the sorted points `cuts` and the slope on each gap.
    fn refine(&self, cuts: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let p = self.pieces().expect("finite function");
        let mut values = Vec::with_capacity(cuts.len());
        let mut slopes = Vec::with_capacity(cuts.len().saturating_sub(1));
        let mut idx = 0;
        let mut y = p.anchor.clone();
        let mut prev = self.lo.clone();
        for (i, c) in cuts.iter().enumerate() {
            // advance through pieces fully left of c
            while idx < p.breaks.len() && p.breaks[idx] <= *c {
                y = &y + &p.slopes[idx] * (&p.breaks[idx] - &prev);
                prev = p.breaks[idx].clone();
                idx += 1;
            }
            values.push(&y + &p.slopes[idx] * (c - &prev));
            if i + 1 < cuts.len() {
                slopes.push(p.slopes[idx].clone());
            }
        }
        (values, slopes)
    }

    fn merged_cuts(&self, other: &Self) -> Vec<Rational> {
        let mut cuts: Vec<Rational> = Vec::with_capacity(self.breaks().len() + other.breaks().len() + 2);
        cuts.push(self.lo.clone());
        cuts.extend(self.breaks().iter().cloned());
        cuts.extend(other.breaks().iter().cloned());
        cuts.push(self.hi.clone());
        cuts.sort();
        cuts.dedup();
        cuts
    }

    /// Pointwise maximum.
    pub fn trop_add(&self, other: &Self) -> Result<Self> {
        self.same_domain(other)?;
        match (&self.body, &other.body) {
            (Body::Bottom, _) => return Ok(other.clone()),
            (_, Body::Bottom) => return Ok(self.clone()),
            _ => {}
        }
        let cuts = self.merged_cuts(other);
        let (fv, fs) = self.refine(&cuts);
        let (gv, gs) = other.refine(&cuts);
        let mut out_cuts = Vec::with_capacity(cuts.len() * 2);
        let mut out_slopes = Vec::with_capacity(cuts.len() * 2);
        out_cuts.push(cuts[0].clone());
        for i in 0..cuts.len() - 1 {
            let da = &fv[i] - &gv[i];
            let db = &fv[i + 1] - &gv[i + 1];
            let crosses = (da.is_positive() && db.is_negative()) || (da.is_negative() && db.is_positive());
            if crosses {
                let c = &cuts[i] + &da / (&gs[i] - &fs[i]);
                let (first, second) = if da.is_positive() { (&fs[i], &gs[i]) } else { (&gs[i], &fs[i]) };
                out_cuts.push(c);
                out_slopes.push(first.clone());
                out_slopes.push(second.clone());
            } else if (&da + &db).is_negative() {
                out_slopes.push(gs[i].clone());
            } else {
                out_slopes.push(fs[i].clone());
            }
            out_cuts.push(cuts[i + 1].clone());
        }
        let anchor = fv[0].clone().max(gv[0].clone());
        Ok(Self::from_cuts(&out_cuts, out_slopes, anchor))
    }

    /// Pointwise sum; bottom is absorbing.
    pub fn trop_mul(&self, other: &Self) -> Result<Self> {
        self.same_domain(other)?;
        if self.is_bottom() || other.is_bottom() {
            return Self::bottom(self.lo.clone(), self.hi.clone());
        }
        let cuts = self.merged_cuts(other);
        let (fv, fs) = self.refine(&cuts);
        let (gv, gs) = other.refine(&cuts);
        let slopes = fs.iter().zip(&gs).map(|(a, b)| a + b).collect();
        Ok(Self::from_cuts(&cuts, slopes, &fv[0] + &gv[0]))
    }

    /// Pointwise negation (the inverse in the semifield of fractions).
    pub fn neg(&self) -> Result<Self> {
        let p = self.pieces()?;
        Ok(PaFunction {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            body: Body::Finite(Pieces {
                anchor: -p.anchor.clone(),
                breaks: p.breaks.clone(),
                slopes: p.slopes.iter().map(|s| -s).collect(),
            }),
        })
    }

    /// `self - other`, pointwise.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.trop_mul(&other.neg()?)
    }

    /// `x ↦ c · f(x)` for `c > 0`.
    pub fn scale_values(&self, c: &Rational) -> Result<Self> {
        if !c.is_positive() {
            return Err(CoreError::NonPositiveParameter(c.to_string()));
        }
        let Ok(p) = self.pieces() else { return Ok(self.clone()) };
        Ok(PaFunction {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            body: Body::Finite(Pieces {
                anchor: &p.anchor * c,
                breaks: p.breaks.clone(),
                slopes: p.slopes.iter().map(|s| s * c).collect(),
            }),
        })
    }

    /// `x ↦ f(x) + slope·x + intercept`.
    pub fn add_affine(&self, slope: &Rational, intercept: &Rational) -> Result<Self> {
        let Ok(p) = self.pieces() else { return Ok(self.clone()) };
        Ok(Self::assemble(
            self.lo.clone(),
            self.hi.clone(),
            &p.anchor + slope * &self.lo + intercept,
            p.breaks.clone(),
            p.slopes.iter().map(|s| s + slope).collect(),
        ))
    }

    /// Precomposition with `x ↦ c·x` for a rational `c > 0`: the result lives on
    /// `[lo/c, hi/c]` and equals `f(c x)` there.
    pub fn rescale_domain(&self, c: &Rational) -> Result<Self> {
        if !c.is_positive() {
            return Err(CoreError::NonPositiveParameter(c.to_string()));
        }
        let lo = &self.lo / c;
        let hi = &self.hi / c;
        let body = match &self.body {
            Body::Bottom => Body::Bottom,
            Body::Finite(p) => Body::Finite(Pieces {
                anchor: p.anchor.clone(),
                breaks: p.breaks.iter().map(|b| b / c).collect(),
                slopes: p.slopes.iter().map(|s| s * c).collect(),
            }),
        };
        Ok(PaFunction { lo, hi, body })
    }

    /// The action of `n ∈ N^×`: `f ↦ (x ↦ f(n x))`.
    pub fn scale_action(&self, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(CoreError::NonPositiveParameter("0".into()));
        }
        self.rescale_domain(&Rational::from_integer(BigInt::from(n)))
    }

    /// Restriction to `[a, b] ⊆ [lo, hi]`.
    pub fn restrict(&self, a: &Rational, b: &Rational) -> Result<Self> {
        if a < &self.lo || b > &self.hi {
            return Err(CoreError::OutsideDomain(format!("[{a}, {b}]")));
        }
        check_domain(a, b)?;
        let Ok(p) = self.pieces() else { return Self::bottom(a.clone(), b.clone()) };
        let mut cuts = vec![a.clone()];
        cuts.extend(p.breaks.iter().filter(|x| *x > a && *x < b).cloned());
        cuts.push(b.clone());
        let (values, slopes) = self.refine(&cuts);
        Ok(Self::from_cuts(&cuts, slopes, values[0].clone()))
    }

    /// Glues `other` (on `[hi, c]`) to the right of `self`; values must match at `hi`.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if other.lo != self.hi {
            return Err(CoreError::DomainMismatch(
                format!("{}, {}", self.lo, self.hi),
                format!("{}, {}", other.lo, other.hi),
            ));
        }
        match (&self.body, &other.body) {
            (Body::Bottom, Body::Bottom) => Self::bottom(self.lo.clone(), other.hi.clone()),
            (Body::Finite(a), Body::Finite(b)) => {
                let left_end = self.eval(&self.hi)?;
                if left_end != b.anchor {
                    return Err(CoreError::Malformed(format!(
                        "discontinuity at {}: {} vs {}",
                        self.hi, left_end, b.anchor
                    )));
                }
                let mut breaks = a.breaks.clone();
                breaks.push(self.hi.clone());
                breaks.extend(b.breaks.iter().cloned());
                let mut slopes = a.slopes.clone();
                slopes.extend(b.slopes.iter().cloned());
                Ok(Self::assemble(self.lo.clone(), other.hi.clone(), a.anchor.clone(), breaks, slopes))
            }
            _ => Err(CoreError::Malformed("cannot glue a finite function to bottom".into())),
        }
    }

    /// Slopes to the left and right of an interior point `x`.
    pub fn one_sided_slopes(&self, x: &Rational) -> Result<(Rational, Rational)> {
        if x <= &self.lo || x >= &self.hi {
            return Err(CoreError::NotInterior(x.to_string()));
        }
        let p = self.pieces()?;
        let idx = p.breaks.partition_point(|b| b < x);
        let left = p.slopes[idx].clone();
        let right = if p.breaks.get(idx) == Some(x) { p.slopes[idx + 1].clone() } else { left.clone() };
        Ok((left, right))
    }

    /// Germ `(value, h₊, h₋)` at an interior point.
    pub fn germ_at(&self, x: &Rational) -> Result<Germ> {
        if x <= &self.lo || x >= &self.hi {
            return Err(CoreError::NotInterior(x.to_string()));
        }
        if self.is_bottom() {
            return Ok(Germ::Bottom);
        }
        let (minus, plus) = self.one_sided_slopes(x)?;
        Ok(Germ::Finite { value: self.eval(x)?, h_plus: plus, h_minus: minus })
    }

    /// `Ord = h₊ − h₋` at an interior point.
    pub fn order_at(&self, x: &Rational) -> Result<Rational> {
        let (minus, plus) = self.one_sided_slopes(x)?;
        Ok(plus - minus)
    }

    /// One-sided germ at `lo`: value and outgoing slope. `None` for bottom.
    pub fn germ_right_of_lo(&self) -> Option<(Rational, Rational)> {
        let p = self.pieces().ok()?;
        Some((p.anchor.clone(), p.slopes[0].clone()))
    }

    /// One-sided germ at `hi`: value and incoming slope. `None` for bottom.
    pub fn germ_left_of_hi(&self) -> Option<(Rational, Rational)> {
        let p = self.pieces().ok()?;
        let v = self.eval(&self.hi).ok()?;
        Some((v, p.slopes.last().expect("non-empty").clone()))
    }

    pub fn max_value(&self) -> MaxPlus {
        self.knots().into_iter().map(|(_, y)| MaxPlus::Finite(y)).max().unwrap_or(MaxPlus::NegInf)
    }

    pub fn min_value(&self) -> MaxPlus {
        self.knots().into_iter().map(|(_, y)| MaxPlus::Finite(y)).min().unwrap_or(MaxPlus::NegInf)
    }

    /// Sup distance `max |f − g|` over the common domain.
    pub fn distance(&self, other: &Self) -> Result<Rational> {
        let d = self.sub(other)?;
        let hi = d.max_value().finite().ok_or(CoreError::Bottom)?;
        let lo = d.min_value().finite().ok_or(CoreError::Bottom)?;
        Ok(hi.abs().max(lo.abs()))
    }
}

impl fmt::Display for PaFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_bottom() {
            return write!(f, "-inf on [{}, {}]", self.lo, self.hi);
        }
        let knots = self.knots();
        for (i, (x, y)) in knots.iter().enumerate() {
            if i > 0 {
                write!(f, " -- ")?;
            }
            write!(f, "({x}, {y})")?;
        }
        Ok(())
    }
}

/// Germ of a piecewise-affine function at a point: `(x, h₊, h₋)` with
/// `f(1 ± ε) = x ± h_± ε`, or the germ of `-∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Germ {
    Bottom,
    Finite { value: Rational, h_plus: Rational, h_minus: Rational },
}

impl Germ {
    pub fn new(value: Rational, h_plus: Rational, h_minus: Rational) -> Self {
        Germ::Finite { value, h_plus, h_minus }
    }

    /// `h₊ ≥ h₋`, i.e. the germ of a convex function.
    pub fn is_convex(&self) -> bool {
        match self {
            Germ::Bottom => true,
            Germ::Finite { h_plus, h_minus, .. } => h_plus >= h_minus,
        }
    }

    pub fn order(&self) -> Option<Rational> {
        match self {
            Germ::Bottom => None,
            Germ::Finite { h_plus, h_minus, .. } => Some(h_plus - h_minus),
        }
    }

    /// Max of two germs.
    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Germ::Bottom, g) | (g, Germ::Bottom) => g.clone(),
            (
                Germ::Finite { value: x, h_plus: a, h_minus: c },
                Germ::Finite { value: y, h_plus: b, h_minus: d },
            ) => match x.cmp(y) {
                Ordering::Greater => self.clone(),
                Ordering::Less => other.clone(),
                Ordering::Equal => Germ::Finite {
                    value: x.clone(),
                    h_plus: a.clone().max(b.clone()),
                    h_minus: c.clone().min(d.clone()),
                },
            },
        }
    }

    /// Sum of two germs; bottom is absorbing.
    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (
                Germ::Finite { value: x, h_plus: a, h_minus: c },
                Germ::Finite { value: y, h_plus: b, h_minus: d },
            ) => Germ::Finite { value: x + y, h_plus: a + b, h_minus: c + d },
            _ => Germ::Bottom,
        }
    }

    /// The unique character `(x, h₊, h₋) ↦ x` to `R_max`.
    pub fn character(&self) -> MaxPlus {
        match self {
            Germ::Bottom => MaxPlus::NegInf,
            Germ::Finite { value, .. } => MaxPlus::Finite(value.clone()),
        }
    }
}

/// Convex hull of finitely many quadrants `(x_j, y_j) − R₊²` with `x_j ∈ Z`,
/// stored by its non-dominated corners sorted by `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolygon {
    vertices: Vec<(BigInt, Rational)>,
}

impl IntPolygon {
    /// Drops every corner dominated by another (`x' ≥ x` and `y' ≥ y`).
    pub fn new(points: impl IntoIterator<Item = (BigInt, Rational)>) -> Result<Self> {
        let mut pts: Vec<(BigInt, Rational)> = points.into_iter().collect();
        if pts.is_empty() {
            return Err(CoreError::InvalidArgument("polygon needs at least one vertex".into()));
        }
        // Sort by x descending, then y descending; keep points whose y beats all
        // points with larger (or equal) x.
        pts.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)));
        let mut kept: Vec<(BigInt, Rational)> = Vec::new();
        for pt in pts {
            match kept.last() {
                Some(last) if last.1 >= pt.1 => {}
                _ => kept.push(pt),
            }
        }
        kept.reverse();
        Ok(IntPolygon { vertices: kept })
    }

    pub fn vertices(&self) -> &[(BigInt, Rational)] {
        &self.vertices
    }

    /// `max_j (λ x_j + y_j)`.
    pub fn support(&self, lambda: &Rational) -> Rational {
        self.vertices
            .iter()
            .map(|(x, y)| lambda * Rational::from_integer(x.clone()) + y)
            .max()
            .expect("non-empty")
    }

    /// Convex hull of the union (tropical sum).
    pub fn hull_union(&self, other: &Self) -> Self {
        Self::new(self.vertices.iter().chain(&other.vertices).cloned()).expect("non-empty")
    }

    /// Minkowski sum (tropical product).
    pub fn minkowski_sum(&self, other: &Self) -> Self {
        let pts = self
            .vertices
            .iter()
            .flat_map(|(x1, y1)| other.vertices.iter().map(move |(x2, y2)| (x1 + x2, y1 + y2)));
        Self::new(pts).expect("non-empty")
    }

    /// `x_j ↦ n x_j`.
    pub fn scale(&self, n: u64) -> Self {
        let n = BigInt::from(n);
        Self::new(self.vertices.iter().map(|(x, y)| (x * &n, y.clone()))).expect("non-empty")
    }
}

/// The convex function `λ ↦ max_j (λ x_j + y_j)` on `[lo, hi]`.
pub fn legendre_from_polygon(poly: &IntPolygon, lo: &Rational, hi: &Rational) -> Result<PaFunction> {
    let mut acc = PaFunction::bottom(lo.clone(), hi.clone())?;
    for (x, y) in poly.vertices() {
        let slope = Rational::from_integer(x.clone());
        let at_lo = &slope * lo + y;
        acc = acc.trop_add(&PaFunction::affine(lo.clone(), hi.clone(), slope, at_lo)?)?;
    }
    Ok(acc)
}
