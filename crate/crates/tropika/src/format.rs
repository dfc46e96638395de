//! JSON shapes of the core types.
//!
//! Integers that fit in 64 bits are written as JSON numbers, larger ones as
//! decimal strings. Both forms are accepted on input.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use tropika_core::rr::{ContinuousDim, DimLevel, DimMode, RrReport};
use tropika_core::{
    CpFunction, Divisor, HpScalar, Integer, PaFunction, Prime, Rational, ThetaDatum, ThetaDecomposition,
};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonInt {
    Small(i64),
    Big(String),
}

impl From<&Integer> for JsonInt {
    fn from(n: &Integer) -> Self {
        match n.to_i64() {
            Some(v) => JsonInt::Small(v),
            None => JsonInt::Big(n.to_string()),
        }
    }
}

impl JsonInt {
    pub fn to_integer(&self) -> Result<Integer> {
        match self {
            JsonInt::Small(v) => Ok(BigInt::from(*v)),
            JsonInt::Big(s) => s.trim().parse().map_err(|_| Error::Format(format!("not an integer: {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: JsonInt,
    pub den: JsonInt,
}

impl From<&Rational> for RationalJson {
    fn from(q: &Rational) -> Self {
        RationalJson { num: q.numer().into(), den: q.denom().into() }
    }
}

impl RationalJson {
    pub fn to_rational(&self) -> Result<Rational> {
        let den = self.den.to_integer()?;
        if den.is_zero() {
            return Err(Error::Format("zero denominator".into()));
        }
        Ok(Rational::new(self.num.to_integer()?, den))
    }
}

fn rationals(v: &[RationalJson]) -> Result<Vec<Rational>> {
    v.iter().map(RationalJson::to_rational).collect()
}

fn prime(p: u32) -> Result<Prime> {
    Ok(Prime::new(p)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HpJson {
    pub a: JsonInt,
    pub k: u32,
}

impl From<&HpScalar> for HpJson {
    fn from(h: &HpScalar) -> Self {
        HpJson { a: h.numerator().into(), k: h.exponent() }
    }
}

impl HpJson {
    pub fn to_scalar(&self, p: Prime) -> Result<HpScalar> {
        Ok(HpScalar::new(p, self.a.to_integer()?, self.k))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaJson {
    pub domain: [RationalJson; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<RationalJson>,
    #[serde(default)]
    pub breaks: Vec<RationalJson>,
    #[serde(default)]
    pub slopes: Vec<RationalJson>,
    #[serde(default)]
    pub bottom: bool,
}

impl From<&PaFunction> for PaJson {
    fn from(f: &PaFunction) -> Self {
        PaJson {
            domain: [f.lo().into(), f.hi().into()],
            anchor: f.anchor().map(Into::into),
            breaks: f.breaks().iter().map(Into::into).collect(),
            slopes: f.slopes().iter().map(Into::into).collect(),
            bottom: f.is_bottom(),
        }
    }
}

impl PaJson {
    pub fn to_function(&self) -> Result<PaFunction> {
        let lo = self.domain[0].to_rational()?;
        let hi = self.domain[1].to_rational()?;
        if self.bottom {
            return Ok(PaFunction::bottom(lo, hi)?);
        }
        let anchor = self.anchor.as_ref().ok_or_else(|| Error::Format("finite function without anchor".into()))?;
        Ok(PaFunction::from_pieces(lo, hi, anchor.to_rational()?, rationals(&self.breaks)?, rationals(&self.slopes)?)?)
    }
}

/// A function on `C_p`, stored through its restriction to `[1, p]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CpJson {
    pub p: u32,
    #[serde(flatten)]
    pub restriction: PaJson,
}

impl From<&CpFunction> for CpJson {
    fn from(f: &CpFunction) -> Self {
        CpJson { p: f.prime().get(), restriction: f.restriction().into() }
    }
}

impl CpJson {
    pub fn to_function(&self) -> Result<CpFunction> {
        Ok(CpFunction::new(prime(self.p)?, self.restriction.to_function()?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub lambda: RationalJson,
    pub k: HpJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorJson {
    pub p: u32,
    pub points: Vec<PointJson>,
}

impl From<&Divisor> for DivisorJson {
    fn from(d: &Divisor) -> Self {
        DivisorJson {
            p: d.prime().get(),
            points: d.iter().map(|(l, k)| PointJson { lambda: l.into(), k: k.into() }).collect(),
        }
    }
}

impl DivisorJson {
    pub fn to_divisor(&self) -> Result<Divisor> {
        let p = prime(self.p)?;
        let mut d = Divisor::new(p);
        for pt in &self.points {
            d.add_point(&pt.lambda.to_rational()?, pt.k.to_scalar(p)?)?;
        }
        Ok(d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaDatumJson {
    pub h: HpJson,
    pub mu: RationalJson,
}

impl From<&ThetaDatum> for ThetaDatumJson {
    fn from(t: &ThetaDatum) -> Self {
        ThetaDatumJson { h: (&t.h).into(), mu: (&t.mu).into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaDecompositionJson {
    pub p: u32,
    pub positives: Vec<ThetaDatumJson>,
    pub negatives: Vec<ThetaDatumJson>,
    pub linear_h: HpJson,
    pub constant: RationalJson,
}

impl From<&ThetaDecomposition> for ThetaDecompositionJson {
    fn from(d: &ThetaDecomposition) -> Self {
        ThetaDecompositionJson {
            p: d.p.get(),
            positives: d.positives.iter().map(Into::into).collect(),
            negatives: d.negatives.iter().map(Into::into).collect(),
            linear_h: (&d.linear_h).into(),
            constant: (&d.constant).into(),
        }
    }
}

impl ThetaDecompositionJson {
    pub fn to_decomposition(&self) -> Result<ThetaDecomposition> {
        let p = prime(self.p)?;
        let data = |v: &[ThetaDatumJson]| -> Result<Vec<ThetaDatum>> {
            v.iter().map(|t| Ok(ThetaDatum::new(t.h.to_scalar(p)?, t.mu.to_rational()?)?)).collect()
        };
        Ok(ThetaDecomposition {
            p,
            positives: data(&self.positives)?,
            negatives: data(&self.negatives)?,
            linear_h: self.linear_h.to_scalar(p)?,
            constant: self.constant.to_rational()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimLevelJson {
    pub n: u32,
    pub dim_lower: u64,
    pub dim_upper: u64,
    pub normalized_lower: RationalJson,
    pub normalized_upper: RationalJson,
    pub deviation: RationalJson,
    pub exact: bool,
}

impl From<&DimLevel> for DimLevelJson {
    fn from(l: &DimLevel) -> Self {
        DimLevelJson {
            n: l.n,
            dim_lower: l.dim_lower,
            dim_upper: l.dim_upper,
            normalized_lower: (&l.normalized_lower).into(),
            normalized_upper: (&l.normalized_upper).into(),
            deviation: (&l.deviation).into(),
            exact: l.exact,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DimModeJson {
    Negative,
    Zero { principal: bool },
    Exact { alpha: RationalJson, shift: CpJson },
    Sandwich { lower: RationalJson, upper: RationalJson },
}

impl From<&DimMode> for DimModeJson {
    fn from(m: &DimMode) -> Self {
        match m {
            DimMode::Negative => DimModeJson::Negative,
            DimMode::Zero { principal } => DimModeJson::Zero { principal: *principal },
            DimMode::Exact { alpha, shift } => DimModeJson::Exact { alpha: alpha.into(), shift: shift.into() },
            DimMode::Sandwich { lower, upper } => DimModeJson::Sandwich { lower: lower.into(), upper: upper.into() },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuousDimJson {
    pub degree: RationalJson,
    pub limit: RationalJson,
    pub mode: DimModeJson,
    pub levels: Vec<DimLevelJson>,
}

impl From<&ContinuousDim> for ContinuousDimJson {
    fn from(c: &ContinuousDim) -> Self {
        ContinuousDimJson {
            degree: (&c.degree).into(),
            limit: (&c.limit).into(),
            mode: (&c.mode).into(),
            levels: c.levels.iter().map(Into::into).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RrReportJson {
    pub degree: RationalJson,
    pub lhs_lower: RationalJson,
    pub lhs_upper: RationalJson,
    pub bound: RationalJson,
    pub holds: bool,
    pub positive: ContinuousDimJson,
    pub negative: ContinuousDimJson,
}

impl From<&RrReport> for RrReportJson {
    fn from(r: &RrReport) -> Self {
        RrReportJson {
            degree: (&r.degree).into(),
            lhs_lower: (&r.lhs_lower).into(),
            lhs_upper: (&r.lhs_upper).into(),
            bound: (&r.bound).into(),
            holds: r.holds,
            positive: (&r.positive).into(),
            negative: (&r.negative).into(),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}
