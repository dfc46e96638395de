//! Scripted batches with machine-readable pass/fail reports.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tropika_core::{
    big_theta_eval, continuous_dim, int, jensen_zero_locate, rr_check, solve_divisor, theta_decompose, theta_eval,
    theta_reconstruct, trop_complex, trop_padic, trop_zeros, ComplexPoly, CoreError, Divisor, HpScalar, Prime,
    Rational, ThetaDatum, TropicalZero, ValuedSeries,
};

use crate::error::Result;
use crate::format::{CpJson, DivisorJson, HpJson, RationalJson};
use crate::gen;

/// Counterexamples kept per check.
pub const MAX_COUNTEREXAMPLES: usize = 5;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub counterexamples: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub experiment: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(experiment: &str, seed: u64, checks: Vec<Check>) -> Self {
        Report { experiment: experiment.into(), seed, passed: checks.iter().all(Check::passed), checks }
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&format!(
                "{} {}: {}/{} cases\n",
                if c.passed() { "PASS" } else { "FAIL" },
                c.name,
                c.cases - c.failures,
                c.cases
            ));
        }
        s
    }
}

/// Worker pool, capped by `TROPIKA_THREADS` when it holds a positive integer.
pub fn thread_pool() -> rayon::ThreadPool {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = std::env::var("TROPIKA_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        if n > 0 {
            b = b.num_threads(n);
        }
    }
    b.build().expect("thread pool")
}

/// Runs `case(i)` for `i < cases` in parallel; failures come back in case order.
pub fn run_check<F>(pool: &rayon::ThreadPool, name: impl Into<String>, cases: u64, case: F) -> Check
where
    F: Fn(u64) -> std::result::Result<(), Value> + Sync,
{
    let failures: Vec<(u64, Value)> =
        pool.install(|| (0..cases).into_par_iter().filter_map(|i| case(i).err().map(|v| (i, v))).collect());
    Check {
        name: name.into(),
        cases,
        failures: failures.len() as u64,
        counterexamples: failures
            .into_iter()
            .take(MAX_COUNTEREXAMPLES)
            .map(|(i, v)| json!({ "case": i, "input": v }))
            .collect(),
        detail: None,
    }
}

fn stream(p: Prime, tag: u64, i: u64) -> u64 {
    (tag << 48) | ((p.get() as u64) << 32) | i
}

fn divisor_value(d: &Divisor) -> Value {
    serde_json::to_value(DivisorJson::from(d)).expect("serializable")
}

fn datum_value(t: &ThetaDatum, x: &Rational) -> Value {
    json!({ "h": HpJson::from(&t.h), "mu": RationalJson::from(&t.mu), "lambda": RationalJson::from(x) })
}

pub fn roundtrip(primes: &[Prime], cases: u64, seed: u64) -> Report {
    let pool = thread_pool();
    let mut checks = Vec::new();
    for &p in primes {
        checks.push(run_check(&pool, format!("solve then divisor, p={p}"), cases, |i| {
            let d = gen::principal_divisor(&mut gen::case_rng(seed, stream(p, 1, i)), p);
            match solve_divisor(&d, None) {
                Ok(f) if f.divisor() == d => Ok(()),
                _ => Err(divisor_value(&d)),
            }
        }));
        checks.push(run_check(&pool, format!("non-principal rejected, p={p}"), cases, |i| {
            let d = gen::non_principal_divisor(&mut gen::case_rng(seed, stream(p, 2, i)), p);
            match solve_divisor(&d, None) {
                Err(CoreError::NotPrincipal { .. }) => Ok(()),
                _ => Err(divisor_value(&d)),
            }
        }));
    }
    Report::new("roundtrip", seed, checks)
}

pub fn theta_laws(primes: &[Prime], cases: u64, seed: u64) -> Report {
    let pool = thread_pool();
    let mut checks = Vec::new();
    for &p in primes {
        let pr = p.as_rational();
        checks.push(run_check(&pool, format!("functional equations, p={p}"), cases, |i| {
            let mut rng = gen::case_rng(seed, stream(p, 3, i));
            let t = gen::theta_datum(&mut rng, p);
            let x = gen::positive_rational(&mut rng);
            let h = t.h.to_rational();
            let shifted = ThetaDatum::new(t.h.mul_p_pow(1), t.mu.clone()).expect("positive h");
            let ok = (|| -> tropika_core::Result<bool> {
                let th = theta_eval(p, &(&x * &pr))? == theta_eval(p, &x)? + &x - int(1);
                let big = big_theta_eval(&t, &x)?;
                let step = &h * &x - &t.mu;
                let bt = big_theta_eval(&t, &(&x * &pr))? == &big + &step;
                let bh = big_theta_eval(&shifted, &x)? == &big + &step;
                Ok(th && bt && bh && shifted.divisor() == t.divisor())
            })();
            if ok == Ok(true) {
                Ok(())
            } else {
                Err(datum_value(&t, &x))
            }
        }));
        checks.push(run_check(&pool, format!("decompose then reconstruct, p={p}"), cases, |i| {
            let f = gen::cp_function(&mut gen::case_rng(seed, stream(p, 4, i)), p);
            let ok = theta_decompose(&f).and_then(|d| {
                let normalized = d.positives.iter().chain(&d.negatives).all(ThetaDatum::is_normalized);
                Ok(normalized && theta_reconstruct(&d)? == f)
            });
            if ok == Ok(true) {
                Ok(())
            } else {
                Err(serde_json::to_value(CpJson::from(&f)).expect("serializable"))
            }
        }));
    }
    Report::new("theta-laws", seed, checks)
}

pub fn rr_limit(p: Prime, alpha: &Rational, n_max: u32, seed: u64) -> Result<Report> {
    let k = HpScalar::from_rational(p, alpha)?;
    let d = Divisor::single(p, &int(1), k)?;
    let cd = continuous_dim(&d, n_max)?;
    let report = rr_check(&d, n_max)?;
    let last = cd.last();
    let bound = p.as_rational() / p.pow(n_max as i64);
    let ok = report.holds && last.deviation <= bound;
    let detail = json!({
        "divisor": divisor_value(&d),
        "sequence": cd.levels.iter().map(|l| l.normalized_lower.to_string()).collect::<Vec<_>>(),
        "deviations": cd.levels.iter().map(|l| l.deviation.to_string()).collect::<Vec<_>>(),
        "deviation": last.deviation.to_string(),
        "rr_lhs": [report.lhs_lower.to_string(), report.lhs_upper.to_string()],
        "rr_bound": report.bound.to_string(),
    });
    let check = Check {
        name: format!("continuous dimension of {alpha}{{1}}, p={p}, n<={n_max}"),
        cases: 1,
        failures: u64::from(!ok),
        counterexamples: if ok { Vec::new() } else { vec![divisor_value(&d)] },
        detail: Some(detail),
    };
    Ok(Report::new("rr-limit", seed, vec![check]))
}

fn root_multiset(roots: &[(i64, u32)]) -> Vec<TropicalZero> {
    let mut vs: Vec<u32> = roots.iter().map(|r| r.1).filter(|v| *v > 0).collect();
    vs.sort_unstable();
    let mut out: Vec<TropicalZero> = Vec::new();
    for v in vs {
        match out.last_mut() {
            Some(z) if z.x == int(v as i64) => z.multiplicity += int(1),
            _ => out.push(TropicalZero { x: int(v as i64), multiplicity: int(1) }),
        }
    }
    out
}

fn series(p: Prime, c: &[Rational]) -> tropika_core::Result<ValuedSeries> {
    ValuedSeries::from_coefficients(p, c.iter().enumerate().map(|(i, a)| (i as i64, a)))
}

/// One Newton case: zeros equal root valuations and `τ(fg) = τ(f) + τ(g)`.
pub fn newton_case(p: Prime, a: &[(i64, u32)], b: &[(i64, u32)]) -> tropika_core::Result<bool> {
    let (lo, hi) = (int(0), int(6));
    let ab: Vec<(i64, u32)> = a.iter().chain(b).cloned().collect();
    let tau = |r: &[(i64, u32)]| trop_padic(&series(p, &gen::expand_roots(p, r))?, &lo, &hi);
    let fab = tau(&ab)?;
    Ok(trop_zeros(&fab)? == root_multiset(&ab) && fab == tau(a)?.trop_mul(&tau(b)?)?)
}

/// Roots `e^{-v} e^{iθ}` for moduli on the grid `1/4`.
pub fn jensen_poly(moduli: &[f64]) -> ComplexPoly {
    let zs: Vec<Complex64> =
        moduli.iter().enumerate().map(|(i, v)| Complex64::from_polar((-v).exp(), 0.7 + 1.9 * i as f64)).collect();
    ComplexPoly::from_roots(&zs)
}

pub fn newton_jensen(cases: u64, seed: u64) -> Report {
    let pool = thread_pool();
    let mut checks = Vec::new();
    for p in [2u32, 3, 5].map(|p| Prime::new(p).expect("prime")) {
        checks.push(run_check(&pool, format!("Newton zeros and products, p={p}"), cases, |i| {
            let mut rng = gen::case_rng(seed, stream(p, 5, i));
            let a = gen::unit_roots(&mut rng, p, 3);
            let b = gen::unit_roots(&mut rng, p, 3);
            if newton_case(p, &a, &b) == Ok(true) {
                Ok(())
            } else {
                Err(json!({ "p": p.get(), "roots": [a, b] }))
            }
        }));
    }
    let jensen_cases = (cases / 10).max(1);
    checks.push(run_check(&pool, "Jensen closed form", jensen_cases, |i| {
        use rand::Rng;
        let mut rng = gen::case_rng(seed, (6 << 48) | i);
        let moduli: Vec<f64> = (0..rng.gen_range(1..=4)).map(|_| rng.gen_range(0..=12) as f64 / 4.0).collect();
        let f = jensen_poly(&moduli);
        let ok = (0..12).all(|k| {
            let x = 0.125 + 0.25 * k as f64;
            let exact: f64 = moduli.iter().map(|v| (-v).max(-x)).sum();
            trop_complex(&f, x, 16, 1e-9).map(|v| (v.value - exact).abs() < 1e-6).unwrap_or(false)
        });
        if ok {
            Ok(())
        } else {
            Err(json!({ "root_moduli": moduli }))
        }
    }));
    let mut located = run_check(&pool, "Jensen zeros of (z-1/2)(z-1/4)", 1, |_| {
        let f = jensen_poly(&[2f64.ln(), 4f64.ln()]);
        match jensen_zero_locate(&f, 0.0, 3.0, 1e-6) {
            Ok(z) if z.zeros.len() == 2
                && (z.zeros[0].x - 2f64.ln()).abs() < 1e-6
                && (z.zeros[1].x - 4f64.ln()).abs() < 1e-6 =>
            {
                Ok(())
            }
            other => Err(json!({ "result": format!("{other:?}") })),
        }
    });
    located.detail = Some(json!({ "tol": 1e-6 }));
    checks.push(located);
    Report::new("newton-jensen", seed, checks)
}

