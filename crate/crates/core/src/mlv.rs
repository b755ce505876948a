//! Floating-point evaluation of multiple L-values
//!
//! `L(k; s) = Σ_{m1 > … > ml > 0} s1^{m1−m2} ⋯ s_{l−1}^{m_{l−1}−ml} sl^{ml} / (m1^{k1} ⋯ ml^{kl})`
//!
//! and numerical checks that a polynomial lies in the kernel of the
//! evaluation map.
//!
//! Summation runs over `t1 = s1`, `ti = si / s_{i−1}` so that each depth is
//! one cumulative pass. Heads with `k1 ≥ 2` get a rigorous integral-test
//! tail bound. Heads with `k1 = 1` (necessarily twisted) converge only
//! conditionally and are either averaged over one period of `r` partial
//! sums or reported raw with the oscillation amplitude as error.

use std::f64::consts::PI;
use std::sync::LazyLock;

use dashmap::DashMap;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{word_to_index, MLVIndex, NCPoly};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailStrategy {
    Plain,
    PeriodAverage,
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct EvalOptions {
    pub max_terms: usize,
    pub tail_strategy: TailStrategy,
    pub tolerance: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { max_terms: 100_000, tail_strategy: TailStrategy::PeriodAverage, tolerance: 1e-3 }
    }
}

impl EvalOptions {
    pub fn validate(&self) -> Result<()> {
        if self.max_terms < 10 {
            return Err(Error::InvalidArgument(format!("max_terms must be at least 10, got {}", self.max_terms)));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::InvalidArgument(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct EvalResult {
    pub value: Complex64,
    pub error_estimate: f64,
}

type CacheKey = (MLVIndex, usize, TailStrategy);

static CACHE: LazyLock<DashMap<CacheKey, EvalResult>> = LazyLock::new(DashMap::new);

fn roots_of_unity(r: u32) -> Vec<Complex64> {
    (0..r).map(|j| Complex64::from_polar(1.0, 2.0 * PI * f64::from(j) / f64::from(r))).collect()
}

/// Exponents of `t1 = s1`, `ti = si / s_{i−1}`.
fn step_twists(ix: &MLVIndex) -> Vec<u32> {
    let mut prev = 0;
    ix.s
        .iter()
        .map(|s| {
            let t = (s.j() + s.modulus() - prev) % s.modulus();
            prev = s.j();
            t
        })
        .collect()
}

/// Partial sums `A(M)` of the outermost series for `M = 0..=n`.
fn partial_sums(ix: &MLVIndex, n: usize) -> Vec<Complex64> {
    let r = ix.modulus() as usize;
    let roots = roots_of_unity(ix.modulus());
    let twists = step_twists(ix);
    let mut inner: Option<Vec<Complex64>> = None;
    for depth in (0..ix.depth()).rev() {
        let k = ix.k[depth] as i32;
        let t = twists[depth] as usize;
        let mut sums = vec![Complex64::new(0.0, 0.0); n + 1];
        let mut acc = Complex64::new(0.0, 0.0);
        for m in 1..=n {
            let mut term = roots[(t * m) % r] / (m as f64).powi(k);
            if let Some(prev) = &inner {
                term *= prev[m - 1];
            }
            acc += term;
            sums[m] = acc;
        }
        inner = Some(sums);
    }
    inner.expect("index has positive depth")
}

/// `∫_N^∞ (1 + ln x)^a x^{−k} dx` for `k ≥ 2`.
fn log_power_tail(a: u32, k: u32, n: f64) -> f64 {
    let lg = 1.0 + n.ln();
    let km1 = f64::from(k - 1);
    let base = n.powf(1.0 - f64::from(k));
    let mut falling = 1.0;
    let mut total = 0.0;
    for j in 0..=a {
        if j > 0 {
            falling *= f64::from(a - j + 1);
        }
        total += falling * lg.powi((a - j) as i32) * base / km1.powi(j as i32 + 1);
    }
    total
}

/// Rigorous bound on the tail beyond `n` when `k1 ≥ 2`, whatever the twists.
///
/// Below an outer index `m`, the `a` inner exponents equal to 1 run over a
/// strictly decreasing chain, so they contribute at most
/// `H_{m−1}^a / a! ≤ (1 + ln m)^a / a!`. Every other inner exponent
/// contributes at most `k/(k−1)`.
pub fn plain_tail_bound(ix: &MLVIndex, n: usize) -> f64 {
    let mut log_factors = 0;
    let mut constant = 1.0;
    for &k in &ix.k[1..] {
        if k == 1 {
            log_factors += 1;
            constant /= f64::from(log_factors);
        } else {
            constant *= f64::from(k) / f64::from(k - 1);
        }
    }
    let k1 = f64::from(ix.k[0]);
    let a = f64::from(log_factors);
    // The integrand is unimodal with its peak at 1 + ln x = a/k1; the sum
    // exceeds the integral by at most the peak when that lies beyond n.
    let peak = (a / k1 - 1.0).exp();
    let overshoot = if peak > n as f64 { (a / k1).powf(a) * peak.powf(-k1) } else { 0.0 };
    constant * (log_power_tail(log_factors, ix.k[0], n as f64) + overshoot)
}

fn evaluate_uncached(ix: &MLVIndex, n: usize, strategy: TailStrategy) -> EvalResult {
    let sums = partial_sums(ix, n);
    if ix.k[0] >= 2 {
        return EvalResult { value: sums[n], error_estimate: plain_tail_bound(ix, n) };
    }
    let r = ix.modulus() as usize;
    match strategy {
        TailStrategy::Plain => {
            let spread = (1..r).map(|i| (sums[n] - sums[n - i]).norm()).fold(0.0, f64::max);
            EvalResult { value: sums[n], error_estimate: spread }
        }
        TailStrategy::PeriodAverage => {
            let avg = |m: usize| sums[m + 1 - r..=m].iter().sum::<Complex64>() / r as f64;
            let value = avg(n);
            let drift = (value - avg(n / 2)).norm();
            let spread = (1..r).map(|i| (value - avg(n - i)).norm()).fold(0.0, f64::max);
            EvalResult { value, error_estimate: drift + spread }
        }
    }
}

/// Numerical value of `L(k; s)` truncated at `opts.max_terms`.
pub fn evaluate_l(ix: &MLVIndex, opts: &EvalOptions) -> Result<EvalResult> {
    opts.validate()?;
    if !ix.is_admissible() {
        return Err(Error::NonAdmissibleIndex(ix.to_string()));
    }
    let key = (ix.clone(), opts.max_terms, opts.tail_strategy);
    if let Some(hit) = CACHE.get(&key) {
        return Ok(*hit);
    }
    let out = evaluate_uncached(ix, opts.max_terms, opts.tail_strategy);
    CACHE.insert(key, out);
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct KernelReport {
    pub sum: Complex64,
    pub bound: f64,
    pub pass: bool,
    pub n: usize,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct KernelReportJson {
    pub sum_re: f64,
    pub sum_im: f64,
    pub bound: f64,
    pub pass: bool,
    #[serde(rename = "N")]
    pub n: usize,
}

impl KernelReport {
    pub fn to_json(&self) -> KernelReportJson {
        KernelReportJson { sum_re: self.sum.re, sum_im: self.sum.im, bound: self.bound, pass: self.pass, n: self.n }
    }
}

/// Evaluates `p` term by term and tests `|Σ| < max(tol, 10 Σ |c|·err)`.
pub fn check_kernel(p: &NCPoly, opts: &EvalOptions) -> Result<KernelReport> {
    opts.validate()?;
    let r = p.modulus();
    let terms: Vec<(MLVIndex, f64)> = p
        .iter()
        .map(|(w, c)| {
            if !w.is_admissible() {
                return Err(Error::NonAdmissibleWord(w.to_string()));
            }
            Ok((word_to_index(w, r)?, c.to_f64()))
        })
        .collect::<Result<_>>()?;
    let values: Vec<EvalResult> = terms.par_iter().map(|(ix, _)| evaluate_l(ix, opts)).collect::<Result<_>>()?;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for ((_, c), v) in terms.iter().zip(&values) {
        sum += v.value * *c;
        err += c.abs() * v.error_estimate;
    }
    let bound = opts.tolerance.max(10.0 * err);
    Ok(KernelReport { sum, bound, pass: sum.norm() < bound, n: opts.max_terms })
}
