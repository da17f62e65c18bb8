//! Asymptotic expansions for branches, compactification degree and fringes.

use std::f64::consts::{LN_2, PI};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use super::fourier::{branches_fluctuation, total_fringe_fluctuation, FluctuationSeries};
use super::special::SpecialFunctionContext;
use crate::error::{Error, Result};

/// Size of the omitted remainder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ErrorOrder {
    /// No remainder.
    Exact,
    /// `O(n^exponent)`.
    Power(i32),
    /// `O(log n / n)`.
    LogOverN,
    /// `O(1 / log n)`.
    InverseLog,
    /// `O(n^degree θ^{-n})`.
    Exponential { degree: u32, theta: f64 },
    /// A bounded periodic fluctuation was left out, plus `O(n^exponent)`.
    Fluctuation(i32),
    /// The stated remainder does not apply.
    Unspecified,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticEstimate {
    pub value: f64,
    pub error: ErrorOrder,
}

impl AsymptoticEstimate {
    fn new(value: f64, error: ErrorOrder) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::InvalidArgument(format!("expansion is not finite: {value}")));
        }
        Ok(AsymptoticEstimate { value, error })
    }
}

fn require_positive(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    Ok(n as f64)
}

pub fn log4(n: f64) -> f64 {
    n.ln() / (2.0 * LN_2)
}

fn q(numer: i64, denom: i64) -> BigRational {
    BigRational::new(numer.into(), denom.into())
}

fn pow4(r: u32) -> BigRational {
    BigRational::from_integer(Pow::pow(&BigInt::from(4), r))
}

/// Four-term expansion of the expected number of r-branches, with rational coefficients.
pub fn expected_r_branches_rational(n: u64, r: u32) -> Result<BigRational> {
    require_positive(n)?;
    let n = BigRational::from_integer(n.into());
    let a = pow4(r);
    let a_inv = a.recip();
    let a2 = &a * &a;
    let mut e = &n * &a_inv;
    e += (BigRational::one() + &a_inv * BigInt::from(5)) * q(1, 6);
    e += (&a - &a_inv) / (&n * BigInt::from(20));
    e += (&a2 * q(5, 21) - &a * q(7, 10) + &a_inv * q(97, 210)) / (&n * &n * BigInt::from(12));
    Ok(e)
}

/// Three-term expansion of the variance of the number of r-branches.
pub fn var_r_branches_rational(n: u64, r: u32) -> Result<BigRational> {
    require_positive(n)?;
    let n = BigRational::from_integer(n.into());
    let a = pow4(r);
    let a2 = &a * &a;
    let a3 = &a2 * &a;
    let one = BigRational::one();
    let mut v = (&a - &one) / (&a2 * BigInt::from(3)) * &n;
    v -= (&a2 * BigInt::from(2) - &a * BigInt::from(25) + BigInt::from(23)) / (&a2 * BigInt::from(90));
    v -= (&a3 * BigInt::from(13) - &a2 * BigInt::from(14) + &a * BigInt::from(7) - BigInt::from(6))
        / (&a2 * BigInt::from(420) * &n);
    Ok(v)
}

pub fn asym_expected_r_branches(n: u64, r: u32) -> Result<AsymptoticEstimate> {
    let error = if r == 0 { ErrorOrder::Exact } else { ErrorOrder::Power(-3) };
    AsymptoticEstimate::new(crate::exact::to_f64(&expected_r_branches_rational(n, r)?), error)
}

pub fn asym_var_r_branches(n: u64, r: u32) -> Result<AsymptoticEstimate> {
    let error = if r == 0 { ErrorOrder::Exact } else { ErrorOrder::Power(-2) };
    let v = var_r_branches_rational(n, r)?;
    let value = if v.is_zero() { 0.0 } else { crate::exact::to_f64(&v) };
    AsymptoticEstimate::new(value, error)
}

/// Periodic fluctuation of the expected total number of branches at `x = log₄ n`.
pub fn delta_branches(x: f64, terms: usize) -> Result<f64> {
    Ok(branches_fluctuation(terms)?.evaluate(x))
}

/// Constant term of the expected total number of branches.
pub fn branches_constant(ctx: &SpecialFunctionContext) -> f64 {
    -2.0 * ctx.zeta_prime_minus_one / ctx.ln2 - ctx.euler_gamma / (12.0 * ctx.ln2) - 1.0 / (6.0 * ctx.ln2) + 43.0 / 36.0
}

/// Expected total number of branches without the periodic term.
pub fn asym_expected_branches_smooth(n: u64) -> Result<AsymptoticEstimate> {
    let nf = require_positive(n)?;
    let ctx = SpecialFunctionContext::global();
    let value = 4.0 * nf / 3.0 + log4(nf) / 6.0 + branches_constant(ctx);
    AsymptoticEstimate::new(value, ErrorOrder::Fluctuation(0))
}

pub fn asym_expected_branches(n: u64, terms: usize) -> Result<AsymptoticEstimate> {
    let smooth = asym_expected_branches_smooth(n)?;
    let delta = delta_branches(log4(n as f64), terms)?;
    AsymptoticEstimate::new(smooth.value + delta, ErrorOrder::LogOverN)
}

/// Constant term of the expected compactification degree.
pub fn cdeg_constant(ctx: &SpecialFunctionContext) -> f64 {
    (ctx.euler_gamma + 2.0 - 3.0 * ctx.ln2) / (2.0 * ctx.ln2)
}

/// Constant term of the variance of the compactification degree.
pub fn cdeg_variance_constant(ctx: &SpecialFunctionContext) -> f64 {
    let ln_pi = ctx.pi.ln();
    (ctx.pi * ctx.pi - 24.0 * ln_pi * ln_pi - 48.0 * ctx.zeta_second_zero - 24.0) / (24.0 * ctx.ln2 * ctx.ln2)
        - 2.0 * ln_pi / ctx.ln2
        - 11.0 / 12.0
}

pub fn asym_expected_cdeg_smooth(n: u64) -> Result<AsymptoticEstimate> {
    let nf = require_positive(n)?;
    let value = log4(nf) + cdeg_constant(SpecialFunctionContext::global());
    AsymptoticEstimate::new(value, ErrorOrder::Fluctuation(-1))
}

pub fn asym_var_cdeg_smooth(n: u64) -> Result<AsymptoticEstimate> {
    require_positive(n)?;
    AsymptoticEstimate::new(cdeg_variance_constant(SpecialFunctionContext::global()), ErrorOrder::Fluctuation(0))
}

/// `θ_r = 4 / (2 + 2 cos(2π / 2^r))`; infinite for `r = 1`.
pub fn theta(r: u32) -> f64 {
    let angle = 2.0 * PI / 2f64.powi(r as i32);
    // cos π is exactly -1 only up to rounding; pin the degenerate denominator
    let denom = if r == 1 { 0.0 } else { 2.0 + 2.0 * angle.cos() };
    4.0 / denom
}

/// Expectation and variance expansions of the `r`th fringe size, with rational coefficients.
pub fn fringe_rational(n: u64, r: u32) -> Result<(BigRational, BigRational)> {
    require_positive(n)?;
    let n = BigRational::from_integer(n.into());
    let a = pow4(r);
    let a2 = &a * &a;
    let one = BigRational::one();
    let e = &n / &a + (&one - a.recip()) * q(1, 3);
    let v = (&a - &one) / (&a2 * BigInt::from(3)) * &n
        + (-(&a2 * BigInt::from(2)) - &a * BigInt::from(5) + BigInt::from(7)) / (&a2 * BigInt::from(45));
    Ok((e, v))
}

/// Expectation and variance of the size of the `r`th fringe.
pub fn asym_fringe(n: u64, r: u32) -> Result<(AsymptoticEstimate, AsymptoticEstimate)> {
    let nf = require_positive(n)?;
    if r == 0 {
        return Ok((AsymptoticEstimate::new(nf, ErrorOrder::Exact)?, AsymptoticEstimate::new(0.0, ErrorOrder::Exact)?));
    }
    let a = 4f64.powi(r as i32);
    let a2 = a * a;
    let e = nf / a + (1.0 - 1.0 / a) / 3.0;
    let v = (a - 1.0) / (3.0 * a2) * nf + (-2.0 * a2 - 5.0 * a + 7.0) / (45.0 * a2);
    let (e_err, v_err) = if r == 1 {
        (ErrorOrder::Unspecified, ErrorOrder::Unspecified)
    } else {
        let theta = theta(r);
        (ErrorOrder::Exponential { degree: 3, theta }, ErrorOrder::Exponential { degree: 5, theta })
    };
    Ok((AsymptoticEstimate::new(e, e_err)?, AsymptoticEstimate::new(v, v_err)?))
}

/// Constant term of the expected total fringe size.
pub fn total_fringe_constant(ctx: &SpecialFunctionContext) -> f64 {
    (5.0 + 3.0 * ctx.euler_gamma - 11.0 * ctx.ln2) / (18.0 * ctx.ln2)
}

pub fn asym_total_fringe_smooth(n: u64) -> Result<AsymptoticEstimate> {
    let nf = require_positive(n)?;
    let value = 4.0 * nf / 3.0 + log4(nf) / 3.0 + total_fringe_constant(SpecialFunctionContext::global());
    AsymptoticEstimate::new(value, ErrorOrder::Fluctuation(0))
}

pub fn delta_total_fringe(x: f64, terms: usize) -> Result<f64> {
    Ok(total_fringe_fluctuation(terms)?.evaluate(x))
}

pub fn asym_total_fringe(n: u64, terms: usize) -> Result<AsymptoticEstimate> {
    let smooth = asym_total_fringe_smooth(n)?;
    let delta = delta_total_fringe(log4(n as f64), terms)?;
    AsymptoticEstimate::new(smooth.value + delta, ErrorOrder::LogOverN)
}

/// One point of an empirical fluctuation: `n`, `log₄ n mod 1`, exact minus smooth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FluctuationPoint {
    pub n: u64,
    pub phase: f64,
    pub residual: f64,
}

pub fn empirical_fluctuation(
    exact: impl Fn(u64) -> Result<f64>,
    smooth: impl Fn(u64) -> Result<f64>,
    ns: impl IntoIterator<Item = u64>,
) -> Result<Vec<FluctuationPoint>> {
    ns.into_iter()
        .map(|n| {
            Ok(FluctuationPoint {
                n,
                phase: log4(require_positive(n)?).rem_euclid(1.0),
                residual: exact(n)? - smooth(n)?,
            })
        })
        .collect()
}

/// Distinct integers `round(lo · (hi/lo)^{j/(points-1)})`, increasing.
pub fn geometric_grid(lo: u64, hi: u64, points: usize) -> Vec<u64> {
    if lo == 0 || hi < lo || points == 0 {
        return Vec::new();
    }
    if points == 1 || lo == hi {
        return vec![lo];
    }
    let ratio = (hi as f64 / lo as f64).ln();
    let mut out: Vec<u64> = (0..points)
        .map(|j| {
            let t = j as f64 / (points - 1) as f64;
            ((lo as f64) * (ratio * t).exp()).round() as u64
        })
        .map(|n| n.clamp(lo, hi))
        .collect();
    out.dedup();
    out
}

/// Which fluctuation series a name refers to.
pub fn fluctuation_series(name: &str, terms: usize) -> Result<FluctuationSeries> {
    match name {
        "branches" => branches_fluctuation(terms),
        "total-fringe" => total_fringe_fluctuation(terms),
        other => Err(Error::InvalidArgument(format!("no closed-form fluctuation for {other}"))),
    }
}
