//! Exact means and variances read off the bivariate generating functions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;

use super::binomial::catalan;
use super::formulas::cdeg_distribution;
use super::gf::SeriesBuilder;
use super::series::BivariateSeries;
use crate::error::{Error, Result};

/// Mean and variance of a parameter marked in a bivariate series, for all sizes up to its
/// working order at once.
#[derive(Debug, Clone)]
pub struct MarkedMoments {
    series: BivariateSeries<BigInt>,
    population: fn(u64) -> BigInt,
}

impl MarkedMoments {
    /// Number of r-branches over uniform random trees.
    pub fn r_branches(r: u32, order: usize) -> Result<Self> {
        Self::r_branches_with(&SeriesBuilder::default(), r, order)
    }

    pub fn r_branches_with(builder: &SeriesBuilder, r: u32, order: usize) -> Result<Self> {
        Ok(MarkedMoments { series: builder.series_gr(r, order, 2)?, population: catalan })
    }

    /// Size of the `r`th fringe over uniform random paths.
    pub fn fringe(r: u32, order: usize) -> Result<Self> {
        Self::fringe_with(&SeriesBuilder::default(), r, order)
    }

    pub fn fringe_with(builder: &SeriesBuilder, r: u32, order: usize) -> Result<Self> {
        Ok(MarkedMoments { series: builder.series_hr(r, order, 2)?, population: |n| Pow::pow(&BigInt::from(4), n) })
    }

    fn slices(&self, n: u64) -> Result<(BigInt, BigInt)> {
        if n as usize > self.series.order() {
            return Err(Error::BoundExceeded { what: "size", value: n as usize, bound: self.series.order() });
        }
        let c = self.series.coeff(n as usize);
        Ok((c[1].clone(), c[2].clone()))
    }

    pub fn mean(&self, n: u64) -> Result<BigRational> {
        let (first, _) = self.slices(n)?;
        Ok(BigRational::new(first, (self.population)(n)))
    }

    /// `E[X²] - E[X]²` with `E[X²] = E[2 binom(X, 2) + X]`.
    pub fn variance(&self, n: u64) -> Result<BigRational> {
        let (first, second) = self.slices(n)?;
        let total = (self.population)(n);
        let mean = BigRational::new(first.clone(), total.clone());
        let raw = BigRational::new(second * 2 + first, total);
        Ok(raw - &mean * &mean)
    }
}

pub fn var_r_branches_exact(n: u64, r: u32) -> Result<BigRational> {
    MarkedMoments::r_branches(r, n as usize)?.variance(n)
}

pub fn var_fringe_exact(n: u64, r: u32) -> Result<BigRational> {
    MarkedMoments::fringe(r, n as usize)?.variance(n)
}

/// Variance of the compactification degree of a uniform random path of length `n >= 1`.
pub fn var_cdeg_exact(n: u64) -> Result<BigRational> {
    let dist = cdeg_distribution(n)?;
    let mut mean = BigRational::from_integer(0.into());
    let mut second = mean.clone();
    for (r, p) in dist.iter().enumerate() {
        let r = BigInt::from(r);
        mean += p * &r;
        second += p * (&r * &r);
    }
    Ok(second - &mean * &mean)
}
