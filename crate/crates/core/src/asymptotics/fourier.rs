//! Real 1-periodic functions given by truncated Fourier series.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use super::special::{complex_gamma, complex_zeta};
use crate::error::{Error, Result};

/// Default number of Fourier modes on each side.
pub const DEFAULT_TERMS: usize = 20;

/// `χ_k = 2kπi / ln 2`.
pub fn chi(k: i64) -> Complex64 {
    Complex64::new(0.0, 2.0 * PI * k as f64 / LN_2)
}

/// `mean + Σ_{0<|k|<=K} c_k e^{2πikx}` with `c_{-k} = conj(c_k)`; only `k >= 1` is stored.
#[derive(Debug, Clone, PartialEq)]
pub struct FluctuationSeries {
    pub mean: f64,
    coefficients: Vec<Complex64>,
}

impl FluctuationSeries {
    /// `coefficients[k - 1]` is `c_k`.
    pub fn new(mean: f64, coefficients: Vec<Complex64>) -> Self {
        FluctuationSeries { mean, coefficients }
    }

    pub fn from_fn(terms: usize, coefficient: impl Fn(i64) -> Result<Complex64>) -> Result<Self> {
        if terms == 0 {
            return Err(Error::InvalidArgument("at least one Fourier term is required".into()));
        }
        let coefficients = (1..=terms as i64).map(coefficient).collect::<Result<_>>()?;
        Ok(FluctuationSeries::new(0.0, coefficients))
    }

    pub fn terms(&self) -> usize {
        self.coefficients.len()
    }

    /// `c_k` for any nonzero `k` within range, conjugated for negative `k`.
    pub fn coefficient(&self, k: i64) -> Option<Complex64> {
        let c = *self.coefficients.get(k.unsigned_abs().checked_sub(1)? as usize)?;
        Some(if k < 0 { c.conj() } else { c })
    }

    /// Full complex sum; its imaginary part vanishes up to rounding.
    pub fn evaluate_complex(&self, x: f64) -> Complex64 {
        let mut acc = Complex64::new(self.mean, 0.0);
        for (i, c) in self.coefficients.iter().enumerate() {
            let k = (i + 1) as f64;
            let e = Complex64::from_polar(1.0, 2.0 * PI * k * x);
            acc += c * e + c.conj() * e.conj();
        }
        acc
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        self.evaluate_complex(x).re
    }

    /// Average over one period by the rectangle rule, which is exact for trigonometric
    /// polynomials once `points` exceeds the number of modes.
    pub fn period_mean(&self, points: usize) -> f64 {
        let points = points.max(2 * self.terms() + 1);
        (0..points).map(|j| self.evaluate(j as f64 / points as f64)).sum::<f64>() / points as f64
    }

    /// Largest and smallest value on an even grid over one period.
    pub fn range(&self, points: usize) -> (f64, f64) {
        (0..points)
            .map(|j| self.evaluate(j as f64 / points as f64))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), y| (lo.min(y), hi.max(y)))
    }
}

/// Fluctuation in the expected total number of branches of a random binary tree.
pub fn branches_fluctuation(terms: usize) -> Result<FluctuationSeries> {
    FluctuationSeries::from_fn(terms, |k| {
        let x = chi(k);
        Ok(complex_gamma(x / 2.0)? * complex_zeta(x - 1.0)? * (x - 1.0) / LN_2)
    })
}

/// Fluctuation in the expected total fringe size of a random lattice path.
pub fn total_fringe_fluctuation(terms: usize) -> Result<FluctuationSeries> {
    let scale = 2.0 / (3.0 * PI.sqrt() * LN_2);
    FluctuationSeries::from_fn(terms, |k| {
        let x = chi(k);
        Ok(complex_gamma((x + 3.0) / 2.0)? * (complex_zeta(x - 1.0)? * 2.0 + complex_zeta(x + 1.0)?) * scale)
    })
}
