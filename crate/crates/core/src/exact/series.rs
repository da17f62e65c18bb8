//! Truncated power series with exact coefficients.

use std::fmt;
use std::ops::{AddAssign, MulAssign, Neg, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact coefficient ring of a [`TruncatedSeries`].
pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + for<'a> MulAssign<&'a BigInt>
{
    fn from_bigint(value: BigInt) -> Self;

    /// Multiplicative inverse, if it exists in the ring.
    fn try_recip(&self) -> Option<Self>;
}

impl Coefficient for BigInt {
    fn from_bigint(value: BigInt) -> Self {
        value
    }

    fn try_recip(&self) -> Option<Self> {
        if self.abs().is_one() {
            Some(self.clone())
        } else {
            None
        }
    }
}

impl Coefficient for BigRational {
    fn from_bigint(value: BigInt) -> Self {
        BigRational::from_integer(value)
    }

    fn try_recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Power series `Σ_{n<=N} a_n z^n` known exactly up to its working order `N`.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<C = BigRational> {
    coeffs: Vec<C>,
}

impl<C: fmt::Debug> fmt::Debug for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries(order {}) {:?}", self.coeffs.len() - 1, self.coeffs)
    }
}

impl<C: Coefficient> TruncatedSeries<C> {
    /// Builds a series of the given order, padding with zeros or truncating as needed.
    pub fn new(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> C) -> Self {
        TruncatedSeries { coeffs: (0..=order).map(f).collect() }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![C::one()], order)
    }

    /// `c z^k`.
    pub fn monomial(c: C, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// `[z^n]`; zero past the working order is not knowable, so this panics there.
    pub fn coeff(&self, n: usize) -> &C {
        assert!(n <= self.order(), "coefficient {n} beyond working order {}", self.order());
        &self.coeffs[n]
    }

    /// Index of the first nonzero coefficient, if any within the working order.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> TruncatedSeries<D> {
        TruncatedSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::from_fn(order, |n| {
            let mut c = self.coeffs[n].clone();
            c += &other.coeffs[n];
            c
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::from_fn(order, |n| {
            let mut c = self.coeffs[n].clone();
            c -= &other.coeffs[n];
            c
        })
    }

    pub fn scale(&self, factor: &C) -> Self {
        self.map(|c| {
            let mut c = c.clone();
            c *= factor;
            c
        })
    }

    pub fn scale_int(&self, factor: &BigInt) -> Self {
        self.map(|c| {
            let mut c = c.clone();
            c *= factor;
            c
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![C::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                let mut term = a.clone();
                term *= b;
                out[i + j] += &term;
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// Multiplication by `z^k`, keeping the working order.
    pub fn shift(&self, k: usize) -> Self {
        let order = self.order();
        let mut coeffs = vec![C::zero(); k.min(order + 1)];
        coeffs.extend(self.coeffs.iter().take(order + 1 - coeffs.len()).cloned());
        TruncatedSeries { coeffs }
    }

    /// Division by `1 - c z`, in linear time.
    pub fn div_one_minus(&self, c: &BigInt) -> Self {
        let mut coeffs = self.coeffs.clone();
        for n in 1..coeffs.len() {
            let mut carry = coeffs[n - 1].clone();
            carry *= c;
            coeffs[n] += &carry;
        }
        TruncatedSeries { coeffs }
    }

    pub fn inverse(&self) -> Result<Self> {
        let c0_inv = self.coeffs[0].try_recip().ok_or(Error::NonUnitSeries)?;
        let order = self.order();
        let mut inv: Vec<C> = Vec::with_capacity(order + 1);
        inv.push(c0_inv.clone());
        for n in 1..=order {
            let mut acc = C::zero();
            for k in 1..=n {
                let mut term = self.coeffs[k].clone();
                term *= &inv[n - k];
                acc += &term;
            }
            acc *= &c0_inv;
            inv.push(-acc);
        }
        Ok(TruncatedSeries { coeffs: inv })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// `self(inner(z))` by Horner's scheme; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::CompositionValuation);
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Self::zero(order);
        for a in self.coeffs[..=order].iter().rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += a;
        }
        Ok(acc)
    }

    /// `self(z^2 / (1 - c z)^2)` in quadratic time, working order preserved.
    ///
    /// Horner's scheme where each multiplication by the inner function is a shift by two
    /// followed by two linear-time divisions by `1 - c z`. With `c = 2` this is the
    /// substitution relating a tree (or path) to its reduction.
    pub fn compose_square_ratio(&self, c: &BigInt) -> Self {
        let order = self.order();
        let top = order / 2;
        let mut acc = Self::zero(order);
        for a in self.coeffs[..=top].iter().rev() {
            acc = acc.shift(2).div_one_minus(c).div_one_minus(c);
            acc.coeffs[0] += a;
        }
        acc
    }

    /// `z / (1 - c z) · self`, in linear time.
    pub fn mul_chain_weight(&self, c: &BigInt) -> Self {
        self.shift(1).div_one_minus(c)
    }
}

impl<C: Coefficient + fmt::Display> fmt::Display for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

/// Bivariate series in `z` and a marker `v`, stored as its Taylor expansion around `v = 1`:
/// `slices[j]` is the series coefficient of `(v - 1)^j`. Slice `j` evaluated at `z^n`
/// is the sum of `binom(X, j)` over all objects of size `n`, where `X` is the marked
/// parameter, so the first three slices carry count, mean and variance.
#[derive(Debug, Clone, PartialEq)]
pub struct BivariateSeries<C = BigRational> {
    slices: Vec<TruncatedSeries<C>>,
}

impl<C: Coefficient> BivariateSeries<C> {
    pub fn new(slices: Vec<TruncatedSeries<C>>) -> Self {
        assert!(!slices.is_empty(), "at least the v = 1 slice is required");
        BivariateSeries { slices }
    }

    /// Highest retained power of `v - 1`.
    pub fn v_order(&self) -> usize {
        self.slices.len() - 1
    }

    pub fn order(&self) -> usize {
        self.slices[0].order()
    }

    pub fn slice(&self, j: usize) -> &TruncatedSeries<C> {
        &self.slices[j]
    }

    pub fn slices(&self) -> &[TruncatedSeries<C>] {
        &self.slices
    }

    /// `[z^n]` as a truncated polynomial in `v - 1`.
    pub fn coeff(&self, n: usize) -> Vec<C> {
        self.slices.iter().map(|s| s.coeff(n).clone()).collect()
    }

    /// Applies a transformation acting on `z` only.
    pub fn map_z(&self, f: impl Fn(&TruncatedSeries<C>) -> TruncatedSeries<C>) -> Self {
        BivariateSeries { slices: self.slices.iter().map(f).collect() }
    }
}
