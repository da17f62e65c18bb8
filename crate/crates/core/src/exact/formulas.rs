//! Closed-form counting and expectation formulas for trees and paths.
//!
//! Every integer constant appearing in the formulas lives in [`FormulaConstants`]. The
//! defaults are the true values; the verification sweeps accept a perturbed set so that a
//! mutation of any single constant can be shown to be caught by the brute-force oracles.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use super::binomial::{binomial, catalan, dyadic_valuation, BinomialRow};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormulaConstants {
    /// `C_n = binom(2n, n) / (n + 1)`.
    pub catalan_offset: i64,
    /// `c` in the chain weight `z / (1 - c z)` and the substitution `z² / (1 - c z)²`.
    pub chain_weight: i64,
    /// Base of the power in Touchard's identity.
    pub touchard_base: i64,
    /// Register drop caused by one compactification.
    pub register_drop: i64,
    /// Leaves exceed internal nodes by this much.
    pub leaf_offset: i64,
    /// Middle weight of the second difference in the r-branch expectation.
    pub rbranch_center: i64,
    /// Index shift of the outer binomials in the r-branch expectation.
    pub rbranch_shift: i64,
    /// `a` in the weight `a - 2^{-v₂(k)}` of the total branch expectation.
    pub total_branch_weight: i64,
    /// Number of step directions, the base of `4^{r+1}` and `4^n`.
    pub path_base: i64,
    /// Leading factor of the summand in the closed expected-degree sum.
    pub cdeg_mean_weight: i64,
    /// Cubic weight in `(2λ³ + λ) / 3`.
    pub fringe_cubic: i64,
    /// Divisor in `(2λ³ + λ) / 3`.
    pub fringe_divisor: i64,
    /// Cubic weight `2` in `2k³(2 - 2^{-v₂(k)})`.
    pub total_fringe_cubic: i64,
    /// Divisor `12` of the total fringe expectation.
    pub total_fringe_divisor: i64,
}

impl Default for FormulaConstants {
    fn default() -> Self {
        FormulaConstants {
            catalan_offset: 1,
            chain_weight: 2,
            touchard_base: 2,
            register_drop: 1,
            leaf_offset: 1,
            rbranch_center: 2,
            rbranch_shift: 1,
            total_branch_weight: 2,
            path_base: 4,
            cdeg_mean_weight: 8,
            fringe_cubic: 2,
            fringe_divisor: 3,
            total_fringe_cubic: 2,
            total_fringe_divisor: 12,
        }
    }
}

impl FormulaConstants {
    pub const NAMES: [&'static str; 14] = [
        "catalan_offset",
        "chain_weight",
        "touchard_base",
        "register_drop",
        "leaf_offset",
        "rbranch_center",
        "rbranch_shift",
        "total_branch_weight",
        "path_base",
        "cdeg_mean_weight",
        "fringe_cubic",
        "fringe_divisor",
        "total_fringe_cubic",
        "total_fringe_divisor",
    ];

    fn field_mut(&mut self, name: &str) -> Option<&mut i64> {
        Some(match name {
            "catalan_offset" => &mut self.catalan_offset,
            "chain_weight" => &mut self.chain_weight,
            "touchard_base" => &mut self.touchard_base,
            "register_drop" => &mut self.register_drop,
            "leaf_offset" => &mut self.leaf_offset,
            "rbranch_center" => &mut self.rbranch_center,
            "rbranch_shift" => &mut self.rbranch_shift,
            "total_branch_weight" => &mut self.total_branch_weight,
            "path_base" => &mut self.path_base,
            "cdeg_mean_weight" => &mut self.cdeg_mean_weight,
            "fringe_cubic" => &mut self.fringe_cubic,
            "fringe_divisor" => &mut self.fringe_divisor,
            "total_fringe_cubic" => &mut self.total_fringe_cubic,
            "total_fringe_divisor" => &mut self.total_fringe_divisor,
            _ => return None,
        })
    }

    /// Copy with one bit of one named constant flipped.
    pub fn with_bit_flipped(mut self, name: &str, bit: u32) -> Result<Self> {
        if bit >= 63 {
            return Err(Error::InvalidArgument(format!("bit {bit} out of range")));
        }
        let field =
            self.field_mut(name).ok_or_else(|| Error::InvalidArgument(format!("unknown formula constant {name:?}")))?;
        *field ^= 1 << bit;
        Ok(self)
    }

    fn nonzero(value: i64, what: &str) -> Result<BigInt> {
        if value == 0 {
            return Err(Error::InvalidArgument(format!("{what} is zero")));
        }
        Ok(BigInt::from(value))
    }

    pub fn catalan(&self, n: u64) -> Result<BigInt> {
        let n = n as i64;
        let denom = Self::nonzero(n + self.catalan_offset, "catalan denominator")?;
        Ok(binomial(2 * n, n) / denom)
    }

    /// Whether `C_{n+1} = Σ_{k <= n/2} C_k 2^{n-2k} binom(n, 2k)` holds exactly.
    pub fn touchard_check(&self, n: u64) -> bool {
        let base = BigInt::from(self.touchard_base);
        let rhs: BigInt = (0..=n / 2)
            .map(|k| catalan(k) * Pow::pow(&base, (n - 2 * k) as u32) * binomial(n as i64, 2 * k as i64))
            .sum();
        catalan(n + 1) == rhs
    }

    /// Expected number of r-branches in a uniform random tree of size `n >= 1`.
    pub fn expected_r_branches(&self, n: u64, r: u32) -> Result<BigRational> {
        require_positive(n)?;
        let n = n as i64;
        let row = BinomialRow::new(2 * n, n + 1 + self.rbranch_shift.abs());
        let mut sum = BigInt::zero();
        for lambda in multiples(r, n + 1) {
            let step = lambda << r;
            let term = row.get(n + self.rbranch_shift - step) - BigInt::from(self.rbranch_center) * row.get(n - step)
                + row.get(n - self.rbranch_shift - step);
            sum += term * lambda;
        }
        Ok(BigRational::new(sum * (n + 1), row.get(n)))
    }

    /// Expected total number of branches in a uniform random tree of size `n >= 1`.
    pub fn expected_branches(&self, n: u64) -> Result<BigRational> {
        require_positive(n)?;
        let n = n as i64;
        let row = BinomialRow::new(2 * n, n + 1 + self.rbranch_shift.abs());
        let mut sum = BigInt::zero();
        for k in 1..=n + 1 {
            let v = dyadic_valuation(k as u64);
            // k (a - 2^{-v}) = (a 2^v - 1) · odd(k)
            let weight = ((BigInt::from(self.total_branch_weight) << v) - 1) * (k >> v);
            let term = row.get(n + self.rbranch_shift - k) - BigInt::from(self.rbranch_center) * row.get(n - k)
                + row.get(n - self.rbranch_shift - k);
            sum += weight * term;
        }
        Ok(BigRational::new(sum * (n + 1), row.get(n)))
    }

    /// Number of paths of length `n >= 1` with compactification degree `r`.
    pub fn count_paths_cdeg(&self, n: u64, r: u32) -> Result<BigInt> {
        require_positive(n)?;
        let n = n as i64;
        let row = BinomialRow::new(2 * n - 1, n);
        let mut sum = BigInt::zero();
        for lambda in multiples(r, n) {
            let step = lambda << r;
            let term = row.get(n - step) - row.get(n - step - 1);
            if lambda % 2 == 1 {
                sum += term * lambda;
            } else {
                sum -= term * lambda;
            }
        }
        Ok(Pow::pow(&BigInt::from(self.path_base), r + 1) * sum)
    }

    pub fn prob_cdeg(&self, n: u64, r: u32) -> Result<BigRational> {
        Ok(BigRational::new(self.count_paths_cdeg(n, r)?, self.paths_of_length(n)?))
    }

    fn paths_of_length(&self, n: u64) -> Result<BigInt> {
        let total = Pow::pow(&BigInt::from(self.path_base), n);
        if total.is_zero() {
            return Err(Error::InvalidArgument("number of paths is zero".into()));
        }
        Ok(total)
    }

    /// Distribution of the compactification degree: `P(X_n = r)` for `r = 0..=log2(n)`.
    pub fn cdeg_distribution(&self, n: u64) -> Result<Vec<BigRational>> {
        require_positive(n)?;
        (0..=max_degree(n)).map(|r| self.prob_cdeg(n, r)).collect()
    }

    /// Expected compactification degree, as `Σ r P(X_n = r)`.
    pub fn expected_cdeg(&self, n: u64) -> Result<BigRational> {
        Ok(self.cdeg_distribution(n)?.into_iter().enumerate().map(|(r, p)| p * BigInt::from(r)).sum())
    }

    /// Expected compactification degree from the single closed sum over `k`, normalised by
    /// the number of paths `4^n`.
    pub fn expected_cdeg_closed(&self, n: u64) -> Result<BigRational> {
        require_positive(n)?;
        let n = n as i64;
        let row = BinomialRow::new(2 * n - 1, n);
        let mut sum = BigInt::zero();
        for k in 1..=n {
            let v = dyadic_valuation(k as u64);
            let weight = BigInt::from(self.cdeg_mean_weight) * k * ((BigInt::one() << v) - 1);
            sum += weight * (row.get(n - k) - row.get(n - k - 1));
        }
        Ok(BigRational::new(sum, self.paths_of_length(n as u64)?))
    }

    /// Expected size of the `r`th fringe of a uniform random path of length `n >= 1`.
    pub fn expected_fringe(&self, n: u64, r: u32) -> Result<BigRational> {
        require_positive(n)?;
        let divisor = Self::nonzero(self.fringe_divisor, "fringe divisor")?;
        let n = n as i64;
        let row = BinomialRow::new(2 * n - 1, n);
        let mut sum = BigInt::zero();
        for lambda in multiples(r, n) {
            let step = lambda << r;
            let l = BigInt::from(lambda);
            let weight = BigInt::from(self.fringe_cubic) * &l * &l * &l + &l;
            sum += weight * (row.get(n - step) - row.get(n - step - 1));
        }
        let scale = Pow::pow(&BigInt::from(self.path_base), r + 1);
        Ok(BigRational::new(sum * scale, divisor * self.paths_of_length(n as u64)?))
    }

    /// Expected total fringe size `Σ_r E[size of the rth fringe]` for paths of length `n >= 1`.
    pub fn expected_total_fringe(&self, n: u64) -> Result<BigRational> {
        require_positive(n)?;
        let divisor = Self::nonzero(self.total_fringe_divisor, "total fringe divisor")?;
        let n = n as i64;
        let row = BinomialRow::new(2 * n - 1, n);
        let mut sum = BigInt::zero();
        for k in 1..=n {
            let v = dyadic_valuation(k as u64);
            let kk = BigInt::from(k);
            let odd = BigInt::from(k >> v);
            // 2k³(2 - 2^{-v}) = 2k² · odd(k) · (2^{v+1} - 1)
            let cubic = BigInt::from(self.total_fringe_cubic) * &kk * &kk * &odd * ((BigInt::one() << (v + 1)) - 1);
            let linear = &kk * ((BigInt::one() << (v + 1)) - 1);
            sum += (cubic + linear) * (row.get(n - k) - row.get(n - k - 1));
        }
        // summing the per-fringe formula over r gives 4^{2-n} / 12 in front
        let base = BigInt::from(self.path_base);
        Ok(BigRational::new(sum * &base * &base, divisor * self.paths_of_length(n as u64)?))
    }
}

fn require_positive(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("size must be at least 1".into()));
    }
    Ok(())
}

/// Largest possible compactification degree (or register) for size `n >= 1`: `floor(log2 n)`.
pub fn max_degree(n: u64) -> u32 {
    63 - n.leading_zeros()
}

/// `λ = 1, 2, …` with `λ 2^r <= limit`; empty once `2^r` exceeds the limit.
fn multiples(r: u32, limit: i64) -> impl Iterator<Item = i64> {
    let count = if r >= 62 { 0 } else { limit.max(0) >> r };
    1..=count
}

macro_rules! default_forward {
    ($(#[$meta:meta])* $name:ident($($arg:ident: $ty:ty),*) -> $ret:ty) => {
        $(#[$meta])*
        pub fn $name($($arg: $ty),*) -> $ret {
            FormulaConstants::default().$name($($arg),*)
        }
    };
}

default_forward!(expected_r_branches(n: u64, r: u32) -> Result<BigRational>);
default_forward!(expected_branches(n: u64) -> Result<BigRational>);
default_forward!(count_paths_cdeg(n: u64, r: u32) -> Result<BigInt>);
default_forward!(prob_cdeg(n: u64, r: u32) -> Result<BigRational>);
default_forward!(cdeg_distribution(n: u64) -> Result<Vec<BigRational>>);
default_forward!(expected_cdeg(n: u64) -> Result<BigRational>);
default_forward!(expected_cdeg_closed(n: u64) -> Result<BigRational>);
default_forward!(expected_fringe(n: u64, r: u32) -> Result<BigRational>);
default_forward!(expected_total_fringe(n: u64) -> Result<BigRational>);
default_forward!(touchard_check(n: u64) -> bool);
