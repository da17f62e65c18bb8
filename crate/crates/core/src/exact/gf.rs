//! Generating functions of trees and paths, built from their reduction recursions.
//!
//! With `w(z) = z / (1 - 2z)` and `σ(z) = w(z)²`:
//!
//! * `B(z) = 1 + w · B(σ)`, and `B_r = 1 + w · B_{r-1}(σ)` with `B_0 = 1` counts trees of
//!   register at most `r`;
//! * `L_r(z) = 4 L_{r-1}(σ)` with `L_0 = 4z` counts paths of compactification degree `r`;
//! * `H_r(z, v) = 4 H_{r-1}(σ, v)` with `H_0 = 4zv / (1 - 4zv)` marks the size of the `r`th
//!   fringe by `v`;
//! * `G_r(z, v) = w · G_{r-1}(σ, v)` with `G_0 = v B(zv)` marks the leaves of `Φ^r(t)`, that
//!   is the r-branches of `t`.

use num_bigint::BigInt;
use num_traits::{One, Pow};

use super::binomial::{binomial, catalan};
use super::formulas::FormulaConstants;
use super::series::{BivariateSeries, TruncatedSeries};
use crate::error::{Error, Result};

/// Default working order of the series.
pub const DEFAULT_ORDER: usize = 64;
/// Largest working order accepted.
pub const DEFAULT_ORDER_BOUND: usize = 4096;
/// Retained powers of `v - 1` in bivariate series: enough for mean and variance.
pub const DEFAULT_V_ORDER: usize = 2;

fn check_order(order: usize) -> Result<()> {
    if order > DEFAULT_ORDER_BOUND {
        return Err(Error::BoundExceeded { what: "series order", value: order, bound: DEFAULT_ORDER_BOUND });
    }
    Ok(())
}

/// Generating-function builders parameterised by the formula constants.
#[derive(Debug, Clone, Copy, Default)]
pub struct SeriesBuilder {
    pub constants: FormulaConstants,
}

impl SeriesBuilder {
    pub fn new(constants: FormulaConstants) -> Self {
        SeriesBuilder { constants }
    }

    fn chain(&self) -> BigInt {
        BigInt::from(self.constants.chain_weight)
    }

    fn expand(&self, s: &TruncatedSeries<BigInt>) -> TruncatedSeries<BigInt> {
        s.compose_square_ratio(&self.chain())
    }

    /// Catalan generating function as the fixed point of `B = 1 + w · B(σ)`.
    pub fn series_b(&self, order: usize) -> Result<TruncatedSeries<BigInt>> {
        check_order(order)?;
        let one = TruncatedSeries::one(order);
        let mut b = one.clone();
        // each round fixes at least one more coefficient
        for _ in 0..=order {
            let next = one.add(&self.expand(&b).mul_chain_weight(&self.chain()));
            if next == b {
                return Ok(b);
            }
            b = next;
        }
        Ok(b)
    }

    /// Trees of register at most `r`.
    pub fn series_br(&self, r: u32, order: usize) -> Result<TruncatedSeries<BigInt>> {
        check_order(order)?;
        let one = TruncatedSeries::one(order);
        let mut b = one.clone();
        for _ in 0..r {
            b = one.add(&self.expand(&b).mul_chain_weight(&self.chain()));
        }
        Ok(b)
    }

    /// Paths of compactification degree exactly `r`.
    pub fn series_lr(&self, r: u32, order: usize) -> Result<TruncatedSeries<BigInt>> {
        check_order(order)?;
        let base = BigInt::from(self.constants.path_base);
        let mut l = TruncatedSeries::monomial(base.clone(), 1, order);
        for _ in 0..r {
            l = self.expand(&l).scale_int(&base);
        }
        Ok(l)
    }

    /// `r`th fringes, with `v` marking the fringe size.
    pub fn series_hr(&self, r: u32, order: usize, v_order: usize) -> Result<BivariateSeries<BigInt>> {
        check_order(order)?;
        let base = BigInt::from(self.constants.path_base);
        // [z^n] (4zv)^n expanded at v = 1: 4^n binom(n, j) (v - 1)^j
        let slices = (0..=v_order)
            .map(|j| {
                TruncatedSeries::from_fn(order, |n| {
                    if n == 0 {
                        BigInt::from(0)
                    } else {
                        Pow::pow(&base, n) * binomial(n as i64, j as i64)
                    }
                })
            })
            .collect();
        let mut h = BivariateSeries::new(slices);
        for _ in 0..r {
            h = h.map_z(|s| self.expand(s).scale_int(&base));
        }
        Ok(h)
    }

    /// Trees of register at least `r`, with `v` marking the number of r-branches.
    pub fn series_gr(&self, r: u32, order: usize, v_order: usize) -> Result<BivariateSeries<BigInt>> {
        check_order(order)?;
        // [z^m] v B(zv) = C_m v^{m+1}, expanded at v = 1
        let slices = (0..=v_order)
            .map(|j| TruncatedSeries::from_fn(order, |m| catalan(m as u64) * binomial(m as i64 + 1, j as i64)))
            .collect();
        let mut g = BivariateSeries::new(slices);
        for _ in 0..r {
            g = g.map_z(|s| self.expand(s).mul_chain_weight(&self.chain()));
        }
        Ok(g)
    }
}

pub fn series_b(order: usize) -> Result<TruncatedSeries<BigInt>> {
    SeriesBuilder::default().series_b(order)
}

pub fn series_br(r: u32, order: usize) -> Result<TruncatedSeries<BigInt>> {
    SeriesBuilder::default().series_br(r, order)
}

pub fn series_lr(r: u32, order: usize) -> Result<TruncatedSeries<BigInt>> {
    SeriesBuilder::default().series_lr(r, order)
}

pub fn series_hr(r: u32, order: usize, v_order: usize) -> Result<BivariateSeries<BigInt>> {
    SeriesBuilder::default().series_hr(r, order, v_order)
}

pub fn series_gr(r: u32, order: usize, v_order: usize) -> Result<BivariateSeries<BigInt>> {
    SeriesBuilder::default().series_gr(r, order, v_order)
}

/// `L(z) = 4z / (1 - 4z)`, all nonempty paths.
pub fn series_l(order: usize) -> Result<TruncatedSeries<BigInt>> {
    check_order(order)?;
    let four = BigInt::from(4);
    Ok(TruncatedSeries::monomial(four.clone(), 1, order).div_one_minus(&four))
}

/// Closed-form Catalan series, for cross-checks.
pub fn catalan_series(order: usize) -> TruncatedSeries<BigInt> {
    TruncatedSeries::from_fn(order, |n| catalan(n as u64))
}

/// `z / (1 - 2z)` as an ordinary series.
pub fn chain_weight_series(order: usize) -> TruncatedSeries<BigInt> {
    TruncatedSeries::monomial(BigInt::one(), 1, order).div_one_minus(&BigInt::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn catalan_fixed_point() {
        let b = series_b(40).unwrap();
        assert_eq!(b, catalan_series(40));
        let head: Vec<i64> = b.coeffs()[..6].iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(head, vec![1, 1, 2, 5, 14, 42]);
    }

    #[test]
    fn catalan_functional_equation() {
        // B = 1 + z B², and recomposing the right-hand side of the reduction identity
        let order = 40;
        let b = catalan_series(order);
        let z = TruncatedSeries::monomial(BigInt::one(), 1, order);
        assert_eq!(b, TruncatedSeries::one(order).add(&z.mul(&b.mul(&b))));
        let w = chain_weight_series(order);
        let rhs = TruncatedSeries::one(order).add(&w.mul(&b.compose(&w.mul(&w)).unwrap()));
        assert_eq!(b, rhs);
    }

    #[test]
    fn path_functional_equation() {
        // L = 4 L(σ) + 4z
        let order = 40;
        let l = series_l(order).unwrap();
        let four = BigInt::from(4);
        let rhs = l.compose_square_ratio(&BigInt::from(2)).scale_int(&four).add(&TruncatedSeries::monomial(
            four.clone(),
            1,
            order,
        ));
        assert_eq!(l, rhs);
        for n in 1..=order {
            assert_eq!(l.coeff(n), &Pow::pow(&four, n));
        }
    }

    #[test]
    fn first_degree_paths() {
        // 16 z² / (1 - 2z)²: coefficient 16 (n - 1) 2^{n-2}
        let l1 = series_lr(1, 12).unwrap();
        assert!(l1.coeff(1).is_zero());
        for n in 2..=12u32 {
            assert_eq!(l1.coeff(n as usize), &BigInt::from(16 * (n - 1) as i64 * (1i64 << (n - 2))));
        }
    }

    #[test]
    fn register_levels_partition_all_trees() {
        let order = 30;
        let all = catalan_series(order);
        let br = series_br(5, order).unwrap();
        // every tree of size <= 30 has register <= 4
        assert_eq!(br, all);
        assert_eq!(series_br(0, order).unwrap(), TruncatedSeries::one(order));
    }

    #[test]
    fn degree_levels_sum_to_all_paths() {
        let order = 40;
        let mut total = TruncatedSeries::zero(order);
        for r in 0..=6 {
            total = total.add(&series_lr(r, order).unwrap());
        }
        assert_eq!(total, series_l(order).unwrap());
    }

    #[test]
    fn fringe_series_at_v_one_counts_reducible_paths() {
        let order = 24;
        for r in 0..=3u32 {
            let h = series_hr(r, order, 2).unwrap();
            let mut reducible = TruncatedSeries::zero(order);
            for s in r..=6 {
                reducible = reducible.add(&series_lr(s, order).unwrap());
            }
            assert_eq!(h.slice(0), &reducible, "r = {r}");
        }
    }

    #[test]
    fn order_bound() {
        assert!(matches!(series_b(5000), Err(Error::BoundExceeded { .. })));
    }
}
