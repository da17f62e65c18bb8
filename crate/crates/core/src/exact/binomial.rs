use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Binomial coefficient with the convention that it vanishes outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn catalan(n: u64) -> BigInt {
    let n = n as i64;
    binomial(2 * n, n) / (n + 1)
}

/// Largest `v` with `2^v | k`.
///
/// # Panics
/// If `k == 0`.
pub fn dyadic_valuation(k: u64) -> u32 {
    assert!(k > 0, "dyadic valuation of zero is undefined");
    k.trailing_zeros()
}

/// The entries `binom(m, 0..=upper)` of one Pascal row, with the out-of-range convention.
#[derive(Debug, Clone)]
pub struct BinomialRow {
    m: i64,
    values: Vec<BigInt>,
}

impl BinomialRow {
    pub fn new(m: i64, upper: i64) -> Self {
        let upper = upper.min(m).max(-1);
        let mut values = Vec::with_capacity((upper + 1).max(0) as usize);
        if upper >= 0 {
            let mut acc = BigInt::one();
            values.push(acc.clone());
            for k in 0..upper {
                acc *= m - k;
                acc /= k + 1;
                values.push(acc.clone());
            }
        }
        BinomialRow { m, values }
    }

    /// Full row `binom(m, 0..=m)`.
    pub fn full(m: i64) -> Self {
        Self::new(m, m)
    }

    pub fn get(&self, k: i64) -> BigInt {
        if k < 0 || k > self.m {
            return BigInt::zero();
        }
        match self.values.get(k as usize) {
            Some(v) => v.clone(),
            // symmetric half, when only the lower part was materialised
            None => match self.values.get((self.m - k) as usize) {
                Some(v) => v.clone(),
                None => binomial(self.m, k),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pascal(n: usize) -> Vec<Vec<BigInt>> {
        let mut rows = vec![vec![BigInt::one()]];
        for i in 1..=n {
            let prev = &rows[i - 1];
            let mut row = vec![BigInt::one(); i + 1];
            for k in 1..i {
                row[k] = &prev[k - 1] + &prev[k];
            }
            rows.push(row);
        }
        rows
    }

    #[test]
    fn small_values() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(4, -1), BigInt::zero());
        assert_eq!(binomial(4, 5), BigInt::zero());
        assert_eq!(binomial(-3, 1), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn against_pascal_recurrence() {
        let rows = pascal(40);
        for n in 0..=40i64 {
            for k in -2..=n + 2 {
                let expected = if (0..=n).contains(&k) { rows[n as usize][k as usize].clone() } else { BigInt::zero() };
                assert_eq!(binomial(n, k), expected, "({n}, {k})");
            }
        }
        assert_eq!(binomial(40, 20), "137846528820".parse::<BigInt>().unwrap());
    }

    #[test]
    fn large_central_binomial() {
        // binom(4000, 2000) via the row builder and the direct product agree
        let row = BinomialRow::new(4000, 2000);
        assert_eq!(row.get(2000), binomial(4000, 2000));
        assert_eq!(row.get(3999), BigInt::from(4000));
        assert_eq!(row.get(4001), BigInt::zero());
        assert!(binomial(4000, 2000).bits() > 3990);
    }

    #[test]
    fn catalan_numbers() {
        let expected = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012];
        for (n, c) in expected.iter().enumerate() {
            assert_eq!(catalan(n as u64), BigInt::from(*c));
        }
    }

    #[test]
    fn valuations() {
        assert_eq!(dyadic_valuation(1), 0);
        assert_eq!(dyadic_valuation(8), 3);
        assert_eq!(dyadic_valuation(12), 2);
    }

    #[test]
    #[should_panic]
    fn valuation_of_zero() {
        dyadic_valuation(0);
    }
}
