//! Exact arithmetic: binomials, truncated series, generating functions and the explicit
//! counting formulas.

pub mod binomial;
pub mod formulas;
pub mod gf;
pub mod moments;
pub mod series;

use num_rational::BigRational;
use num_traits::ToPrimitive;

pub use binomial::{binomial, catalan, dyadic_valuation, BinomialRow};
pub use formulas::*;
pub use gf::{series_b, series_br, series_gr, series_hr, series_l, series_lr, SeriesBuilder};
pub use moments::{var_cdeg_exact, var_fringe_exact, var_r_branches_exact, MarkedMoments};
pub use series::{BivariateSeries, Coefficient, TruncatedSeries};

/// Correctly rounded floating value of an exact rational.
pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
