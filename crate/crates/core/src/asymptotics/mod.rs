//! Floating-point asymptotics: special functions, periodic fluctuations and expansions.

pub mod expansions;
pub mod fourier;
pub mod special;

pub use expansions::*;
pub use fourier::{branches_fluctuation, chi, total_fringe_fluctuation, FluctuationSeries, DEFAULT_TERMS};
pub use special::{complex_gamma, complex_zeta, normal_cdf, SpecialFunctionContext};
