//! Complex Γ and ζ, numerical derivatives, and the standard normal distribution function.
//!
//! Γ uses the Lanczos approximation (g = 7, nine terms) on `Re s >= 1/2` and the reflection
//! formula elsewhere; both are evaluated in logarithmic form so that arguments far up the
//! imaginary axis (where `|Γ|` decays like `e^{-π|t|/2}` and `sin` grows like `e^{π|t|}`)
//! neither overflow nor underflow. ζ uses Euler–Maclaurin summation, directly on
//! `Re s >= 0` and through the functional equation on `Re s < 0`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::binomial;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Number of Bernoulli correction terms in Euler–Maclaurin summation.
const EM_TERMS: usize = 15;

fn is_nonpositive_integer(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0
}

/// `ln sin(π s)` up to a multiple of `2πi`, stable for large `|Im s|`.
pub fn ln_sin_pi(s: Complex64) -> Complex64 {
    let z = s * PI;
    if z.im.abs() < 20.0 {
        return z.sin().ln();
    }
    if z.im > 0.0 {
        // sin z = (i/2) e^{-iz} (1 - e^{2iz})
        let i = Complex64::i();
        -i * z + Complex64::new(0.0, 0.5).ln() + (Complex64::new(1.0, 0.0) - (i * z * 2.0).exp()).ln()
    } else {
        ln_sin_pi(s.conj()).conj()
    }
}

fn ln_gamma_lanczos(s: Complex64) -> Complex64 {
    let z = s - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// `ln Γ(s)` on some branch; `exp` of it is `Γ(s)`.
pub fn ln_gamma(s: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(s) {
        return Err(Error::Pole { function: "gamma", at: format!("{s}") });
    }
    if s.re >= 0.5 {
        Ok(ln_gamma_lanczos(s))
    } else {
        Ok(PI.ln() - ln_sin_pi(s) - ln_gamma_lanczos(1.0 - s))
    }
}

pub fn complex_gamma(s: Complex64) -> Result<Complex64> {
    Ok(ln_gamma(s)?.exp())
}

/// `B_{2j} / (2j)!` for `j = 1..=EM_TERMS`, from the exact Bernoulli recurrence.
fn bernoulli_weights() -> &'static [f64] {
    static WEIGHTS: OnceLock<Vec<f64>> = OnceLock::new();
    WEIGHTS.get_or_init(|| {
        let top = 2 * EM_TERMS;
        let mut b: Vec<BigRational> = Vec::with_capacity(top + 1);
        b.push(BigRational::from_integer(1.into()));
        for m in 1..=top {
            let mut acc = BigRational::zero();
            for (k, bk) in b.iter().enumerate() {
                acc += bk * binomial(m as i64 + 1, k as i64);
            }
            b.push(-acc / BigInt::from(m + 1));
        }
        let mut factorial = BigInt::from(1);
        let mut weights = Vec::with_capacity(EM_TERMS);
        for (m, bm) in b.iter().enumerate().skip(1) {
            factorial *= m;
            if m % 2 == 0 {
                let w = bm / &factorial;
                weights.push(w.to_f64().expect("finite"));
            }
        }
        weights
    })
}

/// ζ by Euler–Maclaurin summation; valid for every `s ≠ 1`.
pub fn zeta_euler_maclaurin(s: Complex64) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole { function: "zeta", at: "1".into() });
    }
    let cutoff = (s.norm() + 20.0).ceil() as usize;
    let n = cutoff as f64;
    let mut sum = Complex64::zero();
    for k in 1..cutoff {
        sum += (-s * (k as f64).ln()).exp();
    }
    let n_pow = (-s * n.ln()).exp();
    sum += n_pow * n / (s - 1.0) + n_pow * 0.5;
    // B_{2j}/(2j)! · s(s+1)…(s+2j-2) · N^{-s-2j+1}
    let mut rising = s;
    let mut power = n_pow / n;
    for (j, &w) in bernoulli_weights().iter().enumerate() {
        let term = rising * power * w;
        sum += term;
        let k = 2.0 * (j + 1) as f64;
        rising *= (s + (k - 1.0)) * (s + k);
        power /= n * n;
    }
    Ok(sum)
}

/// ζ through the functional equation `ζ(s) = 2^s π^{s-1} sin(πs/2) Γ(1-s) ζ(1-s)`.
pub fn zeta_reflected(s: Complex64) -> Result<Complex64> {
    if s.im == 0.0 && s.re < 0.0 && s.re % 2.0 == 0.0 {
        return Ok(Complex64::zero());
    }
    let one_minus = 1.0 - s;
    let log_factor = s * 2f64.ln() + (s - 1.0) * PI.ln() + ln_sin_pi(s * 0.5) + ln_gamma(one_minus)?;
    Ok(log_factor.exp() * zeta_euler_maclaurin(one_minus)?)
}

pub fn complex_zeta(s: Complex64) -> Result<Complex64> {
    if s.re >= 0.0 {
        zeta_euler_maclaurin(s)
    } else {
        zeta_reflected(s)
    }
}

/// `m`th derivative at `x` by the trapezoidal rule on Cauchy's integral over a circle of the
/// given radius; converges geometrically for functions analytic on a larger disc.
pub fn derivative_contour(
    f: impl Fn(Complex64) -> Result<Complex64>,
    x: f64,
    m: u32,
    radius: f64,
    points: usize,
) -> Result<f64> {
    let mut acc = Complex64::zero();
    for j in 0..points {
        let theta = 2.0 * PI * j as f64 / points as f64;
        let e = Complex64::from_polar(1.0, theta);
        acc += f(x + radius * e)? * e.powu(m).inv();
    }
    let factorial: f64 = (1..=m).map(f64::from).product();
    Ok((acc * factorial / (points as f64 * radius.powi(m as i32))).re)
}

/// First or second derivative by central differences with two Richardson levels.
pub fn derivative_central(f: impl Fn(f64) -> Result<f64>, x: f64, m: u32, h: f64) -> Result<f64> {
    let diff = |h: f64| -> Result<f64> {
        match m {
            1 => Ok((f(x + h)? - f(x - h)?) / (2.0 * h)),
            2 => Ok((f(x + h)? - 2.0 * f(x)? + f(x - h)?) / (h * h)),
            _ => Err(Error::InvalidArgument(format!("derivative order {m} unsupported"))),
        }
    };
    let (d1, d2, d4) = (diff(h)?, diff(h / 2.0)?, diff(h / 4.0)?);
    let r1 = (4.0 * d2 - d1) / 3.0;
    let r2 = (4.0 * d4 - d2) / 3.0;
    Ok((16.0 * r2 - r1) / 15.0)
}

/// Constants shared by the asymptotic expansions, computed once.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialFunctionContext {
    pub euler_gamma: f64,
    pub ln2: f64,
    pub pi: f64,
    /// `ζ'(-1)`.
    pub zeta_prime_minus_one: f64,
    /// `ζ''(0)`.
    pub zeta_second_zero: f64,
    /// Glaisher–Kinkelin constant `A`, from `ln A = 1/12 - ζ'(-1)`.
    pub glaisher: f64,
}

impl SpecialFunctionContext {
    pub fn new() -> Result<Self> {
        let zeta_prime_minus_one = derivative_contour(zeta_euler_maclaurin, -1.0, 1, 0.5, 64)?;
        let zeta_second_zero = derivative_contour(zeta_euler_maclaurin, 0.0, 2, 0.5, 64)?;
        Ok(SpecialFunctionContext {
            euler_gamma: EULER_GAMMA,
            ln2: std::f64::consts::LN_2,
            pi: PI,
            zeta_prime_minus_one,
            zeta_second_zero,
            glaisher: (1.0 / 12.0 - zeta_prime_minus_one).exp(),
        })
    }

    /// Shared instance.
    pub fn global() -> &'static Self {
        static CONTEXT: OnceLock<SpecialFunctionContext> = OnceLock::new();
        CONTEXT.get_or_init(|| SpecialFunctionContext::new().expect("constants are finite"))
    }
}

/// `erfc(x)`: Taylor series of `erf` for `|x| < 3`, continued fraction beyond.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        return 2.0 - erfc(-x);
    }
    if x < 3.0 {
        // erf x = 2/√π Σ (-1)^k x^{2k+1} / (k! (2k+1))
        let mut term = x;
        let mut sum = x;
        let x2 = x * x;
        let mut k = 0.0;
        while term.abs() > 1e-17 * sum.abs() {
            k += 1.0;
            term *= -x2 / k;
            sum += term / (2.0 * k + 1.0);
        }
        return 1.0 - 2.0 / PI.sqrt() * sum;
    }
    if x > 27.0 {
        return 0.0;
    }
    // erfc x = e^{-x²}/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + …)))), modified Lentz
    let tiny = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for k in 1..500 {
        let a = k as f64 / 2.0;
        d = x + a * d;
        d = if d.abs() < tiny { tiny } else { d };
        c = x + a / c;
        c = if c.abs() < tiny { tiny } else { c };
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / (PI.sqrt() * f)
}

/// Standard normal distribution function.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}
