//! ζ near the lines Re s = -1 and Re s = 1 through an independent route: the alternating
//! eta series, accelerated with Borwein's weights, combined with the functional equation.

use std::f64::consts::PI;

use compactify::asymptotics::special::{complex_gamma, zeta_euler_maclaurin, zeta_reflected};
use compactify::asymptotics::{chi, complex_zeta};
use num_complex::Complex64;

/// ζ(s) for Re s > 0 away from the poles of 1/(1 - 2^{1-s}).
fn zeta_eta(s: Complex64, terms: usize) -> Complex64 {
    let n = terms as f64;
    let mut d = Vec::with_capacity(terms + 1);
    let mut term = 1.0;
    let mut sum = 1.0;
    d.push(sum);
    for i in 1..=terms {
        let i_f = i as f64;
        term *= 4.0 * (n + i_f - 1.0) * (n - i_f + 1.0) / ((2.0 * i_f) * (2.0 * i_f - 1.0));
        sum += term;
        d.push(sum);
    }
    let dn = d[terms];
    let eta: Complex64 = (0..terms)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * (d[k] - dn) / dn * Complex64::new(k as f64 + 1.0, 0.0).powc(-s)
        })
        .sum::<Complex64>()
        * -1.0;
    eta / (1.0 - Complex64::new(2.0, 0.0).powc(1.0 - s))
}

/// ζ(s) = 2^s π^{s-1} sin(πs/2) Γ(1-s) ζ(1-s), with ζ(1-s) from the eta series.
fn zeta_via_eta(s: Complex64) -> Complex64 {
    let two = Complex64::new(2.0, 0.0);
    two.powc(s)
        * Complex64::new(PI, 0.0).powc(s - 1.0)
        * (PI * s / 2.0).sin()
        * complex_gamma(1.0 - s).unwrap()
        * zeta_eta(1.0 - s, 80)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

#[test]
fn eta_route_matches_at_small_frequencies() {
    for k in [-3i64, -2, -1, 1, 2, 3] {
        let s = chi(k) - 1.0;
        let via_eta = zeta_via_eta(s);
        assert!(rel(zeta_euler_maclaurin(s).unwrap(), via_eta) < 1e-10, "k = {k}");
        assert!(rel(zeta_reflected(s).unwrap(), via_eta) < 1e-10, "k = {k}");
        // 1 - 2^{1-s} vanishes at chi(k) + 1, so the eta series is checked next to it
        let t = chi(k) + 1.5;
        assert!(rel(complex_zeta(t).unwrap(), zeta_eta(t, 80)) < 1e-10, "k = {k}");
    }
}

#[test]
fn eta_series_at_real_points() {
    let z2 = zeta_eta(Complex64::new(2.0, 0.0), 60);
    assert!((z2.re - PI * PI / 6.0).abs() < 1e-14);
    let half = zeta_eta(Complex64::new(0.5, 0.0), 60);
    assert!((half.re + 1.4603545088095868).abs() < 1e-13);
}
