//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::f64::consts::PI;
use std::process::Command;
use std::time::Instant;

use compactify::asymptotics::special::{ln_gamma, ln_sin_pi, zeta_euler_maclaurin, zeta_reflected};
use compactify::asymptotics::{
    asym_expected_branches_smooth, asym_expected_cdeg_smooth, asym_total_fringe_smooth, asym_var_cdeg_smooth,
    branches_fluctuation, chi, expected_r_branches_rational, fringe_rational, geometric_grid, log4,
    total_fringe_fluctuation, var_r_branches_rational,
};
use compactify::exact::{
    catalan, count_paths_cdeg, expected_branches, expected_cdeg, expected_cdeg_closed, expected_fringe,
    expected_r_branches, expected_total_fringe, max_degree, series_b, to_f64, touchard_check, var_cdeg_exact,
    FormulaConstants, MarkedMoments,
};
use compactify::montecarlo::normality_test;
use compactify::oracle::{path_stats, tree_stats, PathStats, TreeStats};
use compactify::tree::enumerate_trees;
use compactify::verify::Sweep;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Pow, Zero};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

/// Brute-force statistics shared by several criteria.
struct Oracles {
    trees: Vec<TreeStats>,
    paths: Vec<PathStats>,
}

impl Oracles {
    fn tree(&self, n: usize) -> &TreeStats {
        &self.trees[n - 1]
    }

    fn path(&self, n: usize) -> &PathStats {
        &self.paths[n - 1]
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(err: compactify::Error) -> String {
    err.to_string()
}

/// Scaled residuals must not grow by more than half from one size to the next.
fn no_growth(scaled: &[f64]) -> bool {
    scaled.iter().all(|s| s.is_finite()) && scaled.windows(2).all(|w| w[1] <= 1.5 * w[0] + 1e-12)
}

fn criterion_1() -> Outcome {
    let b = series_b(12).map_err(e)?;
    for n in 0..=12usize {
        let count = BigInt::from(enumerate_trees(n).map_err(e)?.count());
        ensure(count == catalan(n as u64), || format!("n = {n}: {count} trees, C_n = {}", catalan(n as u64)))?;
        ensure(&count == b.coeff(n), || format!("n = {n}: [z^n]B = {}", b.coeff(n)))?;
    }
    Ok("tree counts equal C_n and [z^n]B for n <= 12".into())
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    for n in 0..=60 {
        ensure(touchard_check(n), || format!("fails at n = {n}"))?;
    }
    Ok(format!("holds for n <= 60 in {:.2?}", t.elapsed()))
}

fn criterion_3(o: &Oracles) -> Outcome {
    let mut trees = 0;
    for n in 1..=10 {
        let s = o.tree(n);
        ensure(s.reduction_violations == 0, || {
            format!("register drop fails {} times at n = {n}", s.reduction_violations)
        })?;
        ensure(s.characterization_violations == 0, || {
            format!("leaf characterization fails {} times at n = {n}", s.characterization_violations)
        })?;
        trees += s.count;
    }
    Ok(format!("{trees} trees, no violation"))
}

fn criterion_4(o: &Oracles) -> Outcome {
    let mut checks = 0;
    for n in 1..=12usize {
        let s = o.tree(n);
        for r in 0..=max_degree(n as u64) + 1 {
            let formula = expected_r_branches(n as u64, r).map_err(e)?;
            let brute = s.mean_r_branches(r as usize);
            ensure(formula == brute, || format!("n = {n}, r = {r}: {formula} vs {brute}"))?;
            checks += 1;
        }
    }
    Ok(format!("{checks} exact equalities for n <= 12"))
}

fn criterion_5(o: &Oracles) -> Outcome {
    for n in 1..=10 {
        let v = o.tree(n).branch_leaf_violations;
        ensure(v == 0, || format!("{v} violations at n = {n}"))?;
    }
    Ok("r-branches equal leaves of the r-fold compactification for n <= 10".into())
}

fn criterion_6(o: &Oracles) -> Outcome {
    for n in 1..=12usize {
        let formula = expected_branches(n as u64).map_err(e)?;
        let brute = o.tree(n).mean_total_branches();
        ensure(formula == brute, || format!("n = {n}: {formula} vs {brute}"))?;
    }
    Ok("exact equality for n <= 12".into())
}

fn criterion_7(o: &Oracles) -> Outcome {
    let sizes = [200u64, 400, 800, 1600];
    let mut detail = Vec::new();
    for r in 1..=3u32 {
        let mut mean_scaled = Vec::new();
        let mut var_scaled = Vec::new();
        for &n in &sizes {
            let res = expected_r_branches(n, r).map_err(e)? - expected_r_branches_rational(n, r).map_err(e)?;
            mean_scaled.push(to_f64(&res).abs() * (n as f64).powi(3));
            let v = MarkedMoments::r_branches(r, n as usize).map_err(e)?.variance(n).map_err(e)?;
            let res = v - var_r_branches_rational(n, r).map_err(e)?;
            var_scaled.push(to_f64(&res).abs() * (n as f64).powi(2));
        }
        ensure(no_growth(&mean_scaled), || format!("r = {r}: mean residual n^3 {mean_scaled:?}"))?;
        ensure(no_growth(&var_scaled), || format!("r = {r}: variance residual n^2 {var_scaled:?}"))?;
        detail.push(format!("r={r}: n^3|dE| {:.3e}, n^2|dV| {:.3e}", mean_scaled[3], var_scaled[3]));
    }
    // series variance agrees with brute force where enumeration is possible
    for n in 1..=12usize {
        for r in 0..=max_degree(n as u64) + 1 {
            let series = MarkedMoments::r_branches(r, n).map_err(e)?.variance(n as u64).map_err(e)?;
            let brute = o.tree(n).var_r_branches(r as usize);
            ensure(series == brute, || format!("variance n = {n}, r = {r}: {series} vs {brute}"))?;
        }
    }
    for n in 1..=2000 {
        let one = BigInt::from(n + 1);
        ensure(expected_r_branches_rational(n, 0).map_err(e)? == BigRational::from_integer(one), || {
            format!("r = 0 mean expansion is not n + 1 at n = {n}")
        })?;
        ensure(var_r_branches_rational(n, 0).map_err(e)?.is_zero(), || format!("r = 0 variance nonzero at n = {n}"))?;
    }
    Ok(detail.join("; "))
}

fn criterion_8() -> Outcome {
    let delta = branches_fluctuation(20).map_err(e)?;
    let mut worst: f64 = 0.0;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for n in geometric_grid(256, 4096, 80) {
        let exact = to_f64(&expected_branches(n).map_err(e)?);
        let empirical = exact - asym_expected_branches_smooth(n).map_err(e)?.value;
        worst = worst.max((empirical - delta.evaluate(log4(n as f64))).abs());
        lo = lo.min(empirical);
        hi = hi.max(empirical);
    }
    let (flo, fhi) = delta.range(2000);
    ensure(worst <= 5e-3, || format!("max residual {worst:.3e} > 5e-3"))?;
    ensure(lo >= -0.09 && hi <= 0.06, || format!("empirical cloud [{lo:.4}, {hi:.4}] outside [-0.09, 0.06]"))?;
    ensure(flo >= -0.09 && fhi <= 0.06, || format!("Fourier series [{flo:.4}, {fhi:.4}] outside [-0.09, 0.06]"))?;
    Ok(format!("max residual {worst:.2e}; cloud [{lo:.4}, {hi:.4}]; series [{flo:.4}, {fhi:.4}]"))
}

fn criterion_9(o: &Oracles) -> Outcome {
    let mut checks = 0u64;
    for n in 1..=10usize {
        let s = o.path(n);
        let nn = n as u64;
        for r in 0..=max_degree(nn) + 1 {
            let count = count_paths_cdeg(nn, r).map_err(e)?;
            ensure(count == BigInt::from(s.count_with_cdeg(r as usize)), || format!("count n = {n}, r = {r}"))?;
            let fringe = expected_fringe(nn, r).map_err(e)?;
            ensure(fringe == s.mean_fringe(r as usize), || format!("fringe n = {n}, r = {r}: {fringe}"))?;
            checks += 2;
        }
        let mean = s.mean_cdeg();
        ensure(expected_cdeg(nn).map_err(e)? == mean, || format!("degree mean n = {n}"))?;
        ensure(expected_cdeg_closed(nn).map_err(e)? == mean, || format!("closed degree mean n = {n}"))?;
        let total = expected_total_fringe(nn).map_err(e)?;
        ensure(total == s.mean_total_fringe(), || format!("total fringe n = {n}: {total}"))?;
        checks += 3;
    }
    for n in 1..=200u64 {
        let sum: BigInt =
            (0..=max_degree(n)).map(|r| count_paths_cdeg(n, r)).sum::<compactify::Result<BigInt>>().map_err(e)?;
        ensure(sum == Pow::pow(&BigInt::from(4), n), || format!("row sum n = {n}"))?;
    }
    Ok(format!("{checks} exact equalities for n <= 10; row sums 4^n for n <= 200"))
}

fn criterion_10() -> Outcome {
    let residual = |n: u64| -> Result<f64, String> {
        Ok(to_f64(&expected_cdeg(n).map_err(e)?) - asym_expected_cdeg_smooth(n).map_err(e)?.value)
    };
    let (mut period, mut bound, mut var_bound): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for n in geometric_grid(64, 1024, 40) {
        let a = residual(n)?;
        let b = residual(4 * n)?;
        period = period.max((a - b).abs());
        bound = bound.max(a.abs()).max(b.abs());
        let v = to_f64(&var_cdeg_exact(n).map_err(e)?) - asym_var_cdeg_smooth(n).map_err(e)?.value;
        var_bound = var_bound.max(v.abs());
    }
    ensure(period < 1e-2, || format!("|res(n) - res(4n)| up to {period:.3e}"))?;
    ensure(bound <= 0.2, || format!("|res| up to {bound:.3}"))?;
    ensure(var_bound <= 0.2, || format!("|variance res| up to {var_bound:.3}"))?;
    Ok(format!("max |res(n)-res(4n)| {period:.2e}; max |res| {bound:.4}; max |var res| {var_bound:.4}"))
}

fn criterion_11() -> Outcome {
    let res = |n: u64| -> Result<f64, String> {
        let diff = expected_fringe(n, 2).map_err(e)? - fringe_rational(n, 2).map_err(e)?.0;
        Ok(to_f64(&diff).abs())
    };
    let (a, b) = (res(64)?, res(128)?);
    ensure(b * 10.0 <= a && a > 0.0, || format!("residual {a:.3e} at 64, {b:.3e} at 128"))?;
    let mut ks = Vec::new();
    for r in [1, 2] {
        let rep = normality_test(r, 400, 100_000, 20_240_601).map_err(e)?;
        ensure(rep.ks <= 0.02, || format!("r = {r}: KS {:.4} > 0.02", rep.ks))?;
        ensure(rep.pass, || format!("r = {r}: KS {:.4} above threshold {:.4}", rep.ks, rep.threshold))?;
        ks.push(format!("KS(r={r}) {:.4}", rep.ks));
    }
    Ok(format!("residual {a:.2e} -> {b:.2e}; {}", ks.join(", ")))
}

fn criterion_12() -> Outcome {
    let delta = total_fringe_fluctuation(20).map_err(e)?;
    let mut worst: f64 = 0.0;
    for n in geometric_grid(128, 2048, 80) {
        let exact = to_f64(&expected_total_fringe(n).map_err(e)?);
        let smooth = asym_total_fringe_smooth(n).map_err(e)?.value;
        worst = worst.max((exact - smooth - delta.evaluate(log4(n as f64))).abs());
    }
    ensure(worst <= 1e-2, || format!("max residual {worst:.3e} > 1e-2"))?;
    Ok(format!("max residual {worst:.2e}"))
}

/// `|e^{a-b} - 1|` for two logarithms of the same quantity.
fn log_distance(a: Complex64, b: Complex64) -> f64 {
    let d = a - b;
    let im = (d.im + PI).rem_euclid(2.0 * PI) - PI;
    (Complex64::new(d.re, im).exp() - 1.0).norm()
}

fn criterion_13() -> Outcome {
    let mut gamma_worst: f64 = 0.0;
    let mut zeta_worst: f64 = 0.0;
    for k in (-30i64..=30).filter(|&k| k != 0) {
        let x = chi(k);
        // Γ(s) directly against Γ(s) = π / (sin(πs) Γ(1-s)), with Γ(1-s) = Γ(2-s) / (1-s)
        // so that every Γ on the right is taken where no reflection is used internally
        for s in [x / 2.0, (x + 3.0) / 2.0] {
            let direct = ln_gamma(s).map_err(e)?;
            let reflected = PI.ln() - ln_sin_pi(s) - (ln_gamma(2.0 - s).map_err(e)? - (1.0 - s).ln());
            let shifted = ln_gamma(s + 1.0).map_err(e)? - s.ln();
            gamma_worst = gamma_worst.max(log_distance(direct, reflected)).max(log_distance(shifted, reflected));
        }
        for s in [x - 1.0, x + 1.0] {
            let direct = zeta_euler_maclaurin(s).map_err(e)?;
            let reflected = zeta_reflected(s).map_err(e)?;
            zeta_worst = zeta_worst.max((direct - reflected).norm() / direct.norm());
        }
    }
    ensure(gamma_worst <= 1e-10, || format!("Γ routes differ by {gamma_worst:.3e}"))?;
    ensure(zeta_worst <= 1e-10, || format!("ζ routes differ by {zeta_worst:.3e}"))?;
    Ok(format!("Γ max rel diff {gamma_worst:.2e}; ζ max rel diff {zeta_worst:.2e}"))
}

fn cli(args: &[&str]) -> Result<i32, String> {
    let status =
        Command::new(env!("CARGO_BIN_EXE_compactify")).args(args).output().map_err(|err| err.to_string())?.status;
    status.code().ok_or_else(|| "terminated by signal".to_string())
}

fn sweep_nmax(sweep: Sweep) -> &'static str {
    match sweep {
        Sweep::Touchard => "60",
        Sweep::Catalan | Sweep::RBranches | Sweep::TotalBranches => "12",
        Sweep::RegisterReduction | Sweep::BranchIdentity => "10",
        _ => "10",
    }
}

fn criterion_14() -> Outcome {
    for sweep in Sweep::ALL {
        let code = cli(&["verify", sweep.name(), "--nmax", sweep_nmax(sweep)])?;
        ensure(code == 0, || format!("verify {sweep} exited {code}"))?;
    }
    let mut mutants = 0;
    for name in FormulaConstants::NAMES {
        let sweep = Sweep::for_constant(name).ok_or_else(|| format!("no sweep covers {name}"))?;
        for bit in 0..2 {
            let flag = format!("{name}:{bit}");
            let code = cli(&["verify", sweep.name(), "--nmax", sweep_nmax(sweep), "--mutate", &flag])?;
            ensure(code != 0, || format!("mutation {flag} survived verify {sweep}"))?;
            mutants += 1;
        }
    }
    Ok(format!("all verify sweeps exit 0; {mutants}/{mutants} single-bit mutants rejected"))
}

fn main() {
    let start = Instant::now();
    let oracles = Oracles {
        trees: (1..=12).map(|n| tree_stats(n).expect("within bound")).collect(),
        paths: (1..=10).map(|n| path_stats(n).expect("within bound")).collect(),
    };
    println!("acceptance: brute-force tables built in {:.1?}", start.elapsed());

    let criteria: Vec<Criterion> = vec![
        ("catalan and series counts", Box::new(criterion_1)),
        ("touchard identity", Box::new(criterion_2)),
        ("register drop and leaf characterization", Box::new(|| criterion_3(&oracles))),
        ("r-branch expectation", Box::new(|| criterion_4(&oracles))),
        ("r-branches as leaves", Box::new(|| criterion_5(&oracles))),
        ("total branches", Box::new(|| criterion_6(&oracles))),
        ("r-branch expansions", Box::new(|| criterion_7(&oracles))),
        ("total branch fluctuation", Box::new(criterion_8)),
        ("paths exhaustive", Box::new(|| criterion_9(&oracles))),
        ("degree residual periodicity", Box::new(criterion_10)),
        ("fringe expansion and normality", Box::new(criterion_11)),
        ("total fringe fluctuation", Box::new(criterion_12)),
        ("special function self-checks", Box::new(criterion_13)),
        ("cli verify and mutation smoke test", Box::new(criterion_14)),
    ];

    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = check();
        let elapsed = t.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{elapsed:.1?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail} [{elapsed:.1?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed in {:.1?}", criteria.len() - failed, start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
