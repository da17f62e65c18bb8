//! Sweeps comparing the closed formulas and generating functions with brute force.
//!
//! Each sweep takes the [`FormulaConstants`] to test, so a deliberately corrupted constant
//! can be shown to produce mismatches.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{max_degree, FormulaConstants, MarkedMoments, SeriesBuilder};
use crate::oracle::{path_stats_bounded, tree_stats_with, TreeIdentities, DEFAULT_PATH_BOUND, DEFAULT_TREE_BOUND};
use crate::path::Step;
use crate::tree::enumerate_trees_bounded;

/// Largest size accepted by the formula-only sweeps.
pub const FORMULA_BOUND: usize = 2000;
/// Sizes for which path row sums are checked alongside the `cdeg-counts` sweep.
pub const ROW_SUM_LIMIT: u64 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sweep {
    Catalan,
    Touchard,
    RegisterReduction,
    RBranches,
    BranchIdentity,
    TotalBranches,
    CdegCounts,
    CdegExpectation,
    Fringes,
    TotalFringe,
}

impl Sweep {
    pub const ALL: [Sweep; 10] = [
        Sweep::Catalan,
        Sweep::Touchard,
        Sweep::RegisterReduction,
        Sweep::RBranches,
        Sweep::BranchIdentity,
        Sweep::TotalBranches,
        Sweep::CdegCounts,
        Sweep::CdegExpectation,
        Sweep::Fringes,
        Sweep::TotalFringe,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Sweep::Catalan => "catalan",
            Sweep::Touchard => "touchard",
            Sweep::RegisterReduction => "register-reduction",
            Sweep::RBranches => "r-branches",
            Sweep::BranchIdentity => "branch-identity",
            Sweep::TotalBranches => "total-branches",
            Sweep::CdegCounts => "cdeg-counts",
            Sweep::CdegExpectation => "cdeg-expectation",
            Sweep::Fringes => "fringes",
            Sweep::TotalFringe => "total-fringe",
        }
    }

    /// Formula constants whose corruption this sweep is meant to catch.
    pub fn constants(self) -> &'static [&'static str] {
        match self {
            Sweep::Catalan => &["catalan_offset", "chain_weight"],
            Sweep::Touchard => &["touchard_base"],
            Sweep::RegisterReduction => &["register_drop"],
            Sweep::RBranches => &["rbranch_center", "rbranch_shift"],
            Sweep::BranchIdentity => &["leaf_offset"],
            Sweep::TotalBranches => &["total_branch_weight"],
            Sweep::CdegCounts => &["path_base"],
            Sweep::CdegExpectation => &["cdeg_mean_weight"],
            Sweep::Fringes => &["fringe_cubic", "fringe_divisor"],
            Sweep::TotalFringe => &["total_fringe_cubic", "total_fringe_divisor"],
        }
    }

    /// The sweep responsible for a named constant.
    pub fn for_constant(name: &str) -> Option<Sweep> {
        Sweep::ALL.into_iter().find(|s| s.constants().contains(&name))
    }

    /// Whether the sweep enumerates trees, paths or neither.
    fn bound(self, bounds: Bounds) -> usize {
        match self {
            Sweep::Touchard => FORMULA_BOUND,
            Sweep::Catalan
            | Sweep::RegisterReduction
            | Sweep::RBranches
            | Sweep::BranchIdentity
            | Sweep::TotalBranches => bounds.trees,
            _ => bounds.paths,
        }
    }
}

impl fmt::Display for Sweep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Sweep {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Sweep::ALL
            .into_iter()
            .find(|w| w.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown sweep {s}")))
    }
}

/// Largest brute-force sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub trees: usize,
    pub paths: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { trees: DEFAULT_TREE_BOUND, paths: DEFAULT_PATH_BOUND }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub sweep: Sweep,
    pub nmax: usize,
    pub checks: u64,
    /// Mismatch descriptions; only the first few are kept.
    pub mismatches: Vec<String>,
    pub mismatch_count: u64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatch_count == 0
    }
}

const KEPT_MISMATCHES: usize = 20;

struct Tally {
    report: VerifyReport,
}

impl Tally {
    fn new(sweep: Sweep, nmax: usize) -> Self {
        Tally { report: VerifyReport { sweep, nmax, checks: 0, mismatches: Vec::new(), mismatch_count: 0 } }
    }

    fn check<T: PartialEq + fmt::Display>(&mut self, what: impl FnOnce() -> String, formula: T, oracle: T) {
        self.report.checks += 1;
        if formula != oracle {
            self.report.mismatch_count += 1;
            if self.report.mismatches.len() < KEPT_MISMATCHES {
                self.report.mismatches.push(format!("{}: formula {formula}, oracle {oracle}", what()));
            }
        }
    }
}

pub fn verify(sweep: Sweep, nmax: usize, constants: &FormulaConstants) -> Result<VerifyReport> {
    verify_bounded(sweep, nmax, constants, Bounds::default())
}

pub fn verify_bounded(sweep: Sweep, nmax: usize, constants: &FormulaConstants, bounds: Bounds) -> Result<VerifyReport> {
    let bound = sweep.bound(bounds);
    if nmax > bound {
        return Err(Error::BoundExceeded { what: "sweep size", value: nmax, bound });
    }
    let mut t = Tally::new(sweep, nmax);
    let builder = SeriesBuilder::new(*constants);
    let identities = TreeIdentities { register_drop: constants.register_drop, leaf_offset: constants.leaf_offset };
    let tree_stats = |n: usize| tree_stats_with(n, bound, identities);
    let path_stats = |n: usize| path_stats_bounded(n, bound);

    match sweep {
        Sweep::Catalan => {
            let b = builder.series_b(nmax)?;
            for n in 0..=nmax {
                let count = BigInt::from(enumerate_trees_bounded(n, bound)?.count());
                t.check(|| format!("C_{n}"), constants.catalan(n as u64)?, count.clone());
                t.check(|| format!("[z^{n}] B"), b.coeff(n).clone(), count);
            }
        }
        Sweep::Touchard => {
            for n in 0..=nmax as u64 {
                t.check(|| format!("Touchard n = {n}"), constants.touchard_check(n), true);
            }
        }
        Sweep::RegisterReduction => {
            for n in 1..=nmax {
                let stats = tree_stats(n)?;
                t.check(|| format!("register drop, n = {n}"), stats.reduction_violations, 0);
                t.check(|| format!("leaf after register steps, n = {n}"), stats.characterization_violations, 0);
                // register exactly r counted by B_r - B_{r-1}
                let mut below = BigInt::zero();
                for r in 0..=max_degree(n as u64) {
                    let at_most = builder.series_br(r, n)?.coeff(n).clone();
                    let exact = &at_most - &below;
                    t.check(
                        || format!("register {r}, n = {n}"),
                        exact,
                        BigInt::from(stats.count_with_register(r as usize)),
                    );
                    below = at_most;
                }
            }
        }
        Sweep::RBranches => {
            for n in 1..=nmax {
                let stats = tree_stats(n)?;
                for r in 0..=max_degree(n as u64) + 1 {
                    t.check(
                        || format!("mean r-branches, n = {n}, r = {r}"),
                        constants.expected_r_branches(n as u64, r)?,
                        stats.mean_r_branches(r as usize),
                    );
                    let moments = MarkedMoments::r_branches_with(&builder, r, n)?;
                    t.check(
                        || format!("variance r-branches, n = {n}, r = {r}"),
                        moments.variance(n as u64)?,
                        stats.var_r_branches(r as usize),
                    );
                }
            }
        }
        Sweep::BranchIdentity => {
            for n in 1..=nmax {
                let stats = tree_stats(n)?;
                t.check(|| format!("r-branches vs leaves, n = {n}"), stats.branch_leaf_violations, 0);
            }
        }
        Sweep::TotalBranches => {
            for n in 1..=nmax {
                let stats = tree_stats(n)?;
                t.check(
                    || format!("mean total branches, n = {n}"),
                    constants.expected_branches(n as u64)?,
                    stats.mean_total_branches(),
                );
            }
        }
        Sweep::CdegCounts => {
            for n in 1..=nmax {
                let stats = path_stats(n)?;
                for r in 0..=max_degree(n as u64) + 1 {
                    let count = BigInt::from(stats.count_with_cdeg(r as usize));
                    t.check(
                        || format!("paths of degree {r}, n = {n}"),
                        constants.count_paths_cdeg(n as u64, r)?,
                        count.clone(),
                    );
                    t.check(|| format!("[z^{n}] L_{r}"), builder.series_lr(r, n)?.coeff(n).clone(), count);
                }
            }
            let directions = BigInt::from(Step::ALL.len());
            for n in 1..=ROW_SUM_LIMIT {
                let total: BigInt =
                    (0..=max_degree(n)).map(|r| constants.count_paths_cdeg(n, r)).sum::<Result<BigInt>>()?;
                t.check(|| format!("row sum, n = {n}"), total, Pow::pow(&directions, n));
            }
        }
        Sweep::CdegExpectation => {
            for n in 1..=nmax {
                let stats = path_stats(n)?;
                let mean = stats.mean_cdeg();
                t.check(|| format!("mean degree, n = {n}"), constants.expected_cdeg(n as u64)?, mean.clone());
                t.check(|| format!("closed mean degree, n = {n}"), constants.expected_cdeg_closed(n as u64)?, mean);
            }
        }
        Sweep::Fringes => {
            for n in 1..=nmax {
                let stats = path_stats(n)?;
                for r in 0..=max_degree(n as u64) + 1 {
                    t.check(
                        || format!("mean fringe, n = {n}, r = {r}"),
                        constants.expected_fringe(n as u64, r)?,
                        stats.mean_fringe(r as usize),
                    );
                    let moments = MarkedMoments::fringe_with(&builder, r, n)?;
                    t.check(
                        || format!("variance fringe, n = {n}, r = {r}"),
                        moments.variance(n as u64)?,
                        stats.var_fringe(r as usize),
                    );
                }
            }
        }
        Sweep::TotalFringe => {
            for n in 1..=nmax {
                let stats = path_stats(n)?;
                t.check(
                    || format!("mean total fringe, n = {n}"),
                    constants.expected_total_fringe(n as u64)?,
                    stats.mean_total_fringe(),
                );
            }
        }
    }
    Ok(t.report)
}
