//! Brute-force statistics over all trees of a given size and all paths of a given length.
//!
//! Sweeps run in parallel; partial results hold only integer sums and are merged
//! associatively, so the totals do not depend on scheduling.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::path::{enumerate_paths_bounded, LatticePath, Step};
use crate::tree::enumerate_trees_bounded;

/// Default largest tree size swept exhaustively.
pub const DEFAULT_TREE_BOUND: usize = 12;
/// Default largest path length swept exhaustively.
pub const DEFAULT_PATH_BOUND: usize = 10;

fn check(what: &'static str, value: usize, bound: usize) -> Result<()> {
    if value > bound {
        return Err(Error::BoundExceeded { what, value, bound });
    }
    Ok(())
}

/// Sums of `x` and `x²` of one integer statistic.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Moments {
    pub sum: u128,
    pub square_sum: u128,
}

impl Moments {
    fn add(&mut self, x: u64) {
        self.sum += u128::from(x);
        self.square_sum += u128::from(x) * u128::from(x);
    }

    fn merge(&mut self, other: &Moments) {
        self.sum += other.sum;
        self.square_sum += other.square_sum;
    }

    pub fn mean(&self, count: u64) -> BigRational {
        BigRational::new(BigInt::from(self.sum), BigInt::from(count))
    }

    pub fn variance(&self, count: u64) -> BigRational {
        let mean = self.mean(count);
        BigRational::new(BigInt::from(self.square_sum), BigInt::from(count)) - &mean * &mean
    }
}

fn merge_indexed(into: &mut Vec<Moments>, from: &[Moments]) {
    if into.len() < from.len() {
        into.resize(from.len(), Moments::default());
    }
    for (a, b) in into.iter_mut().zip(from) {
        a.merge(b);
    }
}

fn merge_counts(into: &mut Vec<u64>, from: &[u64]) {
    if into.len() < from.len() {
        into.resize(from.len(), 0);
    }
    for (a, b) in into.iter_mut().zip(from) {
        *a += b;
    }
}

/// Per-size statistics of all binary trees with `size` internal nodes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TreeStats {
    pub size: usize,
    pub count: u64,
    /// `register_counts[r]`: trees with register exactly `r`.
    pub register_counts: Vec<u64>,
    /// Register drop under one compactification failed to be exactly one.
    pub reduction_violations: u64,
    /// `Φ^r(t)` is a leaf for some `r` other than the register.
    pub characterization_violations: u64,
    /// r-branch count differs from the leaf count of `Φ^r(t)`.
    pub branch_leaf_violations: u64,
    /// `r_branches[r]`: moments of the number of r-branches.
    pub r_branches: Vec<Moments>,
    pub total_branches: Moments,
}

impl TreeStats {
    fn merge(mut self, other: TreeStats) -> TreeStats {
        self.count += other.count;
        merge_counts(&mut self.register_counts, &other.register_counts);
        self.reduction_violations += other.reduction_violations;
        self.characterization_violations += other.characterization_violations;
        self.branch_leaf_violations += other.branch_leaf_violations;
        merge_indexed(&mut self.r_branches, &other.r_branches);
        self.total_branches.merge(&other.total_branches);
        self
    }

    pub fn mean_r_branches(&self, r: usize) -> BigRational {
        self.r_branches.get(r).cloned().unwrap_or_default().mean(self.count)
    }

    pub fn var_r_branches(&self, r: usize) -> BigRational {
        self.r_branches.get(r).cloned().unwrap_or_default().variance(self.count)
    }

    pub fn mean_total_branches(&self) -> BigRational {
        self.total_branches.mean(self.count)
    }

    pub fn var_total_branches(&self) -> BigRational {
        self.total_branches.variance(self.count)
    }

    pub fn count_with_register(&self, r: usize) -> u64 {
        self.register_counts.get(r).copied().unwrap_or(0)
    }
}

/// Checks applied to every tree while sweeping, with the constants of the identities exposed
/// so that a perturbed identity can be shown to fail.
#[derive(Debug, Clone, Copy)]
pub struct TreeIdentities {
    pub register_drop: i64,
    pub leaf_offset: i64,
}

impl Default for TreeIdentities {
    fn default() -> Self {
        TreeIdentities { register_drop: 1, leaf_offset: 1 }
    }
}

pub fn tree_stats(size: usize) -> Result<TreeStats> {
    tree_stats_with(size, DEFAULT_TREE_BOUND, TreeIdentities::default())
}

pub fn tree_stats_with(size: usize, bound: usize, identities: TreeIdentities) -> Result<TreeStats> {
    check("tree size", size, bound)?;
    let trees = enumerate_trees_bounded(size, bound.max(size))?;
    let stats = trees
        .par_bridge()
        .fold(TreeStats::default, |mut acc, tree| {
            acc.count += 1;
            let profile = tree.branch_profile();
            let register = profile.counts.len() - 1;
            if acc.register_counts.len() <= register {
                acc.register_counts.resize(register + 1, 0);
            }
            acc.register_counts[register] += 1;
            if acc.r_branches.len() < profile.counts.len() {
                acc.r_branches.resize(profile.counts.len(), Moments::default());
            }
            for (r, &c) in profile.counts.iter().enumerate() {
                acc.r_branches[r].add(c);
            }
            acc.total_branches.add(profile.total());

            let chain = tree.reduction_chain();
            for pair in chain.windows(2) {
                let drop = i64::from(pair[0].register()) - i64::from(pair[1].register());
                if drop != identities.register_drop {
                    acc.reduction_violations += 1;
                }
            }
            for (r, reduced) in chain.iter().enumerate() {
                if reduced.is_leaf() != (r == register) {
                    acc.characterization_violations += 1;
                }
                let leaves = reduced.size() as i64 + identities.leaf_offset;
                if leaves != profile.counts[r] as i64 {
                    acc.branch_leaf_violations += 1;
                }
            }
            acc
        })
        .reduce(TreeStats::default, TreeStats::merge);
    Ok(TreeStats { size, ..stats })
}

/// Per-length statistics of all `4^n` lattice paths.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PathStats {
    pub length: usize,
    pub count: u64,
    /// `cdeg_counts[r]`: paths with compactification degree exactly `r`.
    pub cdeg_counts: Vec<u64>,
    pub cdeg: Moments,
    /// `fringes[r]`: moments of the size of the `r`th fringe (0 when not reducible `r` times).
    pub fringes: Vec<Moments>,
    pub total_fringe: Moments,
    /// Paths whose degree changes under a quarter turn of every step.
    pub rotation_violations: u64,
    /// Reductions that did not at least halve the length.
    pub halving_violations: u64,
}

impl PathStats {
    fn merge(mut self, other: PathStats) -> PathStats {
        self.count += other.count;
        merge_counts(&mut self.cdeg_counts, &other.cdeg_counts);
        self.cdeg.merge(&other.cdeg);
        merge_indexed(&mut self.fringes, &other.fringes);
        self.total_fringe.merge(&other.total_fringe);
        self.rotation_violations += other.rotation_violations;
        self.halving_violations += other.halving_violations;
        self
    }

    fn record(&mut self, path: &LatticePath) {
        let sizes = path.fringe_sizes().expect("nonempty path");
        let degree = sizes.len() - 1;
        self.count += 1;
        if self.cdeg_counts.len() <= degree {
            self.cdeg_counts.resize(degree + 1, 0);
        }
        self.cdeg_counts[degree] += 1;
        self.cdeg.add(degree as u64);
        if self.fringes.len() < sizes.len() {
            self.fringes.resize(sizes.len(), Moments::default());
        }
        for (r, &s) in sizes.iter().enumerate() {
            self.fringes[r].add(s as u64);
        }
        self.total_fringe.add(sizes.iter().sum::<usize>() as u64);
        for pair in sizes.windows(2) {
            if 2 * pair[1] > pair[0] {
                self.halving_violations += 1;
            }
        }
        if path.rotate_clockwise().cdeg().expect("nonempty path") as usize != degree {
            self.rotation_violations += 1;
        }
    }

    pub fn count_with_cdeg(&self, r: usize) -> u64 {
        self.cdeg_counts.get(r).copied().unwrap_or(0)
    }

    pub fn mean_cdeg(&self) -> BigRational {
        self.cdeg.mean(self.count)
    }

    pub fn var_cdeg(&self) -> BigRational {
        self.cdeg.variance(self.count)
    }

    pub fn mean_fringe(&self, r: usize) -> BigRational {
        self.fringes.get(r).cloned().unwrap_or_default().mean(self.count)
    }

    pub fn var_fringe(&self, r: usize) -> BigRational {
        self.fringes.get(r).cloned().unwrap_or_default().variance(self.count)
    }

    pub fn mean_total_fringe(&self) -> BigRational {
        self.total_fringe.mean(self.count)
    }
}

pub fn path_stats(length: usize) -> Result<PathStats> {
    path_stats_bounded(length, DEFAULT_PATH_BOUND)
}

/// Sweeps all paths of the given length, partitioned by their first two steps.
pub fn path_stats_bounded(length: usize, bound: usize) -> Result<PathStats> {
    check("path length", length, bound)?;
    if length == 0 {
        return Err(Error::InvalidArgument("path length must be at least 1".into()));
    }
    let prefix_len = length.min(2);
    let prefixes: Vec<Vec<Step>> =
        enumerate_paths_bounded(prefix_len, prefix_len)?.map(|p| p.steps().to_vec()).collect();
    let suffix_len = length - prefix_len;
    let stats = prefixes
        .par_iter()
        .map(|prefix| {
            let mut acc = PathStats::default();
            let suffixes = enumerate_paths_bounded(suffix_len, suffix_len).expect("within bound");
            let mut steps = prefix.clone();
            for suffix in suffixes {
                steps.truncate(prefix_len);
                steps.extend_from_slice(suffix.steps());
                acc.record(&LatticePath::new(steps.clone()));
            }
            acc
        })
        .reduce(PathStats::default, PathStats::merge);
    Ok(PathStats { length, ..stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn small_tree_stats() {
        let s = tree_stats(3).unwrap();
        assert_eq!(s.count, 5);
        assert_eq!(s.register_counts, vec![0, 4, 1]);
        assert_eq!(s.reduction_violations, 0);
        assert_eq!(s.characterization_violations, 0);
        assert_eq!(s.branch_leaf_violations, 0);
        assert_eq!(s.mean_r_branches(0), BigRational::from_integer(4.into()));
        assert!(s.var_r_branches(0).is_zero());
    }

    #[test]
    fn perturbed_identity_is_detected() {
        let bad = TreeIdentities { register_drop: 0, ..TreeIdentities::default() };
        assert!(tree_stats_with(4, 12, bad).unwrap().reduction_violations > 0);
    }

    #[test]
    fn small_path_stats() {
        let s = path_stats(2).unwrap();
        assert_eq!(s.count, 16);
        assert_eq!(s.cdeg_counts, vec![0, 16]);
        let s = path_stats(1).unwrap();
        assert_eq!(s.cdeg_counts, vec![4]);
        assert_eq!(s.mean_total_fringe(), BigRational::from_integer(1.into()));
    }

    #[test]
    fn bounds() {
        assert!(tree_stats(13).is_err());
        assert!(path_stats(11).is_err());
        assert!(path_stats(0).is_err());
    }
}
