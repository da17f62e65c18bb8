use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;

/// Reductions of binary trees and lattice paths: single objects, exact formulas,
/// brute-force oracles, asymptotic expansions and sampling.
#[derive(Debug, Parser)]
#[command(name = "compactify", version)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, env = "COMPACTIFY_FORMAT", default_value = "csv", value_enum)]
    pub format: Format,

    /// Worker threads for sweeps and sampling (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Flip one bit of a formula constant, as NAME:BIT (testing aid).
    #[arg(long, global = true, hide = true)]
    pub mutate: Option<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compactify a tree, or report its register or branch profile.
    Tree {
        #[arg(value_enum)]
        action: TreeAction,
        /// Tree in bracket notation: `.` is a leaf, `(LR)` an internal node.
        tree: String,
        /// List every intermediate tree.
        #[arg(long)]
        steps: bool,
    },
    /// Reduce a lattice path, or report its compactification degree or fringe sizes.
    Path {
        #[arg(value_enum)]
        action: PathAction,
        /// Word over U, R, D, L.
        path: String,
        /// List every intermediate path.
        #[arg(long)]
        steps: bool,
    },
    /// Evaluate an exact formula.
    Exact {
        #[arg(value_enum)]
        statistic: ExactStatistic,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: Option<u32>,
    },
    /// Compute a statistic by enumerating every object of the given size.
    Oracle {
        #[arg(value_enum)]
        statistic: OracleStatistic,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        bound: BoundArgs,
    },
    /// Compare formulas with brute force for all sizes up to `--nmax`.
    Verify {
        /// Sweep name, or `all`.
        sweep: String,
        #[arg(long)]
        nmax: usize,
        #[command(flatten)]
        bound: BoundArgs,
    },
    /// Evaluate an asymptotic expansion and its residual against the exact value.
    Asym {
        #[arg(value_enum)]
        expansion: Expansion,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: Option<u32>,
        /// Fourier modes on each side of the periodic term.
        #[arg(long, default_value_t = 20)]
        terms: usize,
        /// Skip the exact comparison.
        #[arg(long)]
        no_exact: bool,
    },
    /// Residuals of exact values against the smooth part of an expansion, by phase.
    Fluctuation {
        #[arg(value_enum)]
        which: FluctuationKind,
        #[arg(long)]
        nmin: u64,
        #[arg(long)]
        nmax: u64,
        #[arg(long, default_value_t = 20)]
        terms: usize,
        /// Points on a geometric grid; 0 takes every size in the range.
        #[arg(long, default_value_t = 200)]
        points: usize,
        /// Write the table here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample statistics of uniform random trees or paths.
    Mc(McArgs),
}

#[derive(Debug, Clone, Copy, Args)]
pub struct BoundArgs {
    /// Raise the brute-force size limit.
    #[arg(long)]
    pub unsafe_bound: Option<usize>,
}

#[derive(Debug, Args)]
pub struct McArgs {
    #[arg(value_enum)]
    pub statistic: McStatistic,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TreeAction {
    Reduce,
    Register,
    Branches,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PathAction {
    Reduce,
    Cdeg,
    Fringes,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExactStatistic {
    Catalan,
    Touchard,
    RBranches,
    RBranchesVariance,
    TotalBranches,
    CdegCount,
    CdegProbability,
    CdegDistribution,
    CdegMean,
    CdegMeanClosed,
    CdegVariance,
    Fringe,
    FringeVariance,
    TotalFringe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleStatistic {
    Catalan,
    Registers,
    RBranches,
    TotalBranches,
    CdegCounts,
    Cdeg,
    Fringes,
    TotalFringe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Expansion {
    RBranches,
    RBranchesVariance,
    Branches,
    Cdeg,
    CdegVariance,
    Fringe,
    FringeVariance,
    TotalFringe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FluctuationKind {
    Branches,
    Cdeg,
    CdegVariance,
    TotalFringe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum McStatistic {
    RBranches,
    TotalBranches,
    Cdeg,
    Fringe,
    TotalFringe,
    Normality,
}
