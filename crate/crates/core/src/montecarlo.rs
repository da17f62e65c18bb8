//! Seeded sampling of uniform random trees and paths.
//!
//! Work is cut into [`CHUNKS`] fixed pieces. Piece `i` draws from ChaCha8 seeded with the
//! user seed on stream `i`, so results are independent of the number of worker threads.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotics::normal_cdf;
use crate::error::{Error, Result};
use crate::exact::{expected_fringe, to_f64, MarkedMoments};
use crate::path::random_path_with;
use crate::tree::random_tree_with;

/// Name of the pseudorandom generator, for output metadata.
pub const GENERATOR: &str = "ChaCha8 (rand_chacha 0.3), stream = chunk index";
/// Number of independent substreams.
pub const CHUNKS: u64 = 64;
/// Weight of the `1/√samples` term in the normality threshold.
pub const KS_SAMPLE_CONSTANT: f64 = 1.63;
/// Weight of the `1/√n` term in the normality threshold.
pub const KS_SIZE_CONSTANT: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Statistic {
    RBranches(u32),
    TotalBranches,
    Cdeg,
    Fringe(u32),
    TotalFringe,
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statistic::RBranches(r) => write!(f, "r-branches:{r}"),
            Statistic::TotalBranches => f.write_str("total-branches"),
            Statistic::Cdeg => f.write_str("cdeg"),
            Statistic::Fringe(r) => write!(f, "fringe:{r}"),
            Statistic::TotalFringe => f.write_str("total-fringe"),
        }
    }
}

impl FromStr for Statistic {
    type Err = Error;

    /// `r-branches:<r>`, `total-branches`, `cdeg`, `fringe:<r>` or `total-fringe`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let r = || -> Result<u32> {
            arg.ok_or_else(|| Error::InvalidArgument(format!("{name} needs a parameter, as in {name}:2")))?
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad parameter in {s}")))
        };
        match name {
            "r-branches" => Ok(Statistic::RBranches(r()?)),
            "fringe" => Ok(Statistic::Fringe(r()?)),
            "total-branches" if arg.is_none() => Ok(Statistic::TotalBranches),
            "cdeg" if arg.is_none() => Ok(Statistic::Cdeg),
            "total-fringe" if arg.is_none() => Ok(Statistic::TotalFringe),
            _ => Err(Error::InvalidArgument(format!("unknown statistic {s}"))),
        }
    }
}

impl Statistic {
    fn draw(self, n: usize, rng: &mut ChaCha8Rng) -> u64 {
        match self {
            Statistic::RBranches(r) => random_tree_with(n, rng).count_r_branches(r as usize),
            Statistic::TotalBranches => random_tree_with(n, rng).total_branches(),
            Statistic::Cdeg => u64::from(random_path_with(n, rng).cdeg().expect("n >= 1")),
            Statistic::Fringe(r) => random_path_with(n, rng).fringe_size(r as usize).expect("n >= 1") as u64,
            Statistic::TotalFringe => random_path_with(n, rng).total_fringe_size().expect("n >= 1") as u64,
        }
    }
}

/// Draws `samples` values of the statistic, in a fixed order for each seed.
pub fn sample_values(kind: Statistic, n: usize, samples: usize, seed: u64) -> Result<Vec<u64>> {
    if n == 0 || samples == 0 {
        return Err(Error::InvalidArgument("n and samples must be at least 1".into()));
    }
    let per_chunk = samples.div_ceil(CHUNKS as usize);
    let chunks: Vec<Vec<u64>> = (0..CHUNKS)
        .into_par_iter()
        .map(|chunk| {
            let start = chunk as usize * per_chunk;
            let len = per_chunk.min(samples.saturating_sub(start));
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            (0..len).map(|_| kind.draw(n, &mut rng)).collect()
        })
        .collect();
    Ok(chunks.concat())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleSummary {
    pub count: usize,
    pub mean: f64,
    /// Unbiased sample variance.
    pub variance: f64,
    /// Sorted values standardized by the sample mean and deviation; empty for constant samples.
    pub standardized: Vec<f64>,
}

impl SampleSummary {
    pub fn from_values(values: &[u64]) -> Self {
        let count = values.len();
        let mean = values.iter().map(|&x| x as f64).sum::<f64>() / count as f64;
        let variance = if count > 1 {
            values.iter().map(|&x| (x as f64 - mean).powi(2)).sum::<f64>() / (count - 1) as f64
        } else {
            0.0
        };
        let mut standardized = Vec::new();
        if variance > 0.0 {
            let sd = variance.sqrt();
            standardized = values.iter().map(|&x| (x as f64 - mean) / sd).collect();
            standardized.sort_by(f64::total_cmp);
        }
        SampleSummary { count, mean, variance, standardized }
    }

    pub fn standard_error(&self) -> f64 {
        (self.variance / self.count as f64).sqrt()
    }
}

pub fn sample_statistic(kind: Statistic, n: usize, samples: usize, seed: u64) -> Result<SampleSummary> {
    Ok(SampleSummary::from_values(&sample_values(kind, n, samples, seed)?))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Kolmogorov distance between the empirical law of integer `values` and the normal law with
/// the given moments, with the normal evaluated midway between lattice points of the sample.
pub fn lattice_ks_distance(values: &[u64], mean: f64, variance: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::DegenerateSample("empty sample".into()));
    }
    if variance <= 0.0 {
        return Err(Error::DegenerateSample("zero variance, nothing to standardize".into()));
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    let (lo, hi) = (sorted[0], sorted[sorted.len() - 1]);
    if lo == hi {
        return Err(Error::DegenerateSample(format!("every sample equals {lo}")));
    }
    let span = sorted.iter().fold(0, |g, &x| gcd(g, x - lo));
    let sd = variance.sqrt();
    let total = sorted.len() as f64;
    let mut distance: f64 = normal_cdf((lo as f64 - span as f64 / 2.0 - mean) / sd);
    let mut idx = 0;
    let mut y = lo;
    while y <= hi {
        while idx < sorted.len() && sorted[idx] <= y {
            idx += 1;
        }
        let empirical = idx as f64 / total;
        let model = normal_cdf((y as f64 + span as f64 / 2.0 - mean) / sd);
        distance = distance.max((empirical - model).abs());
        y += span;
    }
    Ok(distance)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalityReport {
    pub r: u32,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub exact_mean: f64,
    pub exact_variance: f64,
    pub ks: f64,
    pub threshold: f64,
    pub pass: bool,
}

/// Pass/fail bound on the distance for the given sample count and path length.
pub fn ks_threshold(samples: usize, n: usize) -> f64 {
    KS_SAMPLE_CONSTANT / (samples as f64).sqrt() + KS_SIZE_CONSTANT / (n as f64).sqrt()
}

/// Compares standardized `r`th fringe sizes of random paths with the standard normal law,
/// standardizing by the exact mean and variance.
pub fn normality_test(r: u32, n: usize, samples: usize, seed: u64) -> Result<NormalityReport> {
    if r == 0 {
        return Err(Error::InvalidArgument("the 0th fringe has constant size; normality needs r >= 1".into()));
    }
    let values = sample_values(Statistic::Fringe(r), n, samples, seed)?;
    let exact_mean = to_f64(&expected_fringe(n as u64, r)?);
    let exact_variance = to_f64(&MarkedMoments::fringe(r, n)?.variance(n as u64)?);
    let ks = lattice_ks_distance(&values, exact_mean, exact_variance)?;
    let threshold = ks_threshold(samples, n);
    Ok(NormalityReport { r, n, samples, seed, exact_mean, exact_variance, ks, threshold, pass: ks <= threshold })
}
