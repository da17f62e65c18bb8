//! Simple two-dimensional lattice paths and the reduction `Φ_L`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Default upper bound on the length accepted by [`enumerate_paths`].
pub const DEFAULT_ENUMERATION_BOUND: usize = 12;

/// Unit step. The declaration order `U < R < D < L` is the enumeration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    U,
    R,
    D,
    L,
}

impl Step {
    pub const ALL: [Step; 4] = [Step::U, Step::R, Step::D, Step::L];

    pub fn is_horizontal(self) -> bool {
        matches!(self, Step::R | Step::L)
    }

    pub fn is_vertical(self) -> bool {
        !self.is_horizontal()
    }

    /// Quarter turn clockwise.
    pub fn rotate_clockwise(self) -> Step {
        match self {
            Step::U => Step::R,
            Step::R => Step::D,
            Step::D => Step::L,
            Step::L => Step::U,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Step::U => 'U',
            Step::R => 'R',
            Step::D => 'D',
            Step::L => 'L',
        }
    }

    fn from_index(i: usize) -> Step {
        Step::ALL[i]
    }
}

impl TryFrom<char> for Step {
    type Error = char;

    fn try_from(c: char) -> std::result::Result<Self, char> {
        match c {
            'U' => Ok(Step::U),
            'R' => Ok(Step::R),
            'D' => Ok(Step::D),
            'L' => Ok(Step::L),
            other => Err(other),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePath {
    steps: Vec<Step>,
}

/// A path rotated so that it starts horizontally and ends vertically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedPath {
    pub path: LatticePath,
    pub rotated_whole: bool,
    pub rotated_last: bool,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Self {
        LatticePath { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_atomic(&self) -> bool {
        self.steps.len() == 1
    }

    pub fn rotate_clockwise(&self) -> LatticePath {
        LatticePath { steps: self.steps.iter().map(|s| s.rotate_clockwise()).collect() }
    }

    fn require_len(&self, required: usize) -> Result<()> {
        if self.steps.len() < required {
            return Err(Error::PathTooShort { length: self.steps.len(), required });
        }
        Ok(())
    }

    /// Rotates the whole path clockwise if it starts vertically, then rotates the last step
    /// clockwise if it is horizontal.
    pub fn normalize(&self) -> Result<NormalizedPath> {
        self.require_len(2)?;
        let rotated_whole = self.steps[0].is_vertical();
        let mut path = if rotated_whole { self.rotate_clockwise() } else { self.clone() };
        let last = path.steps.last_mut().expect("length checked");
        let rotated_last = last.is_horizontal();
        if rotated_last {
            *last = last.rotate_clockwise();
        }
        Ok(NormalizedPath { path, rotated_whole, rotated_last })
    }

    /// One application of `Φ_L`.
    ///
    /// The normalized path factors uniquely into pairs (horizontal run, vertical run) of
    /// maximal runs; each pair becomes one diagonal step chosen by the first step of each run,
    /// and the diagonal word is turned 45° clockwise back onto the axes.
    pub fn reduce(&self) -> Result<LatticePath> {
        let normalized = self.normalize()?.path;
        let steps = normalized.steps();
        let mut out = Vec::with_capacity(steps.len() / 2);
        let mut i = 0;
        while i < steps.len() {
            let horizontal = steps[i];
            while i < steps.len() && steps[i].is_horizontal() {
                i += 1;
            }
            let vertical = steps[i];
            while i < steps.len() && steps[i].is_vertical() {
                i += 1;
            }
            out.push(match (horizontal, vertical) {
                (Step::R, Step::U) => Step::R,
                (Step::R, Step::D) => Step::D,
                (Step::L, Step::D) => Step::L,
                (Step::L, Step::U) => Step::U,
                _ => unreachable!("runs alternate between horizontal and vertical"),
            });
        }
        Ok(LatticePath { steps: out })
    }

    /// Compactification degree: number of reductions until a single step remains.
    pub fn cdeg(&self) -> Result<u32> {
        self.require_len(1)?;
        let mut degree = 0;
        let mut path = self.clone();
        while !path.is_atomic() {
            path = path.reduce()?;
            degree += 1;
        }
        Ok(degree)
    }

    /// The path, its reduction, and so on down to a single step.
    pub fn reduction_chain(&self) -> Result<Vec<LatticePath>> {
        self.require_len(1)?;
        let mut chain = vec![self.clone()];
        while !chain.last().expect("nonempty").is_atomic() {
            let next = chain.last().expect("nonempty").reduce()?;
            chain.push(next);
        }
        Ok(chain)
    }

    /// Lengths of the fringes `Φ_L^r(p)` for `r = 0..=cdeg(p)`.
    pub fn fringe_sizes(&self) -> Result<Vec<usize>> {
        Ok(self.reduction_chain()?.iter().map(|p| p.len()).collect())
    }

    /// Length of the `r`th fringe, or 0 when the path cannot be reduced `r` times.
    pub fn fringe_size(&self, r: usize) -> Result<usize> {
        Ok(self.fringe_sizes()?.get(r).copied().unwrap_or(0))
    }

    pub fn total_fringe_size(&self) -> Result<usize> {
        Ok(self.fringe_sizes()?.iter().sum())
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.steps.iter().map(|s| s.as_char()).collect();
        f.write_str(&s)
    }
}

impl FromStr for LatticePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .char_indices()
            .map(|(position, c)| Step::try_from(c).map_err(|found| Error::PathSyntax { position, found }))
            .collect::<Result<Vec<_>>>()?;
        if steps.is_empty() {
            return Err(Error::PathTooShort { length: 0, required: 1 });
        }
        Ok(LatticePath { steps })
    }
}

/// Streams all `4^n` paths of length `n` in lexicographic `U < R < D < L` order.
#[derive(Debug, Clone)]
pub struct PathEnumerator {
    next: Option<Vec<Step>>,
}

pub fn enumerate_paths(n: usize) -> Result<PathEnumerator> {
    enumerate_paths_bounded(n, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_paths_bounded(n: usize, bound: usize) -> Result<PathEnumerator> {
    if n > bound {
        return Err(Error::BoundExceeded { what: "path length", value: n, bound });
    }
    Ok(PathEnumerator { next: Some(vec![Step::U; n]) })
}

impl Iterator for PathEnumerator {
    type Item = LatticePath;

    fn next(&mut self) -> Option<LatticePath> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for i in (0..succ.len()).rev() {
            let digit = succ[i] as usize;
            if digit < 3 {
                succ[i] = Step::from_index(digit + 1);
                self.next = Some(succ);
                break;
            }
            succ[i] = Step::U;
        }
        Some(LatticePath { steps: current })
    }
}

/// Path of `n` independent uniform steps, deterministic for a fixed seed.
pub fn random_path(n: usize, seed: u64) -> LatticePath {
    random_path_with(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_path_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> LatticePath {
    let steps = (0..n).map(|_| Step::from_index(rng.gen_range(0..4u32) as usize)).collect();
    LatticePath { steps }
}

#[cfg(test)]
mod tests {
    use super::*;

    // first panel of the path-reduction figure
    const FIGURE_PATH: &str = "UUURRRDRUUULLLUU";

    fn p(s: &str) -> LatticePath {
        s.parse().unwrap()
    }

    #[test]
    fn normalize_examples() {
        let n = p("RU").normalize().unwrap();
        assert_eq!((n.path.to_string(), n.rotated_whole, n.rotated_last), ("RU".into(), false, false));
        let n = p("UR").normalize().unwrap();
        assert_eq!((n.path.to_string(), n.rotated_whole, n.rotated_last), ("RD".into(), true, false));
        let n = p("RR").normalize().unwrap();
        assert_eq!((n.path.to_string(), n.rotated_whole, n.rotated_last), ("RD".into(), false, true));
        let n = p("UU").normalize().unwrap();
        assert_eq!((n.path.to_string(), n.rotated_whole, n.rotated_last), ("RD".into(), true, true));
        assert!(matches!(p("U").normalize(), Err(Error::PathTooShort { length: 1, required: 2 })));
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(p("RU").reduce().unwrap().to_string(), "R");
        assert_eq!(p("RRUU").reduce().unwrap().to_string(), "R");
        assert_eq!(p("LRDU").reduce().unwrap().to_string(), "L");
        assert!(p("U").reduce().is_err());
    }

    #[test]
    fn figure_path_trace() {
        let chain = p(FIGURE_PATH).reduction_chain().unwrap();
        let rendered: Vec<String> = chain.iter().map(|q| q.to_string()).collect();
        assert_eq!(rendered, vec![FIGURE_PATH, "DLRD", "U"]);
        assert_eq!(p(FIGURE_PATH).normalize().unwrap().path.to_string(), "RRRDDDLDRRRUUURD");
        assert_eq!(p(FIGURE_PATH).cdeg().unwrap(), 2);
    }

    #[test]
    fn cdeg_and_fringes() {
        assert_eq!(p("U").cdeg().unwrap(), 0);
        assert_eq!(p("RRUU").fringe_sizes().unwrap(), vec![4, 1]);
        assert_eq!(p("RRUU").fringe_size(0).unwrap(), 4);
        assert_eq!(p("RRUU").fringe_size(1).unwrap(), 1);
        assert_eq!(p("RRUU").fringe_size(2).unwrap(), 0);
        assert_eq!(p("U").fringe_size(1).unwrap(), 0);
        assert_eq!(p("U").total_fringe_size().unwrap(), 1);
        assert_eq!(p("RRUU").total_fringe_size().unwrap(), 5);
        assert!(LatticePath::default().cdeg().is_err());
    }

    #[test]
    fn short_paths_have_degree_one() {
        for n in [2, 3] {
            for path in enumerate_paths(n).unwrap() {
                assert_eq!(path.cdeg().unwrap(), 1, "{path}");
            }
        }
    }

    #[test]
    fn parse_errors() {
        assert_eq!("UUxR".parse::<LatticePath>(), Err(Error::PathSyntax { position: 2, found: 'x' }));
        assert!(matches!("".parse::<LatticePath>(), Err(Error::PathTooShort { .. })));
    }

    #[test]
    fn enumeration() {
        let all: Vec<String> = enumerate_paths(1).unwrap().map(|q| q.to_string()).collect();
        assert_eq!(all, vec!["U", "R", "D", "L"]);
        assert_eq!(enumerate_paths(2).unwrap().count(), 16);
        assert_eq!(enumerate_paths(5).unwrap().count(), 1024);
        let two: Vec<String> = enumerate_paths(2).unwrap().map(|q| q.to_string()).collect();
        assert_eq!(&two[..5], &["UU", "UR", "UD", "UL", "RU"]);
        assert!(enumerate_paths(13).is_err());
    }

    #[test]
    fn random_paths() {
        assert_eq!(random_path(1, 3).len(), 1);
        assert_eq!(random_path(57, 3).len(), 57);
        assert_eq!(random_path(57, 3), random_path(57, 3));
    }
}
