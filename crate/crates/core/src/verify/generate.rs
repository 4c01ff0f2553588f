//! Instance streams: exhaustive enumeration and seeded random spaces.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{capacity, Error, Result};
use crate::pointset::CAPACITY;
use crate::space::{default_labels, ConvergenceSpace};

/// Largest `n` for exhaustive enumeration (2^20 spaces at `n = 5`).
pub const MAX_ENUMERATION_N: usize = 5;

/// Off-diagonal cells in enumeration order.
///
/// Cells are grouped by their larger endpoint `m = 1, 2, ..`; within a group the
/// partner `j` runs from `m - 1` down to `0`, emitting `(m, j)` then `(j, m)`.
/// Cell `k` is bit `k` of the space's code, so the spaces on the first `m`
/// points form a prefix of the enumeration on any larger `n`.
pub fn enumeration_cells(n: usize) -> Vec<(usize, usize)> {
    let mut cells = Vec::with_capacity(n * n.saturating_sub(1));
    for m in 1..n {
        for j in (0..m).rev() {
            cells.push((m, j));
            cells.push((j, m));
        }
    }
    cells
}

/// The space on `n` points whose arrow set is encoded by `code`.
pub fn space_from_code(n: usize, code: u64) -> ConvergenceSpace {
    let mut rows = vec![0u64; n];
    for (k, (x, y)) in enumeration_cells(n).into_iter().enumerate() {
        if code >> k & 1 == 1 {
            rows[x] |= 1 << y;
        }
    }
    ConvergenceSpace::from_rows_unchecked(default_labels(n), rows)
}

/// Every reflexive digraph on `n` labelled points exactly once.
pub fn enumerate_spaces(n: usize) -> Result<SpaceEnumeration> {
    capacity("enumeration size", MAX_ENUMERATION_N, n)?;
    let cells = enumeration_cells(n);
    Ok(SpaceEnumeration { n, cells, next: 0, end: 1u64 << (n * n.saturating_sub(1)) })
}

/// Number of spaces with at most `max_n` points (including the empty space).
pub fn count_up_to(max_n: usize) -> u64 {
    (0..=max_n).map(|n| 1u64 << (n * n.saturating_sub(1))).sum()
}

pub struct SpaceEnumeration {
    n: usize,
    cells: Vec<(usize, usize)>,
    next: u64,
    end: u64,
}

impl Iterator for SpaceEnumeration {
    type Item = ConvergenceSpace;

    fn next(&mut self) -> Option<ConvergenceSpace> {
        if self.next >= self.end {
            return None;
        }
        let code = self.next;
        self.next += 1;
        let mut rows = vec![0u64; self.n];
        for (k, &(x, y)) in self.cells.iter().enumerate() {
            if code >> k & 1 == 1 {
                rows[x] |= 1 << y;
            }
        }
        Some(ConvergenceSpace::from_rows_unchecked(default_labels(self.n), rows))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for SpaceEnumeration {}

// SplitMix64 used as a counter-based generator: draw(seed, i) = mix(seed + (i + 1) * GAMMA).
const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const MIX1: u64 = 0xBF58_476D_1CE4_E5B9;
const MIX2: u64 = 0x94D0_49BB_1331_11EB;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(MIX1);
    z = (z ^ (z >> 27)).wrapping_mul(MIX2);
    z ^ (z >> 31)
}

/// The `counter`-th 64-bit draw of the stream keyed by `seed`.
#[inline]
pub fn counter_draw(seed: u64, counter: u64) -> u64 {
    mix64(seed.wrapping_add(counter.wrapping_add(1).wrapping_mul(GAMMA)))
}

/// A probability `num / den` with `num <= den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeProbability {
    num: u32,
    den: u32,
}

impl EdgeProbability {
    pub const ZERO: Self = EdgeProbability { num: 0, den: 1 };
    pub const ONE: Self = EdgeProbability { num: 1, den: 1 };

    pub fn new(num: u32, den: u32) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::Precondition(format!("edge probability {num}/{den} is not in [0, 1]")));
        }
        Ok(EdgeProbability { num, den })
    }

    pub fn num(&self) -> u32 {
        self.num
    }

    pub fn den(&self) -> u32 {
        self.den
    }

    /// `draw / 2^64 < num / den`, exactly.
    #[inline]
    pub fn accepts(&self, draw: u64) -> bool {
        (draw as u128) * (self.den as u128) < (self.num as u128) << 64
    }
}

impl fmt::Display for EdgeProbability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for EdgeProbability {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("cannot parse edge probability `{s}`"));
        match s.split_once('/') {
            Some((a, b)) => Self::new(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
            None => Self::new(s.trim().parse().map_err(|_| bad())?, 1),
        }
    }
}

/// Each off-diagonal arrow present independently with probability `p`.
///
/// Cells are visited row-major (`x` ascending, then `y` ascending, skipping
/// `y = x`) and the `i`-th visited cell consumes `counter_draw(seed, i)`.
pub fn random_space(n: usize, p: EdgeProbability, seed: u64) -> Result<ConvergenceSpace> {
    capacity("number of points", CAPACITY, n)?;
    let mut rows = vec![0u64; n];
    let mut counter = 0u64;
    for (x, row) in rows.iter_mut().enumerate() {
        for y in 0..n {
            if y == x {
                continue;
            }
            if p.accepts(counter_draw(seed, counter)) {
                *row |= 1 << y;
            }
            counter += 1;
        }
    }
    Ok(ConvergenceSpace::from_rows_unchecked(default_labels(n), rows))
}

/// Edge probabilities cycled through by sampled suites.
pub const SAMPLE_PROBABILITIES: [EdgeProbability; 4] = [
    EdgeProbability { num: 1, den: 8 },
    EdgeProbability { num: 1, den: 4 },
    EdgeProbability { num: 3, den: 8 },
    EdgeProbability { num: 1, den: 2 },
];

/// Parameters of the `index`-th sample of a suite keyed by `seed`: sizes cycle
/// through `max(1, max_n - 2) ..= max_n`, probabilities through
/// [`SAMPLE_PROBABILITIES`], and the space seed is `counter_draw(seed, index)`.
pub fn sample_parameters(max_n: usize, seed: u64, index: u64) -> (usize, EdgeProbability, u64) {
    let lo = max_n.saturating_sub(2).max(1).min(max_n);
    let span = (max_n - lo + 1) as u64;
    let n = lo + (index % span) as usize;
    let p = SAMPLE_PROBABILITIES[((index / span) % SAMPLE_PROBABILITIES.len() as u64) as usize];
    (n, p, counter_draw(seed, index))
}

pub fn sample_space(max_n: usize, seed: u64, index: u64) -> ConvergenceSpace {
    let (n, p, s) = sample_parameters(max_n, seed, index);
    random_space(n, p, s).expect("sample size within capacity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use std::collections::HashSet;

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| enumerate_spaces(n).unwrap().count()).collect();
        assert_eq!(counts, vec![1, 1, 4, 64, 4096]);
        assert_eq!(count_up_to(4), 4166);
        assert_eq!(count_up_to(3), 70);
        assert!(enumerate_spaces(6).is_err());
    }

    #[test]
    fn enumeration_of_two_points() {
        let spaces: Vec<ConvergenceSpace> = enumerate_spaces(2).unwrap().collect();
        assert_eq!(spaces[0], ConvergenceSpace::discrete(2));
        assert_eq!(spaces[3], ConvergenceSpace::antidiscrete(2));
        let arrows: HashSet<usize> = spaces.iter().map(|s| s.arrow_count()).collect();
        assert_eq!(arrows, HashSet::from([0, 1, 2]));
        assert_ne!(spaces[1], spaces[2]);
    }

    #[test]
    fn enumeration_is_distinct_and_contains_fixtures() {
        let spaces: Vec<ConvergenceSpace> = enumerate_spaces(3).unwrap().collect();
        let distinct: HashSet<&ConvergenceSpace> = spaces.iter().collect();
        assert_eq!(distinct.len(), 64);
        for f in [fixtures::line3(), fixtures::triangle(), fixtures::vee()] {
            assert!(spaces.contains(&f));
        }
    }

    #[test]
    fn enumeration_prefix_property() {
        let small: Vec<ConvergenceSpace> = enumerate_spaces(2).unwrap().collect();
        let big: Vec<ConvergenceSpace> = enumerate_spaces(3).unwrap().take(4).collect();
        for (s, b) in small.iter().zip(&big) {
            let ab = b.set([0, 1]);
            assert_eq!(&b.subspace(&ab).unwrap(), s);
            assert_eq!(b.out(crate::Point(2)), b.set([2]));
        }
    }

    #[test]
    fn random_extremes() {
        for seed in [0, 1, 42, u64::MAX] {
            assert_eq!(random_space(7, EdgeProbability::ZERO, seed).unwrap(), ConvergenceSpace::discrete(7));
            assert_eq!(random_space(7, EdgeProbability::ONE, seed).unwrap(), ConvergenceSpace::antidiscrete(7));
        }
        assert!(random_space(65, EdgeProbability::ONE, 0).is_err());
    }

    #[test]
    fn generator_is_pinned() {
        // SplitMix64 reference outputs for seed 0 (the canonical test vector)
        assert_eq!(counter_draw(0, 0), 0xE220_A839_7B1D_CDAF);
        assert_eq!(counter_draw(0, 1), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(counter_draw(0, 2), 0x06C4_5D18_8009_454F);
    }

    #[test]
    fn random_space_is_reproducible() {
        let p = EdgeProbability::new(1, 4).unwrap();
        let a = random_space(8, p, 42).unwrap();
        assert_eq!(a, random_space(8, p, 42).unwrap());
        assert_ne!(a, random_space(8, p, 43).unwrap());
    }

    #[test]
    fn probability_parsing() {
        assert_eq!("1/4".parse::<EdgeProbability>().unwrap(), EdgeProbability::new(1, 4).unwrap());
        assert_eq!("1".parse::<EdgeProbability>().unwrap(), EdgeProbability::ONE);
        assert!("5/4".parse::<EdgeProbability>().is_err());
        assert!("x".parse::<EdgeProbability>().is_err());
    }

    #[test]
    fn sample_sizes_cycle() {
        let sizes: Vec<usize> = (0..6).map(|i| sample_parameters(8, 7, i).0).collect();
        assert_eq!(sizes, vec![6, 7, 8, 6, 7, 8]);
        assert_eq!(sample_parameters(1, 7, 5).0, 1);
        assert_eq!(sample_parameters(2, 7, 1).0, 2);
    }
}
