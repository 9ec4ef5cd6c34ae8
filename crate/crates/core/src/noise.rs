//! Noise channels that stay within an `(e0, e1)` flip budget: uniformly
//! random flips, a greedy margin-attacking adversary, and exhaustive
//! enumeration of every reachable pattern.
//!
//! The greedy adversary is a heuristic and only lower-bounds what a true
//! worst-case adversary can do; exhaustive enumeration is exact but only
//! feasible on tiny instances.

use rand::seq::index;

use crate::combinatorics::{binomial, next_combination};
use crate::condense::SchemeParams;
use crate::decode::threshold_count;
use crate::error::{Error, Result};
use crate::gtcore::{encode, BitMatrix, BitVec, NoiseBudget, SupportSet};
use crate::rng::rng_from;

/// Default cap on enumerated items.
pub const DEFAULT_ENUM_CAP: u128 = 10_000_000;

/// A corrupted observation and the flips actually applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corruption {
    pub output: BitVec,
    pub applied: NoiseBudget,
    /// True when the requested budget exceeded the available positions.
    pub capped: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseMode {
    Random,
    AdversarialGreedy,
    ExhaustiveWorstCase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NoiseSpec {
    pub budget: NoiseBudget,
    pub mode: NoiseMode,
    pub seed: u64,
}

/// Flips `min(e0, zeros)` random 0s and `min(e1, ones)` random 1s, each
/// chosen without replacement.
pub fn corrupt_random(y: &BitVec, budget: NoiseBudget, seed: u64) -> Corruption {
    let mut rng = rng_from(seed);
    let zeros: Vec<usize> = y.zeros_iter().collect();
    let ones: Vec<usize> = y.ones_iter().collect();
    let e0 = budget.e0.min(zeros.len());
    let e1 = budget.e1.min(ones.len());
    let mut out = y.clone();
    for i in index::sample(&mut rng, zeros.len(), e0) {
        out.set(zeros[i], true);
    }
    for i in index::sample(&mut rng, ones.len(), e1) {
        out.set(ones[i], false);
    }
    Corruption {
        output: out,
        applied: NoiseBudget::new(e0, e1),
        capped: e0 < budget.e0 || e1 < budget.e1,
    }
}

/// Greedy adversary against the threshold decoder configured by `params`.
///
/// False negatives are spent on rows covered by exactly one support column,
/// always hitting the support column whose score is currently closest to the
/// decoding threshold, so the damage concentrates on one true item. False
/// positives are spent on 0-rows of the non-support column with the highest
/// current score. Flips are capped by availability.
pub fn corrupt_adversarial_greedy(
    a: &BitMatrix,
    x: &SupportSet,
    budget: NoiseBudget,
    params: &SchemeParams,
) -> Result<Corruption> {
    if a.rows() as u64 != params.rows() {
        return Err(Error::mismatch(
            "matrix rows vs planned M",
            params.rows() as usize,
            a.rows(),
        ));
    }
    let threshold = threshold_count(params.block_length(), params.nu_over_gamma()) as i64;
    greedy_attack(a, x, budget, threshold)
}

/// Greedy attack with an explicit decoding threshold count.
pub fn greedy_attack(
    a: &BitMatrix,
    x: &SupportSet,
    budget: NoiseBudget,
    threshold: i64,
) -> Result<Corruption> {
    let y = encode(a, x)?;
    let mut out = y.clone();
    let mut scores = vec![0i64; a.cols()];
    for r in y.ones_iter() {
        for &c in a.row(r) {
            scores[c] += 1;
        }
    }
    // how many support columns cover each row
    let mut cover = vec![0usize; a.rows()];
    for &c in x.indices() {
        for &r in a.column(c) {
            cover[r] += 1;
        }
    }

    let mut applied = NoiseBudget::default();
    for _ in 0..budget.e1 {
        let pick = x
            .indices()
            .iter()
            .filter_map(|&c| {
                let row = a
                    .column(c)
                    .iter()
                    .copied()
                    .find(|&r| out.get(r) && cover[r] == 1)?;
                Some((scores[c] - threshold, c, row))
            })
            .min()
            .map(|(_, _, r)| r)
            .or_else(|| out.ones_iter().find(|&r| y.get(r)));
        let Some(r) = pick else { break };
        out.set(r, false);
        for &c in a.row(r) {
            scores[c] -= 1;
        }
        applied.e1 += 1;
    }

    for _ in 0..budget.e0 {
        let pick = (0..a.cols())
            .filter(|&c| !x.contains(c))
            .filter_map(|c| {
                let row = a
                    .column(c)
                    .iter()
                    .copied()
                    .find(|&r| !out.get(r) && !y.get(r))?;
                Some((std::cmp::Reverse(scores[c]), c, row))
            })
            .min()
            .map(|(_, _, r)| r)
            .or_else(|| (0..a.rows()).find(|&r| !out.get(r) && !y.get(r)));
        let Some(r) = pick else { break };
        out.set(r, true);
        for &c in a.row(r) {
            scores[c] += 1;
        }
        applied.e0 += 1;
    }

    Ok(Corruption {
        output: out,
        capped: applied != budget,
        applied,
    })
}

fn clamped_volume(n: usize, r: usize) -> Option<u128> {
    (0..=r.min(n)).try_fold(0u128, |acc, i| {
        acc.checked_add(binomial(n as u64, i as u64)?)
    })
}

/// Number of patterns [`enumerate_noise_patterns`] yields:
/// `V(zeros, e0) · V(ones, e1)` with radii clamped to availability.
pub fn noise_pattern_count(y: &BitVec, budget: NoiseBudget) -> Option<u128> {
    let ones = y.weight();
    let zeros = y.len() - ones;
    clamped_volume(zeros, budget.e0)?.checked_mul(clamped_volume(ones, budget.e1)?)
}

/// Every vector reachable from `y` with at most `e0` flips 0→1 and at most
/// `e1` flips 1→0, each exactly once.
pub fn enumerate_noise_patterns(
    y: &BitVec,
    budget: NoiseBudget,
    cap: u128,
) -> Result<NoisePatterns> {
    let count = noise_pattern_count(y, budget).unwrap_or(u128::MAX);
    if count > cap {
        return Err(Error::CapExceeded { count, cap });
    }
    let zeros: Vec<usize> = y.zeros_iter().collect();
    let ones: Vec<usize> = y.ones_iter().collect();
    Ok(NoisePatterns {
        base: y.clone(),
        zero_cursor: SubsetCursor::new(zeros.len(), budget.e0),
        one_cursor: SubsetCursor::new(ones.len(), budget.e1),
        zeros,
        ones,
        done: false,
    })
}

/// Subsets of `[0, n)` of size at most `max`, by size then lexicographically.
#[derive(Debug, Clone)]
struct SubsetCursor {
    n: usize,
    max: usize,
    current: Vec<usize>,
}

impl SubsetCursor {
    fn new(n: usize, max: usize) -> Self {
        SubsetCursor {
            n,
            max: max.min(n),
            current: Vec::new(),
        }
    }

    fn reset(&mut self) {
        self.current.clear();
    }

    fn advance(&mut self) -> bool {
        if next_combination(&mut self.current, self.n) {
            return true;
        }
        let size = self.current.len() + 1;
        if size > self.max {
            return false;
        }
        self.current = (0..size).collect();
        true
    }
}

/// Iterator returned by [`enumerate_noise_patterns`].
#[derive(Debug, Clone)]
pub struct NoisePatterns {
    base: BitVec,
    zeros: Vec<usize>,
    ones: Vec<usize>,
    zero_cursor: SubsetCursor,
    one_cursor: SubsetCursor,
    done: bool,
}

impl Iterator for NoisePatterns {
    type Item = BitVec;

    fn next(&mut self) -> Option<BitVec> {
        if self.done {
            return None;
        }
        let mut v = self.base.clone();
        for &i in &self.zero_cursor.current {
            v.set(self.zeros[i], true);
        }
        for &i in &self.one_cursor.current {
            v.set(self.ones[i], false);
        }
        if !self.one_cursor.advance() {
            self.one_cursor.reset();
            if !self.zero_cursor.advance() {
                self.done = true;
            }
        }
        Some(v)
    }
}
