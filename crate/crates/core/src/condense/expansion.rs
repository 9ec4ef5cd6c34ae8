//! Sampled expansion check: an empirical stand-in for the lossless
//! condenser property. A set of `2^k` inputs should reach at least
//! `(1 − ε)·2^k·T` distinct right vertices of the codeword graph.

use std::ops::ControlFlow;

use rand::seq::index;
use rayon::prelude::*;

use super::FunctionTable;
use crate::combinatorics::{binomial, for_each_combination};
use crate::error::{Error, Result};
use crate::rng::stream_rng;
use crate::scalar::Frac;

/// Subset counts up to this value are checked exhaustively.
pub const DEFAULT_EXHAUSTIVE_CAP: u128 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionReport {
    pub subset_size: usize,
    /// Minimum neighbourhood size for a subset to pass.
    pub required: u64,
    pub checked: u64,
    pub passed: u64,
    pub min_neighbourhood: u64,
    pub exhaustive: bool,
}

impl ExpansionReport {
    pub fn pass_rate(&self) -> f64 {
        if self.checked == 0 {
            1.0
        } else {
            self.passed as f64 / self.checked as f64
        }
    }
}

/// Number of distinct `(coordinate, symbol)` pairs hit by the inputs.
fn neighbourhood(f: &FunctionTable, inputs: &[usize], stamp: &mut [u32], epoch: &mut u32) -> u64 {
    let mut total = 0;
    for i in 0..f.seeds() {
        *epoch = epoch.wrapping_add(1);
        if *epoch == 0 {
            stamp.fill(0);
            *epoch = 1;
        }
        for &x in inputs {
            let s = f.eval(x, i) as usize;
            if stamp[s] != *epoch {
                stamp[s] = *epoch;
                total += 1;
            }
        }
    }
    total
}

pub fn sampled_expansion_check(
    f: &FunctionTable,
    k: u32,
    eps: Frac,
    trials: u64,
    seed: u64,
) -> Result<ExpansionReport> {
    sampled_expansion_check_with(f, k, eps, trials, seed, DEFAULT_EXHAUSTIVE_CAP)
}

pub fn sampled_expansion_check_with(
    f: &FunctionTable,
    k: u32,
    eps: Frac,
    trials: u64,
    seed: u64,
    exhaustive_cap: u128,
) -> Result<ExpansionReport> {
    if k > f.n_bits() {
        return Err(Error::InvalidParameter(format!(
            "subset size 2^{k} exceeds the {} inputs",
            f.inputs()
        )));
    }
    let size = 1usize << k;
    let t = f.seeds() as u64;
    // |N(S)| ≥ (1 − ε)·2^k·T  ⇔  |N(S)|·den ≥ (den − num)·2^k·T
    let (num, den) = (u128::from(*eps.numer()), u128::from(*eps.denom()));
    let target = (size as u128) * u128::from(t);
    let passes = |nb: u64| -> bool {
        if num >= den {
            return true;
        }
        u128::from(nb) * den >= (den - num) * target
    };
    let required = if num >= den {
        0
    } else {
        ((den - num) * target).div_ceil(den) as u64
    };

    let total = binomial(f.inputs() as u64, size as u64);
    let exhaustive = total.is_some_and(|c| c <= exhaustive_cap);
    let alphabet = f.alphabet();

    let (checked, passed, min_nb) = if exhaustive {
        let mut stamp = vec![0u32; alphabet];
        let mut epoch = 0u32;
        let (mut checked, mut passed, mut min_nb) = (0u64, 0u64, u64::MAX);
        for_each_combination::<()>(f.inputs(), size, |subset| {
            let nb = neighbourhood(f, subset, &mut stamp, &mut epoch);
            checked += 1;
            passed += u64::from(passes(nb));
            min_nb = min_nb.min(nb);
            ControlFlow::Continue(())
        });
        (checked, passed, min_nb)
    } else {
        let results: Vec<u64> = (0..trials)
            .into_par_iter()
            .map(|trial| {
                let mut rng = stream_rng(seed, trial);
                let subset = index::sample(&mut rng, f.inputs(), size).into_vec();
                let mut stamp = vec![0u32; alphabet];
                let mut epoch = 0u32;
                neighbourhood(f, &subset, &mut stamp, &mut epoch)
            })
            .collect();
        let passed = results.iter().filter(|&&nb| passes(nb)).count() as u64;
        (
            trials,
            passed,
            results.iter().copied().min().unwrap_or(u64::MAX),
        )
    };

    Ok(ExpansionReport {
        subset_size: size,
        required,
        checked,
        passed,
        min_neighbourhood: min_nb,
        exhaustive,
    })
}
