//! Reconstruction.
//!
//! [`threshold_decode`] keeps every column whose observed rows cover at
//! least `T·(1 − ν/γ)` of its `T` ones. On a codeword-graph matrix this is
//! the set of codewords with agreement at least `1 − ν/γ` with the mixture
//! the observation induces. The comparison is done in integers.

use std::ops::ControlFlow;

use num_traits::One;

use crate::combinatorics::{for_each_subset_up_to, subsets_up_to};
use crate::condense::SchemeParams;
use crate::error::{Error, Result};
use crate::gtcore::{closeness_deltas, BitMatrix, BitVec, NoiseBudget, SupportSet};
use crate::scalar::Frac;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    pub support: SupportSet,
    /// Per column, the number of its rows observed as 1 (in `[0, T]`).
    pub scores: Vec<u32>,
    /// Agreement threshold `1 − ν/γ`.
    pub threshold: Frac,
    /// Smallest score that clears the threshold.
    pub threshold_count: u64,
    pub block_length: u64,
    pub params_used: Option<SchemeParams>,
}

/// `⌈T·(1 − ν/γ)⌉`: the least count `c` with `c ≥ T·(1 − ν/γ)`.
pub fn threshold_count(block_length: u64, nu_over_gamma: Frac) -> u64 {
    let (num, den) = (
        u128::from(*nu_over_gamma.numer()),
        u128::from(*nu_over_gamma.denom()),
    );
    if num >= den {
        return 0;
    }
    (u128::from(block_length) * (den - num)).div_ceil(den) as u64
}

pub fn threshold_decode(
    a: &BitMatrix,
    y_hat: &BitVec,
    block_length: u64,
    nu_over_gamma: Frac,
) -> Result<DecodeResult> {
    if y_hat.len() != a.rows() {
        return Err(Error::mismatch(
            "observation length vs matrix rows",
            a.rows(),
            y_hat.len(),
        ));
    }
    if nu_over_gamma >= Frac::one() {
        return Err(Error::InvalidParameter(format!(
            "nu/gamma = {nu_over_gamma} must be below 1"
        )));
    }
    for (j, col) in a.columns().iter().enumerate() {
        if col.len() as u64 != block_length {
            return Err(Error::ColumnWeight {
                column: j,
                weight: col.len(),
                expected: block_length as usize,
            });
        }
    }

    let mut scores = vec![0u32; a.cols()];
    for r in y_hat.ones_iter() {
        for &c in a.row(r) {
            scores[c] += 1;
        }
    }
    let (num, den) = (
        u128::from(*nu_over_gamma.numer()),
        u128::from(*nu_over_gamma.denom()),
    );
    // score ≥ T·(1 − num/den)  ⇔  score·den ≥ T·(den − num)
    let rhs = u128::from(block_length) * (den - num);
    let indices: Vec<usize> = scores
        .iter()
        .enumerate()
        .filter(|&(_, &s)| u128::from(s) * den >= rhs)
        .map(|(j, _)| j)
        .collect();

    Ok(DecodeResult {
        support: SupportSet::from_sorted_unchecked(a.cols(), indices),
        scores,
        threshold: Frac::one() - nu_over_gamma,
        threshold_count: threshold_count(block_length, nu_over_gamma),
        block_length,
        params_used: None,
    })
}

/// Threshold decoding with `T` and `ν/γ` taken from a planned bundle.
pub fn decode_with_params(
    a: &BitMatrix,
    y_hat: &BitVec,
    params: &SchemeParams,
) -> Result<DecodeResult> {
    let mut r = threshold_decode(a, y_hat, params.block_length(), params.nu_over_gamma())?;
    r.params_used = Some(params.clone());
    Ok(r)
}

/// One measurement round of the doubling search: a matrix for the current
/// sparsity guess, fresh observations on it, and the output-weight cap `K`.
#[derive(Debug, Clone)]
pub struct DoublingRound {
    pub matrix: BitMatrix,
    pub observation: BitVec,
    pub block_length: u64,
    pub nu_over_gamma: Frac,
    pub cap: u64,
    pub params: Option<SchemeParams>,
}

#[derive(Debug, Clone)]
pub struct RoundSummary {
    pub guess: u64,
    pub measurements: u64,
    pub decoded_weight: usize,
    pub cap: u64,
}

#[derive(Debug, Clone)]
pub struct DoublingOutcome {
    pub result: DecodeResult,
    pub guess: u64,
    pub rounds: Vec<RoundSummary>,
    pub total_measurements: u64,
}

/// Tries sparsity guesses `1, 2, 4, …` and stops at the first round whose
/// reconstruction has weight at most that round's cap. Guessing stops after
/// the first guess `≥ universe`.
pub fn decode_with_doubling(
    universe: u64,
    mut round_for: impl FnMut(u64) -> Result<DoublingRound>,
) -> Result<DoublingOutcome> {
    let mut rounds = Vec::new();
    let mut total = 0u64;
    let mut guess = 1u64;
    loop {
        let round = round_for(guess)?;
        let mut result = threshold_decode(
            &round.matrix,
            &round.observation,
            round.block_length,
            round.nu_over_gamma,
        )?;
        result.params_used = round.params;
        total += round.matrix.rows() as u64;
        let weight = result.support.weight();
        rounds.push(RoundSummary {
            guess,
            measurements: round.matrix.rows() as u64,
            decoded_weight: weight,
            cap: round.cap,
        });
        if weight as u64 <= round.cap {
            return Ok(DoublingOutcome {
                result,
                guess,
                rounds,
                total_measurements: total,
            });
        }
        if guess >= universe {
            return Err(Error::GuessesExhausted { universe });
        }
        guess *= 2;
    }
}

/// Every support of weight at most `d` whose encoding can be turned into
/// `y_hat` within `budget`, in size-then-lexicographic order.
pub fn oracle_decode_exhaustive(
    a: &BitMatrix,
    y_hat: &BitVec,
    d: usize,
    budget: NoiseBudget,
    cap: u128,
) -> Result<Vec<SupportSet>> {
    if y_hat.len() != a.rows() {
        return Err(Error::mismatch(
            "observation length vs matrix rows",
            a.rows(),
            y_hat.len(),
        ));
    }
    let count = subsets_up_to(a.cols() as u64, d as u64).unwrap_or(u128::MAX);
    if count > cap {
        return Err(Error::CapExceeded { count, cap });
    }
    let columns: Vec<BitVec> = (0..a.cols()).map(|j| a.column_bits(j)).collect();
    let mut out = Vec::new();
    for_each_subset_up_to::<()>(a.cols(), d, |subset| {
        let mut enc = BitVec::zeros(a.rows());
        for &j in subset {
            enc.or_assign(&columns[j]).expect("equal lengths");
        }
        let (n01, n10) = closeness_deltas(&enc, y_hat).expect("equal lengths");
        if n01 <= budget.e0 && n10 <= budget.e1 {
            out.push(SupportSet::from_sorted_unchecked(a.cols(), subset.to_vec()));
        }
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// True if some member of `candidates` is contained in `support`.
pub fn in_upward_closure(support: &SupportSet, candidates: &[SupportSet]) -> bool {
    candidates.iter().any(|c| c.is_subset_of(support))
}
