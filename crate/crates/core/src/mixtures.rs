//! Mixtures over `[L]^T`, agreement, agreement lists, and an empirical
//! check of the list-size bound `|LIST(S, ρ(S)·2^(ℓ−k') + ε)| < 2^k`.

use num_traits::{One, Zero};
use rayon::prelude::*;

use rand::RngCore;

use crate::condense::{induced_code, FunctionTable, InducedCode, PlannedScheme};
use crate::error::{Error, Result};
use crate::gtcore::{encode, BitVec, NoiseBudget, SupportSet};
use crate::noise::corrupt_random;
use crate::rng::{stream_rng, GtRng};
use crate::scalar::Frac;

/// A `T`-tuple of subsets of `[L]`, stored as a `T·L` bit vector with bit
/// `i·L + j` set iff `j ∈ S_i`. Empty coordinates are allowed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mixture {
    block_length: usize,
    alphabet: usize,
    members: BitVec,
}

impl Mixture {
    pub fn from_subsets(alphabet: usize, subsets: &[Vec<u32>]) -> Result<Self> {
        let t = subsets.len();
        let mut members = BitVec::zeros(t * alphabet);
        for (i, s) in subsets.iter().enumerate() {
            for &j in s {
                if j as usize >= alphabet {
                    return Err(Error::IndexOutOfRange {
                        index: j as usize,
                        universe: alphabet,
                    });
                }
                members.set(i * alphabet + j as usize, true);
            }
        }
        Ok(Mixture {
            block_length: t,
            alphabet,
            members,
        })
    }

    /// The mixture with `S_i = {w_i}`.
    pub fn singleton(alphabet: usize, word: &[u32]) -> Result<Self> {
        let subsets: Vec<Vec<u32>> = word.iter().map(|&s| vec![s]).collect();
        Self::from_subsets(alphabet, &subsets)
    }

    pub fn block_length(&self) -> usize {
        self.block_length
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    #[inline]
    pub fn contains(&self, i: usize, j: u32) -> bool {
        self.members.get(i * self.alphabet + j as usize)
    }

    /// `S_i` as a sorted list.
    pub fn coordinate(&self, i: usize) -> Vec<u32> {
        (0..self.alphabet as u32)
            .filter(|&j| self.contains(i, j))
            .collect()
    }

    /// `wgt(S) = Σ |S_i|`.
    pub fn weight(&self) -> usize {
        self.members.weight()
    }

    /// `ρ(S) = wgt(S) / (T·L)`.
    pub fn rho(&self) -> Frac {
        Frac::new(
            self.weight() as u64,
            (self.block_length * self.alphabet) as u64,
        )
    }

    pub fn as_bits(&self) -> &BitVec {
        &self.members
    }

    /// Coordinate-wise `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Mixture) -> bool {
        self.block_length == other.block_length
            && self.alphabet == other.alphabet
            && self.members.is_subset_of(&other.members).unwrap_or(false)
    }

    /// `|{i : w_i ∈ S_i}|`.
    pub fn agreement_count(&self, word: &[u32]) -> Result<usize> {
        if word.len() != self.block_length {
            return Err(Error::mismatch(
                "word length",
                self.block_length,
                word.len(),
            ));
        }
        Ok(word
            .iter()
            .enumerate()
            .filter(|&(i, &s)| (s as usize) < self.alphabet && self.contains(i, s))
            .count())
    }
}

/// Reads an observation on a codeword-graph matrix as a mixture: `j ∈ S_i`
/// iff bit `i·L + j` is set.
pub fn mixture_from_observation(
    y_hat: &BitVec,
    block_length: usize,
    alphabet: usize,
) -> Result<Mixture> {
    let expected = block_length * alphabet;
    if y_hat.len() != expected {
        return Err(Error::mismatch(
            "observation length (T·L)",
            expected,
            y_hat.len(),
        ));
    }
    Ok(Mixture {
        block_length,
        alphabet,
        members: y_hat.clone(),
    })
}

/// `Agr(w, S) = |{i : w_i ∈ S_i}| / T`.
pub fn agreement(word: &[u32], mixture: &Mixture) -> Result<Frac> {
    let count = mixture.agreement_count(word)?;
    Ok(Frac::new(count as u64, mixture.block_length() as u64))
}

/// Codewords whose agreement with `mixture` clears `alpha`.
///
/// With `strict`, this is `Agr > α` for `α < 1` and `Agr = 1` for `α = 1`;
/// otherwise `Agr ≥ α`. Exhaustive over all codewords.
pub fn agreement_list(
    code: &InducedCode,
    mixture: &Mixture,
    alpha: Frac,
    strict: bool,
) -> Result<SupportSet> {
    if alpha > Frac::one() {
        return Err(Error::InvalidParameter(format!(
            "alpha = {alpha} exceeds 1"
        )));
    }
    if code.block_length() != mixture.block_length() || code.alphabet() != mixture.alphabet() {
        return Err(Error::mismatch(
            "code block length vs mixture",
            code.block_length(),
            mixture.block_length(),
        ));
    }
    let t = code.block_length() as u64;
    let (num, den) = (*alpha.numer(), *alpha.denom());
    let full = alpha == Frac::one();
    // count/T vs num/den, cross-multiplied
    let keep = |count: u64| -> bool {
        let lhs = u128::from(count) * u128::from(den);
        let rhs = u128::from(num) * u128::from(t);
        if strict && !full {
            lhs > rhs
        } else {
            lhs >= rhs
        }
    };
    let indices: Vec<usize> = (0..code.len())
        .into_par_iter()
        .filter(|&x| {
            let count = mixture
                .agreement_count(code.codeword(x))
                .expect("lengths checked above");
            keep(count as u64)
        })
        .collect();
    Ok(SupportSet::from_sorted_unchecked(code.len(), indices))
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ListBoundReport {
    pub samples: u64,
    /// Samples skipped because the threshold reached 1.
    pub vacuous: u64,
    pub checked: u64,
    pub max_list: usize,
    /// Samples where the list had at least `2^k` members.
    pub violations: u64,
    pub bound: u64,
}

/// `ρ(S)·2^(ℓ−k') + ε` as an exact fraction.
pub fn list_threshold(rho: Frac, l_bits: u32, k_prime: u32, eps: Frac) -> Frac {
    let scale = if l_bits >= k_prime {
        Frac::from_integer(1u64 << (l_bits - k_prime))
    } else {
        Frac::new(1, 1u64 << (k_prime - l_bits))
    };
    rho * scale + eps
}

/// Samples `trials` mixtures and checks the list-size bound on each.
///
/// `sampler` receives the trial index and a per-trial RNG derived from
/// `seed`; samples whose threshold is at least 1 are counted as vacuous and
/// skipped.
pub fn check_list_bound(
    f: &FunctionTable,
    k: u32,
    k_prime: u32,
    eps: Frac,
    mut sampler: impl FnMut(u64, &mut GtRng) -> Result<Mixture>,
    trials: u64,
    seed: u64,
) -> Result<ListBoundReport> {
    if k > 63 {
        return Err(Error::InvalidParameter(format!("k = {k} too large")));
    }
    let code = induced_code(f);
    let bound = 1u64 << k;
    let mut report = ListBoundReport {
        bound,
        ..ListBoundReport::default()
    };
    for trial in 0..trials {
        let mut rng = stream_rng(seed, trial);
        let mixture = sampler(trial, &mut rng)?;
        report.samples += 1;
        let alpha = list_threshold(mixture.rho(), f.l_bits(), k_prime, eps);
        if alpha >= Frac::one() {
            report.vacuous += 1;
            continue;
        }
        let list = agreement_list(&code, &mixture, alpha, true)?;
        report.checked += 1;
        report.max_list = report.max_list.max(list.weight());
        if list.weight() as u64 >= bound {
            report.violations += 1;
        }
    }
    Ok(report)
}

/// [`check_list_bound`] on a planned scheme, with mixtures read off noisy
/// observations: each sample plants a random `D`-sparse support, encodes it,
/// and applies random noise at the planned `(⌊pM⌋, ⌊νM/D⌋)` budget.
pub fn check_list_bound_planned(
    scheme: &PlannedScheme,
    trials: u64,
    seed: u64,
) -> Result<ListBoundReport> {
    let params = &scheme.params;
    let budget = NoiseBudget::new(params.fp_budget(), params.fn_budget());
    let (t, l) = (params.block_length() as usize, params.alphabet() as usize);
    let sampler = |_trial: u64, rng: &mut GtRng| -> Result<Mixture> {
        let x = SupportSet::random(scheme.matrix.cols(), params.sparsity as usize, rng)?;
        let y = encode(&scheme.matrix, &x)?;
        let noisy = corrupt_random(&y, budget, rng.next_u64());
        mixture_from_observation(&noisy.output, t, l)
    };
    check_list_bound(
        &scheme.table,
        params.k,
        params.k_prime,
        params.eps,
        sampler,
        trials,
        seed,
    )
}

/// Whether `alpha` is a meaningful list threshold.
pub fn is_vacuous(alpha: Frac) -> bool {
    alpha >= Frac::one() || alpha < Frac::zero()
}
