use std::collections::HashMap;
use std::ops::ControlFlow;

use crate::combinatorics::for_each_subset_up_to;
use crate::error::{Error, Result};
use crate::gtcore::{BitMatrix, BitVec, NoiseBudget, SupportSet};
use crate::noise::{enumerate_noise_patterns, noise_pattern_count};

/// Observation on which no common reconstruction exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrectingWitness {
    pub observation: BitVec,
    /// Union of every consistent support; the only candidate decoding.
    pub union: SupportSet,
    /// A consistent support that the union overshoots by more than allowed.
    pub consistent: SupportSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrectingReport {
    pub passed: bool,
    pub witness: Option<CorrectingWitness>,
    /// `(x, noise pattern)` pairs evaluated.
    pub pairs: u128,
    pub distinct_observations: usize,
}

#[derive(Debug, Clone)]
struct Consistent {
    union: BitVec,
    smallest: Vec<usize>,
}

/// Exhaustive check that `a` is `(budget.e0, budget.e1, acc.e0, 0)`-correcting
/// for `d`-sparse vectors.
///
/// With no false negatives allowed in the reconstruction, a valid decoding
/// of `y` must contain every support consistent with `y`, so the union of
/// those supports is the only candidate and it suffices to compare its size
/// with the smallest consistent support.
pub fn verify_correcting(
    a: &BitMatrix,
    d: usize,
    budget: NoiseBudget,
    acc: NoiseBudget,
    cap: u128,
) -> Result<CorrectingReport> {
    if acc.e1 != 0 {
        return Err(Error::InvalidParameter(
            "verification supports only reconstructions without false negatives (acc e1 = 0)"
                .into(),
        ));
    }
    let columns: Vec<BitVec> = (0..a.cols()).map(|j| a.column_bits(j)).collect();
    let encode = |subset: &[usize]| {
        let mut y = BitVec::zeros(a.rows());
        for &j in subset {
            y.or_assign(&columns[j]).expect("equal lengths");
        }
        y
    };

    let mut total: u128 = 0;
    let over = for_each_subset_up_to(a.cols(), d, |subset| {
        let count = noise_pattern_count(&encode(subset), budget).unwrap_or(u128::MAX);
        total = total.saturating_add(count);
        if total > cap {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    if over.is_some() {
        return Err(Error::CapExceeded { count: total, cap });
    }

    let mut seen: HashMap<BitVec, Consistent> = HashMap::new();
    for_each_subset_up_to::<()>(a.cols(), d, |subset| {
        let x = BitVec::from_indices(a.cols(), subset).expect("in range");
        let patterns =
            enumerate_noise_patterns(&encode(subset), budget, u128::MAX).expect("uncapped");
        for y in patterns {
            seen.entry(y)
                .and_modify(|c| {
                    c.union.or_assign(&x).expect("equal lengths");
                    // subsets arrive by size, so the first is a smallest one
                })
                .or_insert_with(|| Consistent {
                    union: x.clone(),
                    smallest: subset.to_vec(),
                });
        }
        ControlFlow::Continue(())
    });

    let mut witness: Option<(String, CorrectingWitness)> = None;
    for (y, c) in &seen {
        if c.union.weight() - c.smallest.len() <= acc.e0 {
            continue;
        }
        let key = y.to_string();
        if witness.as_ref().is_some_and(|(k, _)| *k <= key) {
            continue;
        }
        witness = Some((
            key,
            CorrectingWitness {
                observation: y.clone(),
                union: SupportSet::from_bitvec(&c.union),
                consistent: SupportSet::from_sorted_unchecked(a.cols(), c.smallest.clone()),
            },
        ));
    }

    Ok(CorrectingReport {
        passed: witness.is_none(),
        witness: witness.map(|(_, w)| w),
        pairs: total,
        distinct_observations: seen.len(),
    })
}
