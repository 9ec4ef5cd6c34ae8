//! Binomial coefficients and in-place combination enumeration.

use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_traits::One;

/// `C(n, k)`, or `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc·(n−i) is divisible by (i+1) after the multiplication
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
    }
    Some(acc)
}

pub fn binomial_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `Σ_{i ≤ d} C(n, i)`, or `None` on overflow.
pub fn subsets_up_to(n: u64, d: u64) -> Option<u128> {
    (0..=d.min(n)).try_fold(0u128, |acc, i| acc.checked_add(binomial(n, i)?))
}

/// Advances `combo` (strictly increasing, values `< n`) to its lexicographic
/// successor. Returns `false` after the last combination.
pub fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Calls `f` on every `k`-subset of `[0, n)` in lexicographic order.
pub fn for_each_combination<B>(
    n: usize,
    k: usize,
    mut f: impl FnMut(&[usize]) -> ControlFlow<B>,
) -> Option<B> {
    if k > n {
        return None;
    }
    let mut combo: Vec<usize> = (0..k).collect();
    loop {
        if let ControlFlow::Break(b) = f(&combo) {
            return Some(b);
        }
        if !next_combination(&mut combo, n) {
            return None;
        }
    }
}

/// Calls `f` on every subset of `[0, n)` of size at most `d`, ordered by
/// size and then lexicographically.
pub fn for_each_subset_up_to<B>(
    n: usize,
    d: usize,
    mut f: impl FnMut(&[usize]) -> ControlFlow<B>,
) -> Option<B> {
    for k in 0..=d.min(n) {
        if let Some(b) = for_each_combination(n, k, &mut f) {
            return Some(b);
        }
    }
    None
}
