use std::ops::ControlFlow;

use crate::combinatorics::for_each_combination;
use crate::gtcore::{BitMatrix, BitVec};

/// A column whose support lies inside the union of a few other columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjunctViolation {
    pub column: usize,
    pub cover: Vec<usize>,
}

/// Largest `|supp(c_i) ∩ supp(c_j)|` over pairs of distinct columns.
pub fn max_pairwise_intersection(a: &BitMatrix) -> usize {
    let cols: Vec<BitVec> = (0..a.cols()).map(|j| a.column_bits(j)).collect();
    let mut best = 0;
    for i in 0..cols.len() {
        for j in i + 1..cols.len() {
            let common: u32 = cols[i]
                .words()
                .iter()
                .zip(cols[j].words())
                .map(|(x, y)| (x & y).count_ones())
                .sum();
            best = best.max(common as usize);
        }
    }
    best
}

/// Finds a column covered by at most `d` other columns, searching only over
/// columns that hit the first still-uncovered row. Exact.
pub fn find_disjunct_violation(a: &BitMatrix, d: usize) -> Option<DisjunctViolation> {
    let columns = a.columns();
    for (c, support) in columns.iter().enumerate() {
        // restrict every other column to the rows of column c
        let pos: std::collections::HashMap<usize, usize> =
            support.iter().enumerate().map(|(p, &r)| (r, p)).collect();
        let masks: Vec<(usize, BitVec)> = (0..a.cols())
            .filter(|&j| j != c)
            .map(|j| {
                let idx: Vec<usize> = columns[j]
                    .iter()
                    .filter_map(|r| pos.get(r).copied())
                    .collect();
                (
                    j,
                    BitVec::from_indices(support.len(), &idx).expect("in range"),
                )
            })
            .filter(|(_, m)| m.weight() > 0)
            .collect();
        let mut by_row: Vec<Vec<usize>> = vec![Vec::new(); support.len()];
        for (k, (_, m)) in masks.iter().enumerate() {
            for p in m.ones_iter() {
                by_row[p].push(k);
            }
        }
        let mut chosen = Vec::new();
        let covered = BitVec::zeros(support.len());
        if cover_search(&masks, &by_row, covered, d, &mut chosen) {
            let mut cover: Vec<usize> = chosen.iter().map(|&k| masks[k].0).collect();
            cover.sort_unstable();
            return Some(DisjunctViolation { column: c, cover });
        }
    }
    None
}

fn cover_search(
    masks: &[(usize, BitVec)],
    by_row: &[Vec<usize>],
    covered: BitVec,
    budget: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    let Some(row) = covered.zeros_iter().next() else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for &k in &by_row[row] {
        let mut next = covered.clone();
        next.or_assign(&masks[k].1).expect("equal lengths");
        chosen.push(k);
        if cover_search(masks, by_row, next, budget - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// No column is covered by the union of any `d` others.
pub fn is_disjunct(a: &BitMatrix, d: usize) -> bool {
    find_disjunct_violation(a, d).is_none()
}

/// Brute force over every column and every `d`-subset of the remaining
/// columns (all of them when fewer than `d` remain).
pub fn find_disjunct_violation_exhaustive(a: &BitMatrix, d: usize) -> Option<DisjunctViolation> {
    let cols: Vec<BitVec> = (0..a.cols()).map(|j| a.column_bits(j)).collect();
    for c in 0..cols.len() {
        let others: Vec<usize> = (0..cols.len()).filter(|&j| j != c).collect();
        let k = d.min(others.len());
        let hit = for_each_combination(others.len(), k, |pick| {
            let mut union = BitVec::zeros(a.rows());
            for &p in pick {
                union.or_assign(&cols[others[p]]).expect("equal lengths");
            }
            if cols[c].is_subset_of(&union).expect("equal lengths") {
                ControlFlow::Break(pick.iter().map(|&p| others[p]).collect::<Vec<_>>())
            } else {
                ControlFlow::Continue(())
            }
        });
        if let Some(cover) = hit {
            return Some(DisjunctViolation { column: c, cover });
        }
    }
    None
}

/// Number of `(column, d-subset)` pairs the exhaustive check visits.
pub fn exhaustive_disjunct_pairs(cols: usize, d: usize) -> Option<u128> {
    if cols == 0 {
        return Some(0);
    }
    let k = d.min(cols - 1) as u64;
    crate::combinatorics::binomial((cols - 1) as u64, k)?.checked_mul(cols as u128)
}
