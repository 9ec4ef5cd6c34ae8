use std::fmt;

use rand::seq::index;
use rand::Rng;

use super::BitVec;
use crate::error::{Error, Result};

/// Sparse boolean vector: strictly increasing indices in `[0, universe)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportSet {
    universe: usize,
    indices: Vec<usize>,
}

impl SupportSet {
    pub fn empty(universe: usize) -> Self {
        SupportSet {
            universe,
            indices: Vec::new(),
        }
    }

    /// Builds a support from arbitrary indices; sorts and rejects duplicates.
    pub fn new(universe: usize, mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        for w in indices.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidParameter(format!(
                    "duplicate index {} in support",
                    w[0]
                )));
            }
        }
        if let Some(&last) = indices.last() {
            if last >= universe {
                return Err(Error::IndexOutOfRange {
                    index: last,
                    universe,
                });
            }
        }
        Ok(SupportSet { universe, indices })
    }

    /// Internal constructor for indices already known to be sorted, unique
    /// and in range.
    pub(crate) fn from_sorted_unchecked(universe: usize, indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(indices.last().is_none_or(|&i| i < universe));
        SupportSet { universe, indices }
    }

    /// Uniformly random support of exactly `weight` elements.
    pub fn random<R: Rng + ?Sized>(universe: usize, weight: usize, rng: &mut R) -> Result<Self> {
        if weight > universe {
            return Err(Error::InvalidParameter(format!(
                "cannot draw {weight} distinct indices from {universe}"
            )));
        }
        let mut indices = index::sample(rng, universe, weight).into_vec();
        indices.sort_unstable();
        Ok(SupportSet { universe, indices })
    }

    pub fn from_bitvec(v: &BitVec) -> Self {
        SupportSet {
            universe: v.len(),
            indices: v.ones_iter().collect(),
        }
    }

    pub fn to_bitvec(&self) -> BitVec {
        BitVec::from_indices(self.universe, &self.indices).expect("indices in range")
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn weight(&self) -> usize {
        self.indices.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &SupportSet) -> bool {
        self.indices.iter().all(|&i| other.contains(i))
    }

    /// Number of elements of `self` missing from `other`, i.e. |self \ other|.
    pub fn difference_count(&self, other: &SupportSet) -> usize {
        self.indices.iter().filter(|&&i| !other.contains(i)).count()
    }

    pub fn union(&self, other: &SupportSet) -> Result<SupportSet> {
        if self.universe != other.universe {
            return Err(Error::mismatch(
                "support universe",
                self.universe,
                other.universe,
            ));
        }
        let mut out = Vec::with_capacity(self.indices.len() + other.indices.len());
        let (mut a, mut b) = (
            self.indices.iter().peekable(),
            other.indices.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&x), Some(&&y)) => {
                    if x < y {
                        out.push(x);
                        a.next();
                    } else if y < x {
                        out.push(y);
                        b.next();
                    } else {
                        out.push(x);
                        a.next();
                        b.next();
                    }
                }
                (Some(&&x), None) => {
                    out.push(x);
                    a.next();
                }
                (None, Some(&&y)) => {
                    out.push(y);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Ok(SupportSet {
            universe: self.universe,
            indices: out,
        })
    }
}

impl fmt::Debug for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SupportSet({}; {:?})", self.universe, self.indices)
    }
}
