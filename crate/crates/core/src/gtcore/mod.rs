//! Bit vectors, sparse supports, measurement matrices, asymmetric closeness
//! and the disjunctive (OR) encoder.

mod bitvec;
pub mod format;
mod matrix;
mod support;

pub use bitvec::BitVec;
pub use matrix::BitMatrix;
pub use support::SupportSet;

use crate::error::{Error, Result};

/// Flip budget: at most `e0` flips 0→1 and at most `e1` flips 1→0.
///
/// The same type bounds measurement noise and reconstruction accuracy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct NoiseBudget {
    pub e0: usize,
    pub e1: usize,
}

/// Accuracy budget of a reconstruction (false positives, false negatives).
pub type AccuracyBudget = NoiseBudget;

impl NoiseBudget {
    pub const NONE: NoiseBudget = NoiseBudget { e0: 0, e1: 0 };

    pub fn new(e0: usize, e1: usize) -> Self {
        NoiseBudget { e0, e1 }
    }

    pub fn swapped(self) -> Self {
        NoiseBudget {
            e0: self.e1,
            e1: self.e0,
        }
    }
}

/// Outcome of the measurements `a` on `x`: bit `i` is set iff row `i`
/// intersects the support.
pub fn encode(a: &BitMatrix, x: &SupportSet) -> Result<BitVec> {
    if x.universe() != a.cols() {
        return Err(Error::mismatch(
            "support universe vs matrix columns",
            a.cols(),
            x.universe(),
        ));
    }
    let mut y = BitVec::zeros(a.rows());
    for &j in x.indices() {
        for &i in a.column(j) {
            y.set(i, true);
        }
    }
    Ok(y)
}

/// `(n01, n10)`: positions where `a` is 0 and `b` is 1, and where `a` is 1
/// and `b` is 0.
pub fn closeness_deltas(a: &BitVec, b: &BitVec) -> Result<(usize, usize)> {
    a.check_len(b)?;
    let (mut n01, mut n10) = (0, 0);
    for (wa, wb) in a.words().iter().zip(b.words()) {
        n01 += (!wa & wb).count_ones() as usize;
        n10 += (wa & !wb).count_ones() as usize;
    }
    Ok((n01, n10))
}

/// True iff `b` is obtained from `a` by at most `budget.e0` flips 0→1 and at
/// most `budget.e1` flips 1→0.
pub fn is_close(a: &BitVec, b: &BitVec, budget: NoiseBudget) -> Result<bool> {
    let (n01, n10) = closeness_deltas(a, b)?;
    Ok(n01 <= budget.e0 && n10 <= budget.e1)
}
