use rand::RngCore;

use crate::error::{Error, Result};
use crate::rng::rng_from;

/// Default cap on the number of table entries (2^26, i.e. 256 MiB of `u32`).
pub const DEFAULT_TABLE_BUDGET: u128 = 1 << 26;

/// Explicit table of a seeded function `f: [2^n] × [2^t] → [2^ℓ]`.
///
/// Entry `(x, seed)` lives at `x · 2^t + seed`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FunctionTable {
    n_bits: u32,
    t_bits: u32,
    l_bits: u32,
    table: Vec<u32>,
}

impl FunctionTable {
    fn check_widths(n_bits: u32, t_bits: u32, l_bits: u32, budget: u128) -> Result<()> {
        if l_bits == 0 {
            return Err(Error::InvalidParameter(
                "output width must be at least 1 bit (alphabet of at least 2 symbols)".into(),
            ));
        }
        if l_bits > 31 {
            return Err(Error::InvalidParameter(format!(
                "output width {l_bits} exceeds 31 bits"
            )));
        }
        if n_bits + t_bits > 96 {
            return Err(Error::BudgetExceeded {
                entries: u128::MAX,
                budget,
            });
        }
        let entries = 1u128 << (n_bits + t_bits);
        if entries > budget {
            return Err(Error::BudgetExceeded { entries, budget });
        }
        Ok(())
    }

    /// Tabulates `f` over every `(x, seed)`.
    pub fn from_fn(
        n_bits: u32,
        t_bits: u32,
        l_bits: u32,
        mut f: impl FnMut(u64, u64) -> u32,
    ) -> Result<Self> {
        Self::check_widths(n_bits, t_bits, l_bits, DEFAULT_TABLE_BUDGET)?;
        let (n, t) = (1u64 << n_bits, 1u64 << t_bits);
        let alphabet = 1u64 << l_bits;
        let mut table = Vec::with_capacity((n * t) as usize);
        for x in 0..n {
            for s in 0..t {
                let v = f(x, s);
                if u64::from(v) >= alphabet {
                    return Err(Error::InvalidParameter(format!(
                        "f({x}, {s}) = {v} outside alphabet of size {alphabet}"
                    )));
                }
                table.push(v);
            }
        }
        Ok(FunctionTable {
            n_bits,
            t_bits,
            l_bits,
            table,
        })
    }

    pub fn n_bits(&self) -> u32 {
        self.n_bits
    }

    pub fn t_bits(&self) -> u32 {
        self.t_bits
    }

    pub fn l_bits(&self) -> u32 {
        self.l_bits
    }

    /// Number of inputs, 2^n.
    pub fn inputs(&self) -> usize {
        1 << self.n_bits
    }

    /// Number of seeds, 2^t.
    pub fn seeds(&self) -> usize {
        1 << self.t_bits
    }

    /// Alphabet size, 2^ℓ.
    pub fn alphabet(&self) -> usize {
        1 << self.l_bits
    }

    #[inline]
    pub fn eval(&self, x: usize, seed: usize) -> u32 {
        self.table[(x << self.t_bits) + seed]
    }

    pub fn entries(&self) -> &[u32] {
        &self.table
    }
}

/// Uniformly random table drawn from a ChaCha stream seeded by `seed`.
pub fn random_function(n_bits: u32, t_bits: u32, l_bits: u32, seed: u64) -> Result<FunctionTable> {
    random_function_with_budget(n_bits, t_bits, l_bits, seed, DEFAULT_TABLE_BUDGET)
}

pub fn random_function_with_budget(
    n_bits: u32,
    t_bits: u32,
    l_bits: u32,
    seed: u64,
    budget: u128,
) -> Result<FunctionTable> {
    if n_bits == 0 || t_bits == 0 {
        return Err(Error::InvalidParameter(
            "input and seed widths must be at least 1".into(),
        ));
    }
    FunctionTable::check_widths(n_bits, t_bits, l_bits, budget)?;
    let mut rng = rng_from(seed);
    let mask = (1u32 << l_bits) - 1;
    let len = 1usize << (n_bits + t_bits);
    // power-of-two alphabet: masking a uniform word is exactly uniform
    let table = (0..len).map(|_| rng.next_u32() & mask).collect();
    Ok(FunctionTable {
        n_bits,
        t_bits,
        l_bits,
        table,
    })
}
