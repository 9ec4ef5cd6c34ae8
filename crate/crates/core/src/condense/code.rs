use super::FunctionTable;
use crate::error::{Error, Result};
use crate::gtcore::BitMatrix;

/// Block code over `[alphabet]` of length `block_length`, stored codeword
/// by codeword.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InducedCode {
    block_length: usize,
    alphabet: usize,
    symbols: Vec<u32>,
}

impl InducedCode {
    /// `symbols` holds the codewords back to back.
    pub fn new(block_length: usize, alphabet: usize, symbols: Vec<u32>) -> Result<Self> {
        if block_length == 0 {
            return Err(Error::InvalidParameter(
                "block length must be positive".into(),
            ));
        }
        if alphabet < 2 {
            return Err(Error::InvalidParameter(
                "alphabet needs at least 2 symbols".into(),
            ));
        }
        if !symbols.len().is_multiple_of(block_length) {
            return Err(Error::mismatch(
                "symbol count (multiple of block length)",
                symbols.len().next_multiple_of(block_length),
                symbols.len(),
            ));
        }
        if let Some(&bad) = symbols.iter().find(|&&s| s as usize >= alphabet) {
            return Err(Error::InvalidParameter(format!(
                "symbol {bad} outside alphabet of size {alphabet}"
            )));
        }
        Ok(InducedCode {
            block_length,
            alphabet,
            symbols,
        })
    }

    pub fn block_length(&self) -> usize {
        self.block_length
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    /// Number of codewords.
    pub fn len(&self) -> usize {
        self.symbols.len() / self.block_length
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn codeword(&self, x: usize) -> &[u32] {
        &self.symbols[x * self.block_length..(x + 1) * self.block_length]
    }

    pub fn codewords(&self) -> impl ExactSizeIterator<Item = &[u32]> {
        self.symbols.chunks_exact(self.block_length)
    }

    /// Row of the codeword graph for coordinate `i` and symbol `j`.
    #[inline]
    pub fn row_index(&self, i: usize, j: usize) -> usize {
        i * self.alphabet + j
    }
}

/// The code whose codeword `x` is `(f(x, 0), …, f(x, T − 1))`.
pub fn induced_code(f: &FunctionTable) -> InducedCode {
    InducedCode {
        block_length: f.seeds(),
        alphabet: f.alphabet(),
        symbols: f.entries().to_vec(),
    }
}

/// Adjacency matrix of the codeword graph: `T·L` rows, one column per
/// codeword, entry `(i·L + j, x)` set iff codeword `x` has symbol `j` at
/// coordinate `i`. Every column has weight exactly `T`.
pub fn codeword_graph_matrix(code: &InducedCode) -> BitMatrix {
    let rows = code.block_length * code.alphabet;
    let mut supports = vec![Vec::new(); rows];
    for (x, word) in code.codewords().enumerate() {
        for (i, &sym) in word.iter().enumerate() {
            supports[code.row_index(i, sym as usize)].push(x);
        }
    }
    BitMatrix::new(rows, code.len(), supports).expect("codeword graph rows are sorted and in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::condense::random_function;
    use rand::Rng;

    #[test]
    fn constant_function_gives_constant_codewords() {
        let f = FunctionTable::from_fn(3, 2, 2, |_, _| 3).unwrap();
        let code = induced_code(&f);
        assert!(code.codewords().all(|w| w == [3, 3, 3, 3]));
        let m = codeword_graph_matrix(&code);
        let first = m.column(0).to_vec();
        assert!(m.columns().iter().all(|c| *c == first));
        assert_eq!(m.uniform_column_weight(), Some(4));
    }

    #[test]
    fn seed_independent_function() {
        let f = FunctionTable::from_fn(3, 2, 2, |x, _| (x % 4) as u32).unwrap();
        let code = induced_code(&f);
        for x in 0..8 {
            assert!(code.codeword(x).iter().all(|&s| s as usize == x % 4));
        }
    }

    #[test]
    fn random_table_spot_checks() {
        let f = random_function(6, 3, 3, 99).unwrap();
        let code = induced_code(&f);
        let mut rng = crate::rng::rng_from(5);
        for _ in 0..10 {
            let x = rng.random_range(0..64);
            let i = rng.random_range(0..8);
            assert_eq!(code.codeword(x)[i], f.eval(x, i));
        }
    }

    #[test]
    fn single_coordinate_is_symbol_indicator() {
        let f = FunctionTable::from_fn(3, 0, 3, |x, _| (7 - x) as u32).unwrap();
        let m = codeword_graph_matrix(&induced_code(&f));
        assert_eq!(m.rows(), 8);
        for x in 0..8 {
            assert_eq!(m.column(x), &[f.eval(x, 0) as usize]);
        }
    }

    #[test]
    fn random_graph_column_weights() {
        let f = random_function(5, 2, 2, 4).unwrap();
        let m = codeword_graph_matrix(&induced_code(&f));
        assert_eq!(m.rows(), 16);
        assert!(m.column_weights().iter().all(|&w| w == 4));
        assert_eq!(m.ones(), 4 * 32);
        // one symbol per coordinate block
        for x in 0..32 {
            let blocks: Vec<usize> = m.column(x).iter().map(|r| r / 4).collect();
            assert_eq!(blocks, vec![0, 1, 2, 3]);
        }
    }

    #[test]
    fn invalid_codes_rejected() {
        assert!(InducedCode::new(0, 2, vec![]).is_err());
        assert!(InducedCode::new(2, 1, vec![0, 0]).is_err());
        assert!(InducedCode::new(2, 2, vec![0, 0, 1]).is_err());
        assert!(InducedCode::new(2, 2, vec![0, 2]).is_err());
    }
}
