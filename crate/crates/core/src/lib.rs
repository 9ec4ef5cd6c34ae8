//! Non-adaptive group testing with noise-resilient threshold decoding.
//!
//! Measurement matrices come from condensers written out as explicit
//! function tables: each universe element `x` gets the codeword
//! `(f(x, 0), …, f(x, L−1))` and the matrix is the codeword graph of that
//! code. Decoding keeps every column that agrees with enough of the
//! observed positive tests.

pub mod analysis;
pub mod combinatorics;
pub mod condense;
pub mod decode;
pub mod error;
pub mod gtcore;
pub mod mixtures;
pub mod noise;
pub mod rng;
pub mod scalar;
pub mod sweep;

pub use error::{Error, Result};
pub use gtcore::{encode, is_close, AccuracyBudget, BitMatrix, BitVec, NoiseBudget, SupportSet};
pub use scalar::{BigFrac, Frac, Real};

/// Closed-form extractor recipe evaluated in double precision.
pub type ExtractorRecipe64 = scalar::ExtractorRecipe<f64>;
/// Closed-form extractor recipe evaluated in single precision.
pub type ExtractorRecipe32 = scalar::ExtractorRecipe<f32>;
