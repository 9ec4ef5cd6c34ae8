//! Measurement-matrix constructions: condensers as explicit function tables,
//! their induced codes and codeword graphs, the Kautz–Singleton design, the
//! parameter planner and an empirical expansion check.

mod code;
mod expansion;
mod field;
mod planner;
mod table;

pub use code::{codeword_graph_matrix, induced_code, InducedCode};
pub use expansion::{
    sampled_expansion_check, sampled_expansion_check_with, ExpansionReport, DEFAULT_EXHAUSTIVE_CAP,
};
pub use field::{
    kautz_singleton_matrix, prime_power, reed_solomon_code, FiniteField, MAX_FIELD_ORDER,
};
pub use planner::{
    plan_extractor_style, plan_extractor_style_with, plan_lossless_style, plan_lossless_style_with,
    slack_f64, PlanOptions, PlanStyle, SchemeParams,
};
pub use table::{
    random_function, random_function_with_budget, FunctionTable, DEFAULT_TABLE_BUDGET,
};

pub use crate::scalar::nu0;

use crate::error::Result;
use crate::gtcore::BitMatrix;

/// A planned scheme realized by a random function table.
#[derive(Debug, Clone)]
pub struct PlannedScheme {
    pub params: SchemeParams,
    pub table: FunctionTable,
    pub code: InducedCode,
    pub matrix: BitMatrix,
}

impl PlannedScheme {
    /// Draws the condenser table for `params` from `seed`.
    pub fn realize(params: SchemeParams, seed: u64) -> Result<Self> {
        params.validate()?;
        let table = random_function(params.n, params.t, params.l, seed)?;
        let code = induced_code(&table);
        let matrix = codeword_graph_matrix(&code);
        Ok(PlannedScheme {
            params,
            table,
            code,
            matrix,
        })
    }
}
