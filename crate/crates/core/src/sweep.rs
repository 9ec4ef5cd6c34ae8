//! Monte Carlo sweeps over noise budgets: sample a sparse support, encode,
//! corrupt at random within the budget, decode, and record one CSV row per
//! trial.

use std::io::Write;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::condense::{PlannedScheme, SchemeParams};
use crate::decode::threshold_decode;
use crate::error::{Error, Result};
use crate::gtcore::{encode, BitMatrix, NoiseBudget, SupportSet};
use crate::noise::corrupt_random;
use crate::rng::{derive_seed, rng_from};
use crate::scalar::Frac;

/// Where the measurement matrix and its decoder settings come from.
#[derive(Debug, Clone)]
pub enum MatrixSource {
    /// A planned bundle, realized from its own table seed.
    Planned {
        params: SchemeParams,
        table_seed: u64,
    },
    /// An explicit matrix with uniform column weight `block_length`.
    Given {
        matrix: BitMatrix,
        block_length: u64,
        nu_over_gamma: Frac,
        list_cap: u64,
    },
}

/// One point of the noise grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridPoint {
    Budget(NoiseBudget),
    /// Converted to `(⌊p·M⌋, ⌊ν·M/D⌋)`.
    Rates {
        p: Frac,
        nu: Frac,
    },
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub source: MatrixSource,
    pub sparsity: usize,
    pub trials: u64,
    pub seed: u64,
    pub grid: Vec<GridPoint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    /// Global trial number; grid point `g` owns trials `g·trials ..`.
    pub trial: u64,
    pub e0_applied: usize,
    pub e1_applied: usize,
    pub decoded_weight: usize,
    pub false_pos: usize,
    pub false_neg: usize,
    pub success: bool,
}

pub const CSV_HEADER: [&str; 7] = [
    "trial",
    "e0_applied",
    "e1_applied",
    "decoded_weight",
    "false_pos",
    "false_neg",
    "success",
];

struct Prepared {
    matrix: BitMatrix,
    block_length: u64,
    nu_over_gamma: Frac,
    list_cap: u64,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid.is_empty() {
            return Err(Error::InvalidParameter("noise grid is empty".into()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if self.sparsity == 0
            && self
                .grid
                .iter()
                .any(|g| matches!(g, GridPoint::Rates { .. }))
        {
            return Err(Error::InvalidParameter(
                "rate grid points need sparsity ≥ 1".into(),
            ));
        }
        Ok(())
    }

    fn prepare(&self) -> Result<Prepared> {
        let prepared = match &self.source {
            MatrixSource::Planned { params, table_seed } => {
                let scheme = PlannedScheme::realize(params.clone(), *table_seed)?;
                Prepared {
                    block_length: params.block_length(),
                    nu_over_gamma: params.nu_over_gamma(),
                    list_cap: params.list_cap(),
                    matrix: scheme.matrix,
                }
            }
            MatrixSource::Given {
                matrix,
                block_length,
                nu_over_gamma,
                list_cap,
            } => Prepared {
                matrix: matrix.clone(),
                block_length: *block_length,
                nu_over_gamma: *nu_over_gamma,
                list_cap: *list_cap,
            },
        };
        if self.sparsity > prepared.matrix.cols() {
            return Err(Error::InvalidParameter(format!(
                "sparsity {} exceeds universe {}",
                self.sparsity,
                prepared.matrix.cols()
            )));
        }
        Ok(prepared)
    }
}

/// Integer flip budget for a grid point on a matrix with `rows` rows.
pub fn grid_budget(point: GridPoint, rows: usize, sparsity: usize) -> NoiseBudget {
    match point {
        GridPoint::Budget(b) => b,
        GridPoint::Rates { p, nu } => {
            let m = rows as u64;
            let e0 = (p * Frac::from_integer(m)).floor().to_integer();
            let e1 = (nu * Frac::new(m, sparsity as u64)).floor().to_integer();
            NoiseBudget::new(
                e0.to_usize().unwrap_or(usize::MAX),
                e1.to_usize().unwrap_or(usize::MAX),
            )
        }
    }
}

/// Runs every trial of every grid point. Trials run in parallel; rows come
/// back in grid order and, within a grid point, in trial order.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let prep = cfg.prepare()?;
    let mut rows = Vec::with_capacity(cfg.grid.len() * cfg.trials as usize);
    for (g, &point) in cfg.grid.iter().enumerate() {
        let budget = grid_budget(point, prep.matrix.rows(), cfg.sparsity);
        let first = g as u64 * cfg.trials;
        let chunk: Result<Vec<SweepRow>> = (first..first + cfg.trials)
            .into_par_iter()
            .map(|trial| {
                run_trial(
                    &prep,
                    cfg.sparsity,
                    budget,
                    derive_seed(cfg.seed, trial),
                    trial,
                )
            })
            .collect();
        rows.extend(chunk?);
    }
    Ok(rows)
}

fn run_trial(
    prep: &Prepared,
    sparsity: usize,
    budget: NoiseBudget,
    seed: u64,
    trial: u64,
) -> Result<SweepRow> {
    let mut rng = rng_from(seed);
    let x = SupportSet::random(prep.matrix.cols(), sparsity, &mut rng)?;
    let y = encode(&prep.matrix, &x)?;
    let noisy = corrupt_random(&y, budget, derive_seed(seed, 1));
    let decoded = threshold_decode(
        &prep.matrix,
        &noisy.output,
        prep.block_length,
        prep.nu_over_gamma,
    )?;
    let false_pos = decoded.support.difference_count(&x);
    let false_neg = x.difference_count(&decoded.support);
    let weight = decoded.support.weight();
    Ok(SweepRow {
        trial,
        e0_applied: noisy.applied.e0,
        e1_applied: noisy.applied.e1,
        decoded_weight: weight,
        false_pos,
        false_neg,
        success: false_neg == 0 && (weight as u64) < prep.list_cap,
    })
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.trial.to_string(),
            r.e0_applied.to_string(),
            r.e1_applied.to_string(),
            r.decoded_weight.to_string(),
            r.false_pos.to_string(),
            r.false_neg.to_string(),
            u8::from(r.success).to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn sweep_to_csv_string(rows: &[SweepRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}
