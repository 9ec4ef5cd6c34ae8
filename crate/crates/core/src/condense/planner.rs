//! Parameter planner for condenser-based measurement matrices.
//!
//! A [`SchemeParams`] bundle fixes the condenser shape (`n`, `t`, `ℓ`), its
//! entropy parameters (`k`, `k'`, `ε`), the sparsity `D` and the noise
//! fractions `p` (false positives) and `ν` (false negatives). Every bundle the
//! planner returns satisfies
//!
//! ```text
//! (p + γ)·L/K' + ν/γ < 1 − ε,    γ = D/L
//! ```
//!
//! as an exact rational inequality, with `N, T, L, K, K'` all powers of two.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::DEFAULT_TABLE_BUDGET;
use crate::error::{Error, Result};
use crate::scalar::{grid_floor_below, largest_dyadic_below, nu0, to_big, BigFrac, Frac};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanStyle {
    /// Zero overhead: `k' = ℓ`.
    Extractor,
    /// Zero entropy loss: `k' = k`.
    Lossless,
}

impl fmt::Display for PlanStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PlanStyle::Extractor => "extractor",
            PlanStyle::Lossless => "lossless",
        })
    }
}

/// Full parameter bundle of a condenser-based scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeParams {
    pub style: PlanStyle,
    /// Input bits; `N = 2^n` columns.
    pub n: u32,
    /// Seed bits; `T = 2^t` coordinates.
    pub t: u32,
    /// Output bits; `L = 2^ℓ` symbols.
    pub l: u32,
    pub k: u32,
    pub k_prime: u32,
    pub eps: Frac,
    pub p: Frac,
    pub nu: Frac,
    /// Sparsity `D`.
    pub sparsity: u64,
}

impl SchemeParams {
    pub fn universe(&self) -> u64 {
        1 << self.n
    }

    pub fn block_length(&self) -> u64 {
        1 << self.t
    }

    pub fn alphabet(&self) -> u64 {
        1 << self.l
    }

    /// `K = 2^k`, the cap on the decoder's output weight.
    pub fn list_cap(&self) -> u64 {
        1 << self.k
    }

    pub fn k_prime_size(&self) -> u64 {
        1 << self.k_prime
    }

    /// `M = T·L`.
    pub fn rows(&self) -> u64 {
        self.block_length() * self.alphabet()
    }

    /// `γ = D/L`.
    pub fn gamma(&self) -> Frac {
        Frac::new(self.sparsity, self.alphabet())
    }

    /// `ν/γ = ν·L/D`.
    pub fn nu_over_gamma(&self) -> Frac {
        self.nu * Frac::new(self.alphabet(), self.sparsity)
    }

    /// `⌊p·M⌋` false positives tolerated in the measurements.
    pub fn fp_budget(&self) -> usize {
        (self.p * Frac::from_integer(self.rows()))
            .floor()
            .to_integer() as usize
    }

    /// `⌊ν·M/D⌋` false negatives tolerated in the measurements.
    pub fn fn_budget(&self) -> usize {
        (self.nu * Frac::new(self.rows(), self.sparsity))
            .floor()
            .to_integer() as usize
    }

    /// `(p + γ)·L/K' + ν/γ`.
    pub fn feasibility_lhs(&self) -> BigFrac {
        let big = |v: u64| BigRational::from_integer(BigInt::from(v));
        (to_big(&self.p) + to_big(&self.gamma())) * big(self.alphabet()) / big(self.k_prime_size())
            + to_big(&self.nu_over_gamma())
    }

    /// `1 − ε`.
    pub fn feasibility_rhs(&self) -> BigFrac {
        BigRational::one() - to_big(&self.eps)
    }

    pub fn is_feasible(&self) -> bool {
        self.feasibility_lhs() < self.feasibility_rhs()
    }

    /// Checks the structural invariants and the feasibility inequality.
    pub fn validate(&self) -> Result<()> {
        if self.sparsity == 0 {
            return Err(Error::InvalidParameter("sparsity must be positive".into()));
        }
        if self.l == 0
            || self.l > 31
            || self.n > 62
            || self.t > 62
            || self.k > 62
            || self.k_prime > 62
        {
            return Err(Error::InvalidParameter("bit widths out of range".into()));
        }
        if self.eps.is_zero() || self.eps >= Frac::one() {
            return Err(Error::InvalidParameter("eps must lie in (0, 1)".into()));
        }
        if self.p >= Frac::one() {
            return Err(Error::InvalidParameter("p must lie in [0, 1)".into()));
        }
        if !self.is_feasible() {
            return Err(Error::Infeasible(format!(
                "(p + γ)L/K' + ν/γ = {} is not below 1 − ε = {}",
                self.feasibility_lhs(),
                self.feasibility_rhs()
            )));
        }
        Ok(())
    }

    /// `key=value` lines, one per parameter.
    pub fn to_kv_lines(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: String| {
            out.push_str(k);
            out.push('=');
            out.push_str(&v);
            out.push('\n');
        };
        kv("style", self.style.to_string());
        kv("n", self.n.to_string());
        kv("t", self.t.to_string());
        kv("l", self.l.to_string());
        kv("k", self.k.to_string());
        kv("k_prime", self.k_prime.to_string());
        kv("eps", self.eps.to_string());
        kv("p", self.p.to_string());
        kv("nu", self.nu.to_string());
        kv("gamma", self.gamma().to_string());
        kv("D", self.sparsity.to_string());
        kv("N", self.universe().to_string());
        kv("T", self.block_length().to_string());
        kv("L", self.alphabet().to_string());
        kv("K", self.list_cap().to_string());
        kv("K_prime", self.k_prime_size().to_string());
        kv("M", self.rows().to_string());
        kv("nu_over_gamma", self.nu_over_gamma().to_string());
        kv("e0_budget", self.fp_budget().to_string());
        kv("e1_budget", self.fn_budget().to_string());
        kv("lhs", self.feasibility_lhs().to_string());
        kv("rhs", self.feasibility_rhs().to_string());
        kv("feasible", self.is_feasible().to_string());
        out
    }
}

/// Knobs not fixed by the recipes.
#[derive(Debug, Clone)]
pub struct PlanOptions {
    /// Override for the seed length `t`. The default is a heuristic:
    /// `⌈log2 n⌉ + 2⌈log2(1/ε)⌉ + 2` for extractors and
    /// `⌈log2 n⌉ + ⌈log2(1/ε)⌉ + 2` for lossless condensers.
    pub t_bits: Option<u32>,
    /// Maximum table size `2^(n+t)`.
    pub table_budget: u128,
    /// γ used by the extractor recipe when `ν = 0`.
    pub default_gamma: Frac,
    /// `log2(L/K)` for the lossless recipe.
    pub lossless_overhead: u32,
    /// Lossless `p`, `ν` are multiples of `2^-grid_bits`.
    pub grid_bits: u32,
}

impl Default for PlanOptions {
    fn default() -> Self {
        PlanOptions {
            t_bits: None,
            table_budget: DEFAULT_TABLE_BUDGET,
            default_gamma: Frac::new(1, 4),
            lossless_overhead: 1,
            grid_bits: 16,
        }
    }
}

fn ceil_log2(v: u64) -> u32 {
    if v <= 1 {
        0
    } else {
        64 - (v - 1).leading_zeros()
    }
}

/// Smallest `j` with `2^j · x ≥ 1`, for `0 < x ≤ 1`.
fn ceil_log2_inverse(x: &Frac) -> u32 {
    let mut j = 0;
    while Frac::from_integer(1u64 << j) * x < Frac::one() {
        j += 1;
    }
    j
}

fn check_common(sparsity: u64, universe: u64) -> Result<u32> {
    if sparsity == 0 {
        return Err(Error::InvalidParameter(
            "sparsity D must be at least 1".into(),
        ));
    }
    if universe < sparsity {
        return Err(Error::InvalidParameter(format!(
            "universe N = {universe} smaller than sparsity D = {sparsity}"
        )));
    }
    Ok(ceil_log2(universe).max(1))
}

fn check_budget(n: u32, t: u32, budget: u128) -> Result<()> {
    let entries = 1u128.checked_shl(n + t).unwrap_or(u128::MAX);
    if n + t >= 127 || entries > budget {
        return Err(Error::BudgetExceeded { entries, budget });
    }
    Ok(())
}

pub fn plan_extractor_style(
    sparsity: u64,
    universe: u64,
    p: Frac,
    nu: Frac,
) -> Result<SchemeParams> {
    plan_extractor_style_with(sparsity, universe, p, nu, &PlanOptions::default())
}

/// Extractor recipe: `γ = ∛ν` (or the default when `ν = 0`), `L` the
/// smallest power of two with `L ≥ D/γ`, then `γ := D/L`, `ε` the largest
/// `2^-j` below `1 − p − γ − ν/γ`, `k = ℓ + 2j` (capped at `n`), `k' = ℓ`.
pub fn plan_extractor_style_with(
    sparsity: u64,
    universe: u64,
    p: Frac,
    nu: Frac,
    opts: &PlanOptions,
) -> Result<SchemeParams> {
    let n = check_common(sparsity, universe)?;
    if p >= Frac::one() {
        return Err(Error::InvalidParameter(format!(
            "p = {p} must lie in [0, 1)"
        )));
    }
    let p_f = *p.numer() as f64 / *p.denom() as f64;
    let nu_f = *nu.numer() as f64 / *nu.denom() as f64;
    let ceiling = nu0(p_f)?;
    if nu_f >= ceiling {
        return Err(Error::Infeasible(format!(
            "nu = {nu} is not below nu0(p) = {ceiling:.6}"
        )));
    }

    let d_big = BigInt::from(sparsity);
    // smallest power of two L ≥ 2 with L·γ ≥ D
    let mut l_bits = 1u32;
    loop {
        let size = BigInt::one() << l_bits;
        let enough = if nu.is_zero() {
            BigRational::from_integer(size) * to_big(&opts.default_gamma)
                >= BigRational::from_integer(d_big.clone())
        } else {
            // γ = ∛ν, so L·γ ≥ D  ⇔  L³·ν ≥ D³
            BigRational::from_integer(size.pow(3u32)) * to_big(&nu)
                >= BigRational::from_integer(d_big.pow(3u32))
        };
        if enough {
            break;
        }
        l_bits += 1;
        if l_bits > 31 {
            return Err(Error::Infeasible(
                "alphabet would exceed 2^31 symbols".into(),
            ));
        }
    }

    let mut params = SchemeParams {
        style: PlanStyle::Extractor,
        n,
        t: 0,
        l: l_bits,
        k: 0,
        k_prime: l_bits,
        eps: Frac::new(1, 2),
        p,
        nu,
        sparsity,
    };
    let slack =
        BigRational::one() - to_big(&p) - to_big(&params.gamma()) - to_big(&params.nu_over_gamma());
    let (j, eps) = largest_dyadic_below(&slack).ok_or_else(|| {
        Error::Infeasible(format!(
            "after rounding L = {}, 1 − p − γ − ν/γ = {slack} leaves no room for ε",
            params.alphabet()
        ))
    })?;
    params.eps = eps;
    params.k = (l_bits + 2 * j).min(n);
    params.t = opts.t_bits.unwrap_or(ceil_log2(u64::from(n)) + 2 * j + 2);
    check_budget(params.n, params.t, opts.table_budget)?;
    params.validate()?;
    Ok(params)
}

pub fn plan_lossless_style(sparsity: u64, universe: u64, delta: Frac) -> Result<SchemeParams> {
    plan_lossless_style_with(sparsity, universe, delta, &PlanOptions::default())
}

/// Lossless recipe: `K` the largest power of two in `(D, (1+δ)D]` (so the
/// reconstruction carries at most `K − D ≤ δD` false positives),
/// `ε = (K − D)/(2K)`, `L = 2^overhead · K`, `k' = k`, and `p`, `ν` the
/// largest grid values splitting the slack of the feasibility inequality
/// evenly.
pub fn plan_lossless_style_with(
    sparsity: u64,
    universe: u64,
    delta: Frac,
    opts: &PlanOptions,
) -> Result<SchemeParams> {
    let n = check_common(sparsity, universe)?;
    if delta.is_zero() {
        return Err(Error::InvalidParameter("delta must be positive".into()));
    }
    let cap = (Frac::one() + delta) * Frac::from_integer(sparsity);
    let cap = cap.floor().to_integer().min(1u64 << n);
    if cap <= sparsity {
        return Err(Error::Infeasible(format!(
            "no power of two K with D = {sparsity} < K ≤ min((1 + δ)D, N)"
        )));
    }
    let k = 63 - cap.leading_zeros();
    let k_size = 1u64 << k;
    if k_size <= sparsity {
        return Err(Error::Infeasible(format!(
            "no power of two K with D = {sparsity} < K ≤ (1 + δ)D = {cap}"
        )));
    }
    let eps = Frac::new(k_size - sparsity, 2 * k_size);
    let l = k + opts.lossless_overhead;
    if l == 0 || l > 31 {
        return Err(Error::Infeasible(format!(
            "alphabet width {l} out of range"
        )));
    }
    let mut params = SchemeParams {
        style: PlanStyle::Lossless,
        n,
        t: 0,
        l,
        k,
        k_prime: k,
        eps,
        p: Frac::zero(),
        nu: Frac::zero(),
        sparsity,
    };
    let big = |v: u64| BigRational::from_integer(BigInt::from(v));
    // slack = 1 − ε − γ·L/K'
    let slack = BigRational::one() - to_big(&eps) - big(sparsity) / big(k_size);
    let half = &slack / big(2);
    // p·L/K < slack/2 and ν/γ < slack/2
    params.p = grid_floor_below(
        &(&half * big(k_size) / big(params.alphabet())),
        opts.grid_bits,
    );
    params.nu = grid_floor_below(&(&half * to_big(&params.gamma())), opts.grid_bits);
    params.t = opts
        .t_bits
        .unwrap_or(ceil_log2(u64::from(n)) + ceil_log2_inverse(&eps) + 2);
    check_budget(params.n, params.t, opts.table_budget)?;
    params.validate()?;
    Ok(params)
}

/// Approximate real value of a bundle's slack `1 − ε − lhs`, for display.
pub fn slack_f64(params: &SchemeParams) -> f64 {
    let s = params.feasibility_rhs() - params.feasibility_lhs();
    s.numer().to_f64().unwrap_or(f64::NAN) / s.denom().to_f64().unwrap_or(f64::NAN)
}
