use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::volume::{hamming_volume, log2_big, volume_clamped};
use crate::error::{Error, Result};
use crate::scalar::{counting_closed_form, BigFrac, Frac};

/// A computed bound, exact where possible.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundValue {
    Integer(BigInt),
    Rational(BigFrac),
    Real(f64),
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Integer(v) => write!(f, "{v}"),
            BoundValue::Rational(v) => write!(f, "{v}"),
            BoundValue::Real(v) => write!(f, "{v}"),
        }
    }
}

/// Outcome of evaluating one inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub bound_name: &'static str,
    pub inputs: Vec<(&'static str, String)>,
    pub computed_bound: BoundValue,
    pub satisfied: bool,
    /// Further labelled values (disjunct outcomes, alternate forms).
    pub extra: Vec<(&'static str, String)>,
}

impl BoundReport {
    /// `key=value` lines, prefixed with the bound name.
    pub fn to_kv_lines(&self) -> String {
        let mut out = String::new();
        let name = self.bound_name;
        for (k, v) in &self.inputs {
            out.push_str(&format!("{name}.{k}={v}\n"));
        }
        out.push_str(&format!("{name}.bound={}\n", self.computed_bound));
        for (k, v) in &self.extra {
            out.push_str(&format!("{name}.{k}={v}\n"));
        }
        out.push_str(&format!("{name}.satisfied={}\n", self.satisfied));
        out
    }
}

fn big(v: usize) -> BigInt {
    BigInt::from(v)
}

/// `(max(e0, e1) + 1) / (e0p + e1p + 1) ≤ m / d`, checked by
/// cross-multiplication. The reported bound is the least admissible `m`
/// as a rational, `d·(max(e0,e1)+1)/(e0p+e1p+1)`.
pub fn lemma1_check(
    m: usize,
    d: usize,
    e0: usize,
    e1: usize,
    e0p: usize,
    e1p: usize,
) -> Result<BoundReport> {
    if m == 0 || d == 0 {
        return Err(Error::InvalidParameter("m and d must be positive".into()));
    }
    let lhs_num = big(e0.max(e1) + 1);
    let lhs_den = big(e0p + e1p + 1);
    let satisfied = &lhs_num * big(d) <= big(m) * &lhs_den;
    Ok(BoundReport {
        bound_name: "lemma1",
        inputs: vec![
            ("m", m.to_string()),
            ("d", d.to_string()),
            ("e0", e0.to_string()),
            ("e1", e1.to_string()),
            ("e0p", e0p.to_string()),
            ("e1p", e1p.to_string()),
        ],
        computed_bound: BoundValue::Rational(BigFrac::new(lhs_num * big(d), lhs_den)),
        satisfied,
        extra: vec![],
    })
}

/// The integral form the chain argument establishes:
/// `⌊d / (e0p + e1p + 1)⌋ · (max(e0, e1) + 1) ≤ m`. It agrees with
/// [`lemma1_check`] when `e0p + e1p + 1` divides `d`, and is strictly weaker
/// otherwise; when `e0p + e1p ≥ d` it holds for every `m`.
pub fn lemma1_chain_check(
    m: usize,
    d: usize,
    e0: usize,
    e1: usize,
    e0p: usize,
    e1p: usize,
) -> Result<BoundReport> {
    if m == 0 || d == 0 {
        return Err(Error::InvalidParameter("m and d must be positive".into()));
    }
    let steps = d / (e0p + e1p + 1);
    let needed = steps * (e0.max(e1) + 1);
    Ok(BoundReport {
        bound_name: "lemma1_chain",
        inputs: vec![
            ("m", m.to_string()),
            ("d", d.to_string()),
            ("e0", e0.to_string()),
            ("e1", e1.to_string()),
            ("e0p", e0p.to_string()),
            ("e1p", e1p.to_string()),
        ],
        computed_bound: BoundValue::Integer(big(needed)),
        satisfied: needed <= m,
        extra: vec![("chain_steps", steps.to_string())],
    })
}

/// Which of the two alternatives hold: `e1 < (e1p+1)·m/(ε·d)` or
/// `e0p ≥ (1−ε)(n−d+1)/(e1p+1)²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lemma2Outcome {
    pub few_false_negatives: bool,
    pub many_false_positives: bool,
}

impl Lemma2Outcome {
    pub fn any(self) -> bool {
        self.few_false_negatives || self.many_false_positives
    }

    /// Name of the first alternative that holds, or `none`.
    pub fn binding(self) -> &'static str {
        if self.few_false_negatives {
            "first"
        } else if self.many_false_positives {
            "second"
        } else {
            "none"
        }
    }
}

#[allow(clippy::too_many_arguments)]
pub fn lemma2_outcome(
    m: usize,
    d: usize,
    n: usize,
    e1: usize,
    e0p: usize,
    e1p: usize,
    eps: &BigFrac,
) -> Result<Lemma2Outcome> {
    if eps <= &BigFrac::zero() {
        return Err(Error::InvalidParameter(format!(
            "eps = {eps} must be positive"
        )));
    }
    if m == 0 || d == 0 || d > n {
        return Err(Error::InvalidParameter("need m ≥ 1 and 1 ≤ d ≤ n".into()));
    }
    let first_bound = BigFrac::from(big((e1p + 1) * m)) / (eps * BigFrac::from(big(d)));
    let second_bound = second_bound(n, d, e1p, eps);
    Ok(Lemma2Outcome {
        few_false_negatives: BigFrac::from(big(e1)) < first_bound,
        many_false_positives: BigFrac::from(big(e0p)) >= second_bound,
    })
}

fn second_bound(n: usize, d: usize, e1p: usize, eps: &BigFrac) -> BigFrac {
    let sq = big((e1p + 1) * (e1p + 1));
    (BigFrac::one() - eps) * BigFrac::from(big(n - d + 1)) / BigFrac::from(sq)
}

/// Evaluates both alternatives exactly; `satisfied` means at least one
/// holds. The reported bound is the threshold `(e1p+1)·m/(ε·d)` on `e1`.
#[allow(clippy::too_many_arguments)]
pub fn lemma2_check(
    m: usize,
    d: usize,
    n: usize,
    e1: usize,
    e0p: usize,
    e1p: usize,
    eps: Frac,
) -> Result<BoundReport> {
    let eps_big = crate::scalar::to_big(&eps);
    let outcome = lemma2_outcome(m, d, n, e1, e0p, e1p, &eps_big)?;
    let first_bound = BigFrac::from(big((e1p + 1) * m)) / (&eps_big * BigFrac::from(big(d)));
    Ok(BoundReport {
        bound_name: "lemma2",
        inputs: vec![
            ("m", m.to_string()),
            ("d", d.to_string()),
            ("n", n.to_string()),
            ("e1", e1.to_string()),
            ("e0p", e0p.to_string()),
            ("e1p", e1p.to_string()),
            ("eps", eps.to_string()),
        ],
        computed_bound: BoundValue::Rational(first_bound),
        satisfied: outcome.any(),
        extra: vec![
            ("first_holds", outcome.few_false_negatives.to_string()),
            (
                "second_bound",
                second_bound(n, d, e1p, &eps_big).to_string(),
            ),
            ("second_holds", outcome.many_false_positives.to_string()),
            ("binding", outcome.binding().to_string()),
        ],
    })
}

/// The counting lower bound on rows for noiseless approximate recovery.
#[derive(Debug, Clone, PartialEq)]
pub struct Lemma3Report {
    /// Smallest integer `m` with `2^m · v ≥ |B|`.
    pub exact: i64,
    /// `d·log2(n/d) − d − e0p`, with the `e1p` term taken as zero.
    pub closed_form: f64,
    /// `|B| = V(n, d)`, the number of `d`-sparse vectors.
    pub sparse_count: BigUint,
    /// Largest number of `d`-sparse vectors a single output can match.
    pub matching_count: BigUint,
}

impl Lemma3Report {
    pub fn to_report(&self, n: u64, d: u64, e0p: u64, e1p: u64) -> BoundReport {
        BoundReport {
            bound_name: "lemma3",
            inputs: vec![
                ("n", n.to_string()),
                ("d", d.to_string()),
                ("e0p", e0p.to_string()),
                ("e1p", e1p.to_string()),
            ],
            computed_bound: BoundValue::Integer(BigInt::from(self.exact)),
            satisfied: true,
            extra: vec![
                ("closed_form", format!("{:.6}", self.closed_form)),
                (
                    "log2_sparse_count",
                    format!("{:.6}", log2_big(&self.sparse_count)),
                ),
                (
                    "log2_matching_count",
                    format!("{:.6}", log2_big(&self.matching_count)),
                ),
            ],
        }
    }

    /// True if a matrix with `rows` rows is allowed by the exact bound.
    pub fn admits(&self, rows: usize) -> bool {
        rows as i64 >= self.exact
    }
}

/// Exact form: an output `x` of weight `w ≤ d + e0p` can be matched by
/// `V(w, e0p) · V(n − w, e1p)` sparse vectors; the bound uses the largest
/// such count, so `m ≥ ⌈log2 |B| − log2 v⌉`.
pub fn lemma3_bound(n: u64, d: u64, e0p: u64, e1p: u64) -> Result<Lemma3Report> {
    if d > n {
        return Err(Error::InvalidParameter(format!("d = {d} exceeds n = {n}")));
    }
    let sparse_count = hamming_volume(n, d)?;
    let top = (d + e0p).min(n);
    let matching_count = (0..=top)
        .map(|w| volume_clamped(w, e0p) * volume_clamped(n - w, e1p))
        .max()
        .expect("nonempty range");
    Ok(Lemma3Report {
        exact: smallest_exponent(&sparse_count, &matching_count),
        closed_form: if d == 0 {
            -(e0p as f64)
        } else {
            counting_closed_form(n, d, e0p)
        },
        sparse_count,
        matching_count,
    })
}

/// Smallest integer `m` (possibly negative) with `2^m · v ≥ b`.
fn smallest_exponent(b: &BigUint, v: &BigUint) -> i64 {
    if v >= b {
        // largest s ≥ 0 with b·2^s ≤ v
        let mut s = (v.bits() as i64 - b.bits() as i64).max(0);
        while s > 0 && (b << s as u64) > *v {
            s -= 1;
        }
        while (b << (s + 1) as u64) <= *v {
            s += 1;
        }
        -s
    } else {
        let mut m = (b.bits() as i64 - v.bits() as i64 - 1).max(0);
        while (v << m as u64) < *b {
            m += 1;
        }
        while m > 0 && (v << (m - 1) as u64) >= *b {
            m -= 1;
        }
        m
    }
}
