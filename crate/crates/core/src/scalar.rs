//! Scalar plumbing: the floating-point trait used by closed-form bounds and
//! the exact rational type used for every threshold comparison.
//!
//! Closed-form expressions (ν0, binary entropy, the counting lower bound's
//! display value, the extractor recipe) are generic over [`Real`], so they can
//! be evaluated in `f32` or `f64`. Anything that decides membership in a
//! decoded set or checks a feasibility inequality goes through [`Frac`] or
//! [`BigFrac`] instead and never touches floats.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Float, FromPrimitive, One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Floating-point scalar: `f32` or `f64`.
pub trait Real: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in every Real")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Exact non-negative fraction.
pub type Frac = Ratio<u64>;

/// Arbitrary-precision fraction, used where products of parameters could
/// overflow 64 bits.
pub type BigFrac = BigRational;

pub fn to_big(f: &Frac) -> BigFrac {
    BigRational::new(BigInt::from(*f.numer()), BigInt::from(*f.denom()))
}

pub fn frac_to_real<F: Real>(f: &Frac) -> F {
    F::from_u64(*f.numer()).unwrap() / F::from_u64(*f.denom()).unwrap()
}

pub fn big_to_f64(f: &BigFrac) -> f64 {
    f.numer().to_f64().unwrap_or(f64::NAN) / f.denom().to_f64().unwrap_or(f64::NAN)
}

/// Parses `"3/8"`, `"0.125"`, or `"2"` into an exact fraction.
pub fn parse_frac(s: &str) -> Result<Frac> {
    let s = s.trim();
    let bad = || Error::InvalidParameter(format!("not a non-negative fraction: {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let num: u64 = num.trim().parse().map_err(|_| bad())?;
        let den: u64 = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        return Ok(Frac::new(num, den));
    }
    let (int_part, frac_part) = s.split_once('.').unwrap_or((s, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    if frac_part.len() > 18 {
        return Err(bad());
    }
    let den = 10u64.pow(frac_part.len() as u32);
    let int: u64 = if int_part.is_empty() {
        0
    } else {
        int_part.parse().map_err(|_| bad())?
    };
    let fr: u64 = if frac_part.is_empty() {
        0
    } else {
        frac_part.parse().map_err(|_| bad())?
    };
    let num = int
        .checked_mul(den)
        .and_then(|v| v.checked_add(fr))
        .ok_or_else(bad)?;
    Ok(Frac::new(num, den))
}

/// Largest `1/2^j` (j ≥ 1) strictly below `bound`, or `None` if `bound` is
/// not positive.
pub fn largest_dyadic_below(bound: &BigFrac) -> Option<(u32, Frac)> {
    if !bound.is_positive_frac() {
        return None;
    }
    let mut j = 1u32;
    loop {
        let cand = BigRational::new(BigInt::one(), BigInt::one() << j);
        if &cand < bound {
            return Some((j, Frac::new(1, 1u64 << j)));
        }
        j += 1;
        if j >= 63 {
            return None;
        }
    }
}

/// Largest multiple of `1/2^bits` strictly below `bound` (clamped at zero).
pub fn grid_floor_below(bound: &BigFrac, bits: u32) -> Frac {
    if !bound.is_positive_frac() {
        return Frac::zero();
    }
    let scale = BigInt::one() << bits;
    let scaled = bound * BigRational::from_integer(scale.clone());
    // strictly below: ceil(scaled) - 1
    let top = scaled.ceil().to_integer() - BigInt::one();
    let top = top.to_u64().unwrap_or(0);
    Frac::new(top, 1u64 << bits)
}

trait PositiveFrac {
    fn is_positive_frac(&self) -> bool;
}

impl PositiveFrac for BigFrac {
    fn is_positive_frac(&self) -> bool {
        self > &BigRational::zero()
    }
}

/// ν0(p) = (√(5 − 4p) − 1)³ / 8, the noise ceiling of the extractor
/// instantiation. Defined on `[0, 1]`; the right endpoint is the limit value 0.
pub fn nu0<F: Real>(p: F) -> Result<F> {
    if !(p >= F::zero() && p <= F::one()) {
        return Err(Error::InvalidParameter(format!("p = {p} outside [0, 1]")));
    }
    let root = (F::lit(5.0) - F::lit(4.0) * p).sqrt() - F::one();
    Ok(root * root * root / F::lit(8.0))
}

/// Binary entropy h(x) in bits, with h(0) = h(1) = 0.
pub fn binary_entropy<F: Real>(x: F) -> F {
    if x <= F::zero() || x >= F::one() {
        return F::zero();
    }
    let y = F::one() - x;
    -(x * x.log2() + y * y.log2())
}

/// a·h(b/a): the entropy upper bound on log2 V(a, b).
pub fn hamming_volume_log2_bound<F: Real>(a: u64, b: u64) -> F {
    if a == 0 {
        return F::zero();
    }
    let a_f = F::from_u64(a).unwrap();
    a_f * binary_entropy(F::from_u64(b).unwrap() / a_f)
}

/// d·log2(n/d) − d − e'0: the closed-form measurement lower bound for
/// noiseless schemes with no reconstruction false negatives.
pub fn counting_closed_form<F: Real>(n: u64, d: u64, e0p: u64) -> F {
    if d == 0 {
        return -F::from_u64(e0p).unwrap();
    }
    let n_f = F::from_u64(n).unwrap();
    let d_f = F::from_u64(d).unwrap();
    d_f * (n_f / d_f).log2() - d_f - F::from_u64(e0p).unwrap()
}

/// Real-valued parameter recipe for extractor-based schemes, before any
/// power-of-two rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtractorRecipe<F> {
    pub gamma: F,
    pub nu_over_gamma: F,
    /// Strict upper bound on the condenser error: 1 − p − γ − ν/γ.
    pub eps_bound: F,
}

/// γ = ∛ν (or `default_gamma` when ν = 0) and the resulting error bound.
pub fn extractor_recipe<F: Real>(p: F, nu: F, default_gamma: F) -> ExtractorRecipe<F> {
    let gamma = if nu > F::zero() {
        nu.cbrt()
    } else {
        default_gamma
    };
    let nu_over_gamma = nu / gamma;
    ExtractorRecipe {
        gamma,
        nu_over_gamma,
        eps_bound: F::one() - p - gamma - nu_over_gamma,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nu0_values() {
        assert!((nu0(0.0f64).unwrap() - 0.236068).abs() < 1e-6);
        assert!((nu0(0.0f32).unwrap() - 0.236068).abs() < 1e-6);
        assert_eq!(nu0(1.0f64).unwrap(), 0.0);
        let v = nu0(0.75f64).unwrap();
        let expected = (2f64.sqrt() - 1.0).powi(3) / 8.0;
        assert!((v - expected).abs() < 1e-12);
        assert!((v - 0.008883).abs() < 1e-6);
        assert!(nu0(-0.1f64).is_err());
        assert!(nu0(1.5f64).is_err());
        assert!(nu0(f64::NAN).is_err());
    }

    #[test]
    fn recipe_matches_hand_evaluation() {
        let r = extractor_recipe(0.0f64, 0.008, 0.25);
        assert!((r.gamma - 0.2).abs() < 1e-12);
        assert!((r.nu_over_gamma - 0.04).abs() < 1e-12);
        assert!((r.eps_bound - 0.76).abs() < 1e-12);
        let r = extractor_recipe(0.0f32, 0.0, 0.25);
        assert_eq!(r.gamma, 0.25);
        assert_eq!(r.eps_bound, 0.75);
    }

    #[test]
    fn closed_form_lower_bound() {
        assert_eq!(counting_closed_form::<f64>(1024, 8, 8), 40.0);
    }

    #[test]
    fn parse_fractions() {
        assert_eq!(parse_frac("3/8").unwrap(), Frac::new(3, 8));
        assert_eq!(parse_frac("0.125").unwrap(), Frac::new(1, 8));
        assert_eq!(parse_frac("2").unwrap(), Frac::from_integer(2));
        assert_eq!(parse_frac(".5").unwrap(), Frac::new(1, 2));
        assert!(parse_frac("1/0").is_err());
        assert!(parse_frac("-1").is_err());
        assert!(parse_frac("abc").is_err());
        assert!(parse_frac(".").is_err());
    }

    #[test]
    fn dyadic_helpers() {
        let b = to_big(&Frac::new(3, 4));
        assert_eq!(largest_dyadic_below(&b), Some((1, Frac::new(1, 2))));
        let b = to_big(&Frac::new(1, 2));
        assert_eq!(largest_dyadic_below(&b), Some((2, Frac::new(1, 4))));
        assert_eq!(largest_dyadic_below(&BigFrac::zero()), None);
        assert_eq!(
            grid_floor_below(&to_big(&Frac::new(1, 2)), 4),
            Frac::new(7, 16)
        );
        assert_eq!(
            grid_floor_below(&to_big(&Frac::new(1, 3)), 4),
            Frac::new(5, 16)
        );
    }
}
