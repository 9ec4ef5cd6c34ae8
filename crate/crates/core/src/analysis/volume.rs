use num_bigint::BigUint;

use crate::combinatorics::binomial_big;
use crate::error::{Error, Result};

/// `V(a, b) = Σ_{i ≤ b} C(a, i)`, the size of a Hamming ball of radius `b`
/// in `{0,1}^a`.
pub fn hamming_volume(a: u64, b: u64) -> Result<BigUint> {
    if b > a {
        return Err(Error::InvalidParameter(format!(
            "radius {b} exceeds dimension {a}"
        )));
    }
    Ok(volume_clamped(a, b))
}

/// `V(a, min(b, a))`.
pub(crate) fn volume_clamped(a: u64, b: u64) -> BigUint {
    (0..=b.min(a)).map(|i| binomial_big(a, i)).sum()
}

/// Number of vectors of length `a` that are `(e0, e1)`-close to a fixed
/// vector of weight `b`: choose at most `e0` of the `a − b` zeros to set and
/// at most `e1` of the `b` ones to clear.
pub fn close_ball_volume(a: u64, b: u64, e0: u64, e1: u64) -> Result<BigUint> {
    if b > a {
        return Err(Error::InvalidParameter(format!(
            "weight {b} exceeds dimension {a}"
        )));
    }
    let zeros = a - b;
    let mut total = BigUint::ZERO;
    for i in 0..=e0.min(zeros) {
        let set = binomial_big(zeros, i);
        for j in 0..=e1.min(b) {
            total += &set * binomial_big(b, j);
        }
    }
    Ok(total)
}

/// The exact close-ball volume against both ways of pairing the radii with
/// the support and its complement in a product bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductBoundCheck {
    pub exact: BigUint,
    /// `V(b, e0) · V(a − b, e1)`.
    pub support_e0: BigUint,
    /// `V(b, e1) · V(a − b, e0)`.
    pub support_e1: BigUint,
    pub support_e0_holds: bool,
    pub support_e1_holds: bool,
}

pub fn close_ball_product_bounds(a: u64, b: u64, e0: u64, e1: u64) -> Result<ProductBoundCheck> {
    let exact = close_ball_volume(a, b, e0, e1)?;
    let support_e0 = volume_clamped(b, e0) * volume_clamped(a - b, e1);
    let support_e1 = volume_clamped(b, e1) * volume_clamped(a - b, e0);
    Ok(ProductBoundCheck {
        support_e0_holds: exact <= support_e0,
        support_e1_holds: exact <= support_e1,
        exact,
        support_e0,
        support_e1,
    })
}

/// `log2` of a big integer, accurate to double precision.
pub fn log2_big(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 64 {
        let x: u64 = v.try_into().expect("fits in u64");
        return (x as f64).log2();
    }
    let shift = bits - 64;
    let top: u64 = (v >> shift).try_into().expect("fits in u64");
    (top as f64).log2() + shift as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gtcore::{is_close, BitVec, NoiseBudget};
    use crate::scalar::hamming_volume_log2_bound;

    #[test]
    fn small_volumes() {
        assert_eq!(hamming_volume(7, 0).unwrap(), BigUint::from(1u32));
        assert_eq!(hamming_volume(4, 2).unwrap(), BigUint::from(11u32));
        assert_eq!(hamming_volume(5, 5).unwrap(), BigUint::from(32u32));
        assert!(hamming_volume(3, 4).is_err());
    }

    #[test]
    fn pascal_recurrence() {
        for a in 2..30u64 {
            for b in 1..a {
                assert_eq!(
                    hamming_volume(a, b).unwrap(),
                    hamming_volume(a - 1, b).unwrap() + hamming_volume(a - 1, b - 1).unwrap()
                );
            }
        }
    }

    #[test]
    fn entropy_bound_spot_checks() {
        let mut rng = crate::rng::rng_from(17);
        use rand::Rng;
        for _ in 0..20 {
            let a = rng.random_range(1..400u64);
            let b = rng.random_range(0..=a / 2);
            let lhs = log2_big(&hamming_volume(a, b).unwrap());
            let rhs: f64 = hamming_volume_log2_bound(a, b);
            assert!(lhs <= rhs + 1e-9, "V({a},{b}): {lhs} > {rhs}");
        }
    }

    fn brute_close_count(a: usize, support: &[usize], e0: usize, e1: usize) -> u64 {
        let base = BitVec::from_indices(a, support).unwrap();
        (0..1u64 << a)
            .filter(|&m| {
                let v = BitVec::from_bools(&(0..a).map(|i| m >> i & 1 == 1).collect::<Vec<_>>());
                is_close(&base, &v, NoiseBudget::new(e0, e1)).unwrap()
            })
            .count() as u64
    }

    #[test]
    fn close_ball_matches_enumeration() {
        assert_eq!(close_ball_volume(4, 2, 0, 0).unwrap(), BigUint::from(1u32));
        assert_eq!(brute_close_count(4, &[0, 1], 1, 1), 9);
        assert_eq!(close_ball_volume(4, 2, 1, 1).unwrap(), BigUint::from(9u32));
        for a in 1..=7usize {
            for b in 0..=a {
                let support: Vec<usize> = (0..b).collect();
                for e0 in 0..=3 {
                    for e1 in 0..=3 {
                        assert_eq!(
                            close_ball_volume(a as u64, b as u64, e0 as u64, e1 as u64).unwrap(),
                            BigUint::from(brute_close_count(a, &support, e0, e1)),
                            "V'({a},{b},{e0},{e1})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn product_pairings() {
        let c = close_ball_product_bounds(10, 2, 3, 1).unwrap();
        // the exact count factorises as V(a − b, e0)·V(b, e1)
        assert!(c.support_e1_holds);
        assert_eq!(c.exact, c.support_e1);
        // the other pairing undercounts when e0 > b
        assert!(!c.support_e0_holds);
        assert!(close_ball_product_bounds(3, 4, 0, 0).is_err());
    }

    #[test]
    fn big_log2() {
        assert_eq!(log2_big(&BigUint::from(1024u32)), 10.0);
        let v = BigUint::from(1u32) << 200u32;
        assert!((log2_big(&v) - 200.0).abs() < 1e-12);
    }
}
