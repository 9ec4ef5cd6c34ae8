//! Finite fields GF(q) for small prime powers q, Reed–Solomon codes over
//! them, and the Kautz–Singleton matrix.
//!
//! Elements are the integers `0..q`. For prime `q` this is ordinary modular
//! arithmetic. For `q = p^m` with `m > 1` an element is read as the base-`p`
//! digits of a polynomial of degree `< m`, reduced modulo the
//! lexicographically first monic irreducible polynomial of degree `m`.

use super::{codeword_graph_matrix, InducedCode, DEFAULT_TABLE_BUDGET};
use crate::error::{Error, Result};
use crate::gtcore::BitMatrix;

/// Largest field order supported (extension tables are `q²` entries).
pub const MAX_FIELD_ORDER: u32 = 1 << 12;

#[derive(Clone, Debug)]
pub struct FiniteField {
    q: u32,
    p: u32,
    kind: Kind,
}

#[derive(Clone, Debug)]
enum Kind {
    Prime,
    Extension { add: Vec<u32>, mul: Vec<u32> },
}

fn smallest_factor(n: u32) -> u32 {
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    n
}

/// `(p, m)` with `q = p^m`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = smallest_factor(q);
    let (mut r, mut m) = (q, 0);
    while r % p == 0 {
        r /= p;
        m += 1;
    }
    (r == 1).then_some((p, m))
}

// polynomials over GF(p), coefficient i = coefficient of X^i
fn poly_rem(mut a: Vec<u32>, modulus: &[u32], p: u32) -> Vec<u32> {
    let deg = modulus.len() - 1;
    let lead_inv = mod_inv(modulus[deg], p);
    while a.len() > deg {
        let top = *a.last().unwrap();
        if top != 0 {
            let factor = top * lead_inv % p;
            let shift = a.len() - 1 - deg;
            for (k, &c) in modulus.iter().enumerate() {
                a[shift + k] = (a[shift + k] + p - factor * c % p) % p;
            }
        }
        a.pop();
    }
    a
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // p is prime and small
    (1..p)
        .find(|&b| a * b % p == 1)
        .expect("nonzero element is invertible")
}

fn digits(mut v: u32, p: u32, m: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        // every monic polynomial of degree d
        for low in 0..p.pow(d as u32) {
            let mut div = digits(low, p, d as u32);
            div.push(1);
            if poly_rem(poly.to_vec(), &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    pub fn new(q: u32) -> Result<Self> {
        let (p, m) = prime_power(q)
            .ok_or_else(|| Error::InvalidParameter(format!("{q} is not a prime power")))?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::InvalidParameter(format!(
                "field order {q} exceeds the supported maximum {MAX_FIELD_ORDER}"
            )));
        }
        if m == 1 {
            return Ok(FiniteField {
                q,
                p,
                kind: Kind::Prime,
            });
        }
        let modulus = (0..p.pow(m))
            .map(|low| {
                let mut poly = digits(low, p, m);
                poly.push(1);
                poly
            })
            .find(|poly| is_irreducible(poly, p))
            .expect("an irreducible polynomial exists in every degree");
        let qs = q as usize;
        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..q {
            let da = digits(a, p, m);
            for b in 0..q {
                let db = digits(b, p, m);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * qs + b as usize] = from_digits(&sum, p);
                let mut prod = vec![0u32; 2 * m as usize - 1];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = poly_rem(prod, &modulus, p);
                r.resize(m as usize, 0);
                mul[a as usize * qs + b as usize] = from_digits(&r, p);
            }
        }
        Ok(FiniteField {
            q,
            p,
            kind: Kind::Extension { add, mul },
        })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.kind {
            Kind::Prime => (a + b) % self.q,
            Kind::Extension { add, .. } => add[(a * self.q + b) as usize],
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.kind {
            Kind::Prime => ((a as u64 * b as u64) % self.q as u64) as u32,
            Kind::Extension { mul, .. } => mul[(a * self.q + b) as usize],
        }
    }

    /// Horner evaluation; `coeffs[k]` multiplies `X^k`.
    pub fn eval_poly(&self, coeffs: &[u32], at: u32) -> u32 {
        coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| self.add(self.mul(acc, at), c))
    }
}

/// Reed–Solomon code of all polynomials of degree `< w` over GF(q),
/// evaluated at every field element. Codeword index `Σ c_k q^k` is the
/// polynomial with coefficients `c_0, …, c_{w−1}`.
pub fn reed_solomon_code(q: u32, w: u32) -> Result<InducedCode> {
    if w == 0 || w > q {
        return Err(Error::InvalidParameter(format!(
            "degree bound w = {w} must lie in [1, q = {q}]"
        )));
    }
    let field = FiniteField::new(q)?;
    let count = (q as u128).checked_pow(w).unwrap_or(u128::MAX);
    let entries = count.saturating_mul(q as u128);
    if entries > DEFAULT_TABLE_BUDGET {
        return Err(Error::BudgetExceeded {
            entries,
            budget: DEFAULT_TABLE_BUDGET,
        });
    }
    let mut symbols = Vec::with_capacity(entries as usize);
    for index in 0..count as u32 {
        let coeffs = digits(index, q, w);
        for alpha in 0..q {
            symbols.push(field.eval_poly(&coeffs, alpha));
        }
    }
    InducedCode::new(q as usize, q as usize, symbols)
}

/// Kautz–Singleton design: the `q² × q^w` codeword-graph matrix of the
/// degree-`< w` Reed–Solomon code over GF(q). Row `i·q + s` holds the
/// polynomials taking value `s` at the `i`-th field element.
pub fn kautz_singleton_matrix(q: u32, w: u32) -> Result<BitMatrix> {
    Ok(codeword_graph_matrix(&reed_solomon_code(q, w)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    fn check_field_axioms(q: u32) {
        let f = FiniteField::new(q).unwrap();
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            if a != 0 {
                assert_eq!(
                    (0..q).filter(|&b| f.mul(a, b) == 1).count(),
                    1,
                    "inverse of {a} in GF({q})"
                );
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..q {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn field_axioms_hold() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            check_field_axioms(q);
        }
        assert!(FiniteField::new(6).is_err());
    }

    #[test]
    fn ks_constants_only() {
        let m = kautz_singleton_matrix(2, 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (4, 2));
        assert_eq!(m.column(0), &[0, 2]);
        assert_eq!(m.column(1), &[1, 3]);
    }

    #[test]
    fn ks_lines_over_gf5() {
        let m = kautz_singleton_matrix(5, 2).unwrap();
        assert_eq!((m.rows(), m.cols()), (25, 25));
        assert_eq!(m.uniform_column_weight(), Some(5));
        // column for 2 + 3X: value at alpha = i is (2 + 3i) mod 5
        let col = 2 + 3 * 5;
        let expected: Vec<usize> = (0..5).map(|i| i * 5 + (2 + 3 * i) % 5).collect();
        assert_eq!(m.column(col), expected.as_slice());
    }

    #[test]
    fn invalid_parameters() {
        assert!(kautz_singleton_matrix(6, 2).is_err());
        assert!(kautz_singleton_matrix(5, 0).is_err());
        assert!(kautz_singleton_matrix(5, 6).is_err());
    }
}
