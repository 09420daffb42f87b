//! Exact arithmetic over `Z/p^k` (and `GF(p)` when `k = 1`).
//!
//! Residues are stored as `u64` in `[0, p^k)`. The modulus is capped below
//! `2^31` so that every product of two residues fits in a `u64`.

mod echelon;
mod howell;
mod matrix;
mod smith;

pub use echelon::{rank_kernel, RankKernel, RowEchelon};
pub use howell::{howell_form, howell_reduce, in_span};
pub use matrix::ModMatrix;
pub use smith::SmithDecomposition;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest modulus `p^k` accepted by [`PrimeContext::new`].
pub const MAX_MODULUS: u64 = 1 << 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModArithError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime must be at least 5, got {0}")]
    PrimeTooSmall(u64),
    #[error("precision exponent must be at least 1")]
    ZeroPrecision,
    #[error("modulus {p}^{k} exceeds the supported bound 2^31")]
    ModulusTooLarge { p: u64, k: u32 },
    #[error("{value} is not a unit modulo {modulus}")]
    NotUnit { value: u64, modulus: u64 },
    #[error("operation requires a field (k = 1), got k = {0}")]
    RequiresField(u32),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("system is inconsistent: right-hand side is not in the image")]
    Inconsistent,
    #[error("matrix is not invertible")]
    Singular,
}

/// The coefficient ring `Z/p^k` with `p ≥ 5` prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeContext {
    p: u64,
    k: u32,
    modulus: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeContext {
    pub fn new(p: u64, k: u32) -> Result<Self, ModArithError> {
        if !is_prime(p) {
            return Err(ModArithError::NotPrime(p));
        }
        if p < 5 {
            return Err(ModArithError::PrimeTooSmall(p));
        }
        if k == 0 {
            return Err(ModArithError::ZeroPrecision);
        }
        let mut modulus: u64 = 1;
        for _ in 0..k {
            modulus = modulus
                .checked_mul(p)
                .filter(|&m| m < MAX_MODULUS)
                .ok_or(ModArithError::ModulusTooLarge { p, k })?;
        }
        Ok(Self { p, k, modulus })
    }

    /// `GF(p)`.
    pub fn field(p: u64) -> Result<Self, ModArithError> {
        Self::new(p, 1)
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    /// `p^k`.
    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn is_field(&self) -> bool {
        self.k == 1
    }

    /// The residue field `GF(p)` of this ring.
    pub fn residue_field(&self) -> Self {
        Self {
            p: self.p,
            k: 1,
            modulus: self.p,
        }
    }

    /// Same prime, different precision.
    pub fn with_precision(&self, k: u32) -> Result<Self, ModArithError> {
        Self::new(self.p, k)
    }

    #[inline]
    pub fn reduce(&self, a: u64) -> u64 {
        a % self.modulus
    }

    #[inline]
    pub fn reduce_signed(&self, a: i64) -> u64 {
        a.rem_euclid(self.modulus as i64) as u64
    }

    /// Signed representative in `(-p^k/2, p^k/2]`.
    pub fn signed(&self, a: u64) -> i64 {
        let a = self.reduce(a);
        if a > self.modulus / 2 {
            a as i64 - self.modulus as i64
        } else {
            a as i64
        }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.modulus
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.modulus;
        base = self.reduce(base);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `p^e` reduced mod `p^k` (zero once `e ≥ k`).
    pub fn p_power(&self, e: u32) -> u64 {
        if e >= self.k {
            0
        } else {
            self.p.pow(e)
        }
    }

    /// p-adic valuation of a residue, with `v(0) = k`.
    pub fn valuation(&self, a: u64) -> u32 {
        let mut a = self.reduce(a);
        if a == 0 {
            return self.k;
        }
        let mut v = 0;
        while a % self.p == 0 {
            a /= self.p;
            v += 1;
        }
        v
    }

    #[inline]
    pub fn is_unit(&self, a: u64) -> bool {
        self.reduce(a) % self.p != 0
    }

    /// Multiplicative inverse of a unit.
    pub fn unit_inverse(&self, a: u64) -> Result<u64, ModArithError> {
        let a = self.reduce(a);
        if a % self.p == 0 {
            return Err(ModArithError::NotUnit {
                value: a,
                modulus: self.modulus,
            });
        }
        let (mut old_r, mut r) = (a as i64, self.modulus as i64);
        let (mut old_s, mut s) = (1i64, 0i64);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        debug_assert_eq!(old_r, 1);
        Ok(self.reduce_signed(old_s))
    }

    /// Image of the rational `num/den` when `den` is prime to `p`.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<u64, ModArithError> {
        let d = self.reduce_signed(den);
        let inv = self.unit_inverse(d)?;
        Ok(self.mul(self.reduce_signed(num), inv))
    }

    /// Exact division `a / p^e`, assuming `p^e | a`; the result is a
    /// representative mod `p^k`.
    pub fn divide_p_power(&self, a: u64, e: u32) -> u64 {
        debug_assert!(self.valuation(a) >= e);
        if e == 0 {
            return self.reduce(a);
        }
        self.reduce(a) / self.p.pow(e)
    }

    /// Reduce a residue mod `p^k` to `GF(p)`.
    #[inline]
    pub fn to_residue_field(&self, a: u64) -> u64 {
        a % self.p
    }
}

/// Scalar-vector helpers used across the crate.
pub(crate) mod vec {
    use super::PrimeContext;

    pub fn is_zero(v: &[u64]) -> bool {
        v.iter().all(|&x| x == 0)
    }

    /// `a += c * b`
    pub fn axpy(ctx: &PrimeContext, a: &mut [u64], c: u64, b: &[u64]) {
        if c == 0 {
            return;
        }
        for (x, &y) in a.iter_mut().zip(b) {
            if y != 0 {
                *x = ctx.add(*x, ctx.mul(c, y));
            }
        }
    }

    pub fn unit(n: usize, i: usize) -> Vec<u64> {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_primes() {
        assert_eq!(PrimeContext::new(3, 1), Err(ModArithError::PrimeTooSmall(3)));
        assert_eq!(PrimeContext::new(9, 1), Err(ModArithError::NotPrime(9)));
        assert_eq!(PrimeContext::new(5, 0), Err(ModArithError::ZeroPrecision));
        assert!(matches!(
            PrimeContext::new(5, 40),
            Err(ModArithError::ModulusTooLarge { .. })
        ));
    }

    #[test]
    fn unit_inverse_examples() {
        let f5 = PrimeContext::new(5, 1).unwrap();
        assert_eq!(f5.unit_inverse(1).unwrap(), 1);
        assert_eq!(f5.unit_inverse(2).unwrap(), 3);
        let z25 = PrimeContext::new(5, 2).unwrap();
        assert_eq!(z25.unit_inverse(7).unwrap(), 18);
        assert!(matches!(
            z25.unit_inverse(10),
            Err(ModArithError::NotUnit { .. })
        ));
    }

    #[test]
    fn unit_inverse_exhaustive_small_moduli() {
        for (p, k) in [(5, 1), (5, 2), (5, 3), (7, 1), (7, 2), (7, 3), (11, 2), (13, 2)] {
            let ctx = PrimeContext::new(p, k).unwrap();
            assert!(ctx.modulus() <= 343);
            for a in 0..ctx.modulus() {
                match ctx.unit_inverse(a) {
                    Ok(inv) => assert_eq!(ctx.mul(a, inv), 1, "a={a} mod {}", ctx.modulus()),
                    Err(_) => assert_eq!(a % p, 0),
                }
            }
        }
    }

    #[test]
    fn valuation_and_powers() {
        let ctx = PrimeContext::new(5, 3).unwrap();
        assert_eq!(ctx.valuation(0), 3);
        assert_eq!(ctx.valuation(50), 2);
        assert_eq!(ctx.valuation(7), 0);
        assert_eq!(ctx.p_power(2), 25);
        assert_eq!(ctx.p_power(3), 0);
        assert_eq!(ctx.from_ratio(1, 2).unwrap(), 63);
        assert_eq!(ctx.signed(124), -1);
    }
}
