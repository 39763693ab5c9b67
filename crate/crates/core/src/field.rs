//! Arithmetic in the prime field `Z_p`.
//!
//! Moduli are restricted to primes below `2^61` so that every product of two
//! residues fits in a `u128` without overflow. Elements are always kept in
//! canonical form `0 <= value < p`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::RngCore;
use thiserror::Error;

/// Largest admissible modulus bound (exclusive).
pub const MODULUS_BOUND: u64 = 1 << 61;

/// The Mersenne prime `2^61 - 1`, the default modulus for byte-stream work.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is out of range (must be 2 <= p < 2^61)")]
    ModulusOutOfRange(u64),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("no inverse: zero is not invertible")]
    NoInverse,
    #[error("value {value} is not a residue modulo {modulus}")]
    NotCanonical { value: u64, modulus: u64 },
}

/// A prime modulus `p` with `2 <= p < 2^61`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if !(2..MODULUS_BOUND).contains(&p) {
            return Err(FieldError::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeModulus(p))
    }

    /// `2^61 - 1`.
    pub fn mersenne61() -> Self {
        PrimeModulus(MERSENNE_61)
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Number of significant bits in `p`.
    pub fn bit_length(self) -> u32 {
        u64::BITS - self.0.leading_zeros()
    }

    /// The residue of an arbitrary integer.
    pub fn reduce(self, value: u64) -> FieldElement {
        FieldElement {
            value: value % self.0,
            modulus: self,
        }
    }

    /// An element from a value that must already be canonical.
    pub fn element(self, value: u64) -> Result<FieldElement, FieldError> {
        if value >= self.0 {
            return Err(FieldError::NotCanonical {
                value,
                modulus: self.0,
            });
        }
        Ok(FieldElement {
            value,
            modulus: self,
        })
    }

    pub fn zero(self) -> FieldElement {
        FieldElement {
            value: 0,
            modulus: self,
        }
    }

    pub fn one(self) -> FieldElement {
        FieldElement {
            value: 1,
            modulus: self,
        }
    }

    /// Iterates over every residue `0..p`. Only sensible for toy moduli.
    pub fn elements(self) -> impl Iterator<Item = FieldElement> {
        (0..self.0).map(move |value| FieldElement {
            value,
            modulus: self,
        })
    }

    #[inline]
    fn add_raw(self, a: u64, b: u64) -> u64 {
        // a, b < 2^61 so the sum cannot overflow.
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    fn sub_raw(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    fn mul_raw(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    fn pow_raw(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            exp >>= 1;
        }
        acc
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A canonical residue modulo a [`PrimeModulus`].
///
/// The arithmetic operators panic when the operands carry different moduli;
/// the `try_*` methods report the mismatch as an error instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    modulus: PrimeModulus,
}

impl FieldElement {
    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> PrimeModulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_modulus(self, other: FieldElement) -> Result<PrimeModulus, FieldError> {
        if self.modulus != other.modulus {
            return Err(FieldError::ModulusMismatch(
                self.modulus.get(),
                other.modulus.get(),
            ));
        }
        Ok(self.modulus)
    }

    pub fn try_add(self, other: FieldElement) -> Result<FieldElement, FieldError> {
        let m = self.same_modulus(other)?;
        Ok(FieldElement {
            value: m.add_raw(self.value, other.value),
            modulus: m,
        })
    }

    pub fn try_sub(self, other: FieldElement) -> Result<FieldElement, FieldError> {
        let m = self.same_modulus(other)?;
        Ok(FieldElement {
            value: m.sub_raw(self.value, other.value),
            modulus: m,
        })
    }

    pub fn try_mul(self, other: FieldElement) -> Result<FieldElement, FieldError> {
        let m = self.same_modulus(other)?;
        Ok(FieldElement {
            value: m.mul_raw(self.value, other.value),
            modulus: m,
        })
    }

    /// Multiplicative inverse, by the extended Euclidean algorithm.
    pub fn inv(self) -> Result<FieldElement, FieldError> {
        if self.value == 0 {
            return Err(FieldError::NoInverse);
        }
        let p = self.modulus.get() as i128;
        let (mut old_r, mut r) = (self.value as i128, p);
        let (mut old_s, mut s) = (1i128, 0i128);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        debug_assert_eq!(old_r, 1);
        Ok(FieldElement {
            value: old_s.rem_euclid(p) as u64,
            modulus: self.modulus,
        })
    }

    /// `self^exp` by square-and-multiply. `0^0` is taken to be `1`.
    pub fn pow(self, exp: u64) -> FieldElement {
        FieldElement {
            value: self.modulus.pow_raw(self.value, exp),
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        self.try_add(rhs)
            .expect("field operands must share a modulus")
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self.try_sub(rhs)
            .expect("field operands must share a modulus")
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.try_mul(rhs)
            .expect("field operands must share a modulus")
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.modulus.zero() - self
    }
}

/// Draws a uniform residue by rejection sampling on the smallest bit mask
/// covering `p`. At most half of the draws are rejected.
pub fn random_element<R: RngCore + ?Sized>(modulus: PrimeModulus, rng: &mut R) -> FieldElement {
    let mask = u64::MAX >> (u64::BITS - modulus.bit_length());
    loop {
        let candidate = rng.next_u64() & mask;
        if candidate < modulus.get() {
            return FieldElement {
                value: candidate,
                modulus,
            };
        }
    }
}

/// Deterministic Miller-Rabin; the witness set below is exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &w in &WITNESSES {
        let mut x = pow(w, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
