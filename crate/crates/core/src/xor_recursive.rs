//! Recursive 2-of-2 XOR sharing of a chain of secrets that double in length.
//!
//! A chain `s_1, ..., s_t` with `|s_{i+1}| = 2 |s_i|` is packed into two
//! shares of `|s_t|` bits each, so `2 |s_t| - |s_1|` secret bits live in
//! `2 |s_t|` share bits.
//!
//! Level 1 is plain XOR sharing with random bits `r`: `(r, r ^ s_1)`. Given
//! level shares `(A, B)` and the next secret split into halves `(hi, lo)`,
//! the next level is
//!
//! ```text
//! A' = A || (lo ^ B)
//! B' = (hi ^ A) || B
//! ```
//!
//! so `A' ^ B' = hi || lo` and the previous pair is the first half of `A'`
//! and the second half of `B'`. This general rule is inferred from a single
//! worked three-level chain (`1, 01, 1011` with `r = 0` gives `0010, 1001`);
//! whether other placements of fresh randomness were intended at deeper
//! levels cannot be decided from that one instance.

use std::fmt;
use std::str::FromStr;

use rand::RngCore;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum XorError {
    #[error("chain is empty")]
    EmptyChain,
    #[error("first secret must have at least one bit")]
    EmptySecret,
    #[error(
        "secret {index} has {got} bits, expected {expected} (each secret doubles the previous)"
    )]
    NotDoubling {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("share lengths differ: {0} vs {1}")]
    ShareLengthMismatch(usize, usize),
    #[error("share length {len} is not divisible by 2^{shift}")]
    IndivisibleLength { len: usize, shift: usize },
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error("randomness has {got} bits, expected {expected}")]
    WrongMaskLength { expected: usize, got: usize },
    #[error("invalid bit character {0:?}")]
    BadBit(char),
}

/// A big-endian bit string (leftmost bit first).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        BitString(bits)
    }

    pub fn zeros(len: usize) -> Self {
        BitString(vec![false; len])
    }

    pub fn random<R: RngCore + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut bits = Vec::with_capacity(len);
        while bits.len() < len {
            let word = rng.next_u64();
            let take = (len - bits.len()).min(64);
            bits.extend((0..take).map(|i| (word >> i) & 1 == 1));
        }
        BitString(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// Bitwise XOR; both operands must have the same length.
    pub fn xor(&self, other: &BitString) -> BitString {
        assert_eq!(self.len(), other.len(), "xor of unequal lengths");
        BitString(self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect())
    }

    pub fn concat(&self, other: &BitString) -> BitString {
        let mut bits = self.0.clone();
        bits.extend_from_slice(&other.0);
        BitString(bits)
    }

    /// Splits an even-length string into its first and second halves.
    pub fn halves(&self) -> (BitString, BitString) {
        let mid = self.len() / 2;
        (
            BitString(self.0[..mid].to_vec()),
            BitString(self.0[mid..].to_vec()),
        )
    }
}

impl FromStr for BitString {
    type Err = XorError;

    fn from_str(s: &str) -> Result<Self, XorError> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(XorError::BadBit(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BitString)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Secrets `s_1..s_t` whose lengths double at each step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitSecretChain(Vec<BitString>);

impl BitSecretChain {
    pub fn new(secrets: Vec<BitString>) -> Result<Self, XorError> {
        let first = secrets.first().ok_or(XorError::EmptyChain)?;
        if first.is_empty() {
            return Err(XorError::EmptySecret);
        }
        for (i, pair) in secrets.windows(2).enumerate() {
            let expected = 2 * pair[0].len();
            if pair[1].len() != expected {
                return Err(XorError::NotDoubling {
                    index: i + 2,
                    expected,
                    got: pair[1].len(),
                });
            }
        }
        Ok(BitSecretChain(secrets))
    }

    pub fn secrets(&self) -> &[BitString] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    /// Total number of secret bits, `2 |s_t| - |s_1|`.
    pub fn secret_bits(&self) -> usize {
        self.0.iter().map(BitString::len).sum()
    }

    /// Total number of share bits produced, `2 |s_t|`.
    pub fn share_bits(&self) -> usize {
        2 * self.0.last().map_or(0, BitString::len)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitSharePair {
    pub share_a: BitString,
    pub share_b: BitString,
}

/// Deals `chain` with caller-supplied level-1 randomness `r` (`|r| = |s_1|`).
pub fn deal_with_mask(chain: &BitSecretChain, r: &BitString) -> Result<BitSharePair, XorError> {
    let secrets = chain.secrets();
    if r.len() != secrets[0].len() {
        return Err(XorError::WrongMaskLength {
            expected: secrets[0].len(),
            got: r.len(),
        });
    }
    let mut a = r.clone();
    let mut b = r.xor(&secrets[0]);
    for secret in &secrets[1..] {
        let (hi, lo) = secret.halves();
        let next_a = a.concat(&lo.xor(&b));
        let next_b = hi.xor(&a).concat(&b);
        a = next_a;
        b = next_b;
    }
    Ok(BitSharePair {
        share_a: a,
        share_b: b,
    })
}

pub fn deal<R: RngCore + ?Sized>(chain: &BitSecretChain, rng: &mut R) -> BitSharePair {
    let r = BitString::random(chain.secrets()[0].len(), rng);
    deal_with_mask(chain, &r).expect("mask length matches the first secret")
}

/// Unwinds `depth` levels from the final pair, returning `s_1..s_depth`.
pub fn reconstruct(pair: &BitSharePair, depth: usize) -> Result<BitSecretChain, XorError> {
    if depth == 0 {
        return Err(XorError::ZeroDepth);
    }
    let len = pair.share_a.len();
    if len != pair.share_b.len() {
        return Err(XorError::ShareLengthMismatch(len, pair.share_b.len()));
    }
    let shift = depth - 1;
    if shift >= usize::BITS as usize || !len.is_multiple_of(1usize << shift) || len == 0 {
        return Err(XorError::IndivisibleLength { len, shift });
    }

    let mut a = pair.share_a.clone();
    let mut b = pair.share_b.clone();
    let mut secrets = Vec::with_capacity(depth);
    for level in (1..=depth).rev() {
        secrets.push(a.xor(&b));
        if level > 1 {
            a = a.halves().0;
            b = b.halves().1;
        }
    }
    secrets.reverse();
    BitSecretChain::new(secrets)
}
